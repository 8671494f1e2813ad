# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

"""
Property suites run by the verify command. Each suite returns a dict with a
passed flag and the measured quantities behind it.
"""

import math

import numpy as np

from sobolev_extender.boundary import (
    CantorMap,
    IdentityMap,
    PiecewiseLinearMap,
    PowerMap,
)
from sobolev_extender.energy import (
    EnergyParams,
    identity_energy,
    mesh_energy,
    series_bound,
)
from sobolev_extender.errors import InvalidParameter
from sobolev_extender.extension import build_extension, check_homeomorphism
from sobolev_extender.log import LOGGER
from sobolev_extender.snowflake import (
    ChoiceOracle,
    SnowflakeSpec,
    SnowflakeState,
    build_snowflake,
    claim_check,
    derive_exponents,
    eta_identity_check,
    holder_estimate,
    length_formula_check,
    neighbour_comparability,
    partition_gap,
    quasisymmetry_probe,
    sample_claim_pairs,
    sample_triples,
)

FAMILIES = ("pwl", "cantor", "power")
# (p, beta) pairs covering both summation regimes
REGIME_PARAMS = ((1.5, 0.3), (1.9, 0.52))
STABILITY_PS = (1 / 3, 0.3, 0.45)
STABILITY_ORACLES = ("choice1", "alternating")
HOLDER_SPREAD = 0.1
QS_SPREAD = 0.5
CLAIM_CONSTANT = 4.0
CANTOR_DEPTHS = (8, 10, 12, 14)
CANTOR_THETAS = (0.1, 0.25, 0.4)
CANTOR_PARAMS = ((1.5, 0.3), (1.9, 0.4), (1.9, 0.52))
# Reported, not enforced: increments decay like 2^(-j(2 - p)) or 2^(-j(1 - p beta))
CAUCHY_TOLERANCE = 1e-4
DOMINATION_SPREAD = 0.2


def random_boundary_map(rng, family):
    """A random increasing homeomorphism of [-1, 1] from one of the test families."""
    if family == "pwl":
        count = int(rng.integers(2, 9))
        knots = np.concatenate(
            [[-1.0], np.sort(rng.uniform(-0.95, 0.95, size=count)), [1.0]]
        )
        if np.any(np.diff(knots) <= 0):
            knots = np.linspace(-1.0, 1.0, count + 2)
        increments = rng.uniform(0.05, 1.0, size=count + 1)
        values = np.concatenate([[0.0], np.cumsum(increments)])
        values = -1.0 + 2.0 * values / values[-1]
        values[-1] = 1.0
        return PiecewiseLinearMap(knots.tolist(), values.tolist())
    if family == "cantor":
        return CantorMap(float(rng.uniform(0.1, 0.9)))
    if family == "power":
        return PowerMap(float(rng.uniform(0.3, 3.0)))
    raise InvalidParameter(f"Unknown boundary map family {family}")


def _random_maps(rng, count, families):
    return [random_boundary_map(rng, families[i % len(families)]) for i in range(count)]


def tiling_suite(rng, depth, families=FAMILIES, maps=3):
    results = []
    for phi in _random_maps(rng, maps, families):
        report = check_homeomorphism(build_extension(phi, depth), pairs=0)
        results.append(
            {
                "boundary": phi.to_spec(),
                "source_residual": report.source_residual,
                "image_residual": report.image_residual,
            }
        )
    passed = all(
        r["source_residual"] == 0.0 and abs(r["image_residual"]) <= 1e-9
        for r in results
    )
    return {"passed": passed, "maps": results}


def homeomorphism_suite(rng, depth, families=FAMILIES, maps=20, pairs=1000):
    results = []
    for index, phi in enumerate(_random_maps(rng, maps, families)):
        mesh = build_extension(phi, depth)
        report = check_homeomorphism(mesh, pairs=pairs, seed=index)
        results.append({"boundary": phi.to_spec(), **report.to_dict()})
    return {"passed": all(r["passed"] for r in results), "maps": results}


def energy_calibration_suite(depth):
    mesh = build_extension(IdentityMap(), depth)
    results = []
    cases = ((1.0, 0.5, 1e-3), (1.0, 0.0, 1e-6), (1.5, 0.3, 1e-6), (1.9, 0.4, 1e-6))
    for p, beta, tolerance in cases:
        params = EnergyParams(p, beta)
        total = mesh_energy(mesh, params).total
        expected = identity_energy(params)
        results.append(
            {
                "p": p,
                "beta": beta,
                "total": total,
                "expected": expected,
                "passed": abs(total - expected) <= tolerance,
            }
        )
    return {"passed": all(r["passed"] for r in results), "cases": results}


def series_regime_suite(rng, depth, families=FAMILIES, maps=10):
    results = []
    for phi in _random_maps(rng, maps, families):
        for p, beta in REGIME_PARAMS:
            bound = series_bound(phi, EnergyParams(p, beta), depth)
            results.append(
                {
                    "boundary": phi.to_spec(),
                    "p": p,
                    "beta": beta,
                    "regime": bound.regime,
                    "violations": bound.violations,
                }
            )
    return {"passed": all(r["violations"] == 0 for r in results), "cases": results}


def cantor_energy_suite(
    depths=CANTOR_DEPTHS, thetas=CANTOR_THETAS, params=CANTOR_PARAMS
):
    """
    Truncated energies of Cantor boundary maps as the depth grows. The
    increments between depths must stay under the series majorant of the
    generations they add; the Cauchy tolerance and the stability of the
    domination constant are reported for each case.
    """
    depths = sorted(depths)
    reports = {}
    for theta in thetas:
        phi = CantorMap(theta)
        for depth in depths:
            mesh = build_extension(phi, depth)
            for p, beta in params:
                report = mesh_energy(mesh, EnergyParams(p, beta))
                reports[theta, p, beta, depth] = report
    cases = []
    for theta in thetas:
        for p, beta in params:
            runs = [reports[theta, p, beta, depth] for depth in depths]
            cases.append(_cantor_case(theta, p, beta, depths, runs))
    return {"passed": all(c["passed"] for c in cases), "cases": cases}


def _cantor_case(theta, p, beta, depths, runs):
    deepest = runs[-1]
    totals = [run.cells_total for run in runs]
    increments = [float(b - a) for a, b in zip(totals, totals[1:])]
    # Generation j adds at most max_ratio * 2^(3 - p) * term_j
    scale = deepest.bound_ratio[1] * 2.0 ** (3.0 - p)
    terms = deepest.series.terms
    allowed = [
        scale * math.fsum(terms[low + 1 : high + 1])
        for low, high in zip(depths, depths[1:])
    ]
    dominations = [run.domination for run in runs]
    sums = [exact for _, exact in deepest.per_generation]
    finite = all(math.isfinite(v) for v in totals + dominations + sums)
    spread = max(dominations) / min(dominations) - 1 if finite else math.inf
    last_increment = increments[-1] if increments else None
    return {
        "theta": theta,
        "p": p,
        "beta": beta,
        "depths": list(depths),
        "totals": totals,
        "increments": increments,
        "allowed_increments": allowed,
        "dominations": dominations,
        "domination_spread": spread,
        "generation_sums": sums,
        "cauchy": last_increment is not None and last_increment < CAUCHY_TOLERANCE,
        "domination_stable": spread <= DOMINATION_SPREAD,
        "passed": finite
        and all(value > 0 for value in sums)
        and all(
            0 <= increment <= bound * (1 + 1e-9)
            for increment, bound in zip(increments, allowed)
        ),
    }


def snowflake_exactness_suite(generation):
    spec = SnowflakeSpec(1 / 3, ChoiceOracle.all_choice_1())
    state = build_snowflake(spec, generation)
    alpha, _, _ = derive_exponents(spec.p)
    segment_error, interval_error = length_formula_check(state)
    perimeter = state.perimeter()
    expected = 4 * (4 / 3) ** generation
    result = {
        "generation": generation,
        "segments": state.deepest.size,
        "segment_formula_error": segment_error,
        "interval_formula_error": interval_error,
        "partition_gap": partition_gap(state),
        "perimeter": perimeter,
        "expected_perimeter": expected,
        "alpha_residual": abs(0.25**alpha - spec.p),
    }
    result["passed"] = (
        result["segments"] == 4 ** (generation + 1)
        and segment_error <= 1e-12
        and interval_error <= 1e-12
        and result["partition_gap"] <= 1e-12
        and math.isclose(perimeter, expected, rel_tol=1e-12)
        and result["alpha_residual"] < 1e-14
    )
    return result


def eta_identity_suite(seed, generation, p=1 / 3):
    spec = SnowflakeSpec(p, ChoiceOracle.seeded(seed))
    check = eta_identity_check(build_snowflake(spec, generation))
    return {
        "passed": check.max_residual <= 1e-10 and check.violations == 0,
        "max_residual": check.max_residual,
        "violations": check.violations,
        "pairs": check.pairs,
    }


def _flat_case(rng, samples):
    spec = SnowflakeSpec(0.25, ChoiceOracle.all_choice_2())
    state = build_snowflake(spec, 3)
    holder = holder_estimate(state, rng=rng)
    # Chords inside one side
    sides = rng.integers(0, 4, size=samples)
    centres = sides + rng.uniform(0.25, 0.75, size=samples)
    room = np.minimum(centres - sides, sides + 1 - centres)
    steps = room * (1.0 - rng.uniform(0.0, 1.0, size=samples))
    qs = quasisymmetry_probe(state, np.column_stack([centres, steps]))
    return {
        "holder_constant": holder.constant,
        "max_ratio": qs.max_ratio,
        "min_ratio": qs.min_ratio,
        "passed": holder.constant == 1.0
        and math.isclose(qs.max_ratio, 1.0, rel_tol=1e-12)
        and math.isclose(qs.min_ratio, 1.0, rel_tol=1e-12),
    }


def stability_suite(rng, first=4, last=8, samples=10000):
    """Holder constant and quasisymmetry distortion over generations first..last."""
    if not 1 <= first <= last:
        raise InvalidParameter(f"Generations {first}..{last} are not a valid range")
    triples = sample_triples(rng, samples)
    cases = []
    for name in STABILITY_ORACLES:
        for p in STABILITY_PS:
            spec = SnowflakeSpec(p, ChoiceOracle.from_name(name))
            state = build_snowflake(spec, last)
            constants = []
            per_level = []
            distortions = []
            for number in range(first, last + 1):
                subset = SnowflakeState(spec, state.levels[: number + 1])
                holder = holder_estimate(subset, arcs=0)
                # Level 0 holds the four sides of the initial square
                constants.append(max(holder.per_level[1:]))
                per_level.append(holder.per_level)
                distortions.append(quasisymmetry_probe(subset, triples).distortion)
            finite = all(math.isfinite(d) for d in distortions)
            holder_spread = max(constants) / min(constants) - 1
            qs_spread = max(distortions) / min(distortions) - 1 if finite else math.inf
            cases.append(
                {
                    "p": p,
                    "oracle": name,
                    "generations": list(range(first, last + 1)),
                    "holder_constants": constants,
                    "holder_per_level": per_level,
                    "qs_distortions": distortions,
                    "holder_spread": holder_spread,
                    "qs_spread": qs_spread,
                    "passed": finite
                    and holder_spread <= HOLDER_SPREAD
                    and qs_spread <= QS_SPREAD,
                }
            )
    flat = _flat_case(rng, min(samples, 1000))
    return {
        "passed": flat["passed"] and all(c["passed"] for c in cases),
        "cases": cases,
        "flat": flat,
    }


def claim_suite(rng, seed, generation, pairs=1000, p=1 / 3):
    spec = SnowflakeSpec(p, ChoiceOracle.seeded(seed))
    state = build_snowflake(spec, generation)
    sampled = sample_claim_pairs(state, rng, pairs, CLAIM_CONSTANT)
    comparability = neighbour_comparability(state)
    results = [
        claim_check(state, first, second, CLAIM_CONSTANT, comparability)
        for first, second in sampled
    ]
    n_bound = results[0].n_bound if results else None
    return {
        "passed": bool(results)
        and all(r.within and r.n_within for r in results),
        "pairs": len(results),
        "max_n": max((r.n for r in results), default=0),
        "n_bound": n_bound,
        "n_within": all(r.n_within for r in results),
        "max_ratio": max((r.ratio for r in results), default=None),
        "min_ratio": min((r.ratio for r in results), default=None),
    }


def run_suites(config):
    """All property suites at the scale given by the run configuration."""
    rng = np.random.default_rng(config.seed)
    families = tuple(config.families)
    # At most four depths ending at the configured one, two apart
    cantor_depths = tuple(range(config.depth, -1, -2))[:4][::-1]
    first_generation = min(max(config.generation - 4, 4), config.generation)
    suites = {
        "tiling": lambda: tiling_suite(rng, config.depth, families),
        "homeomorphism": lambda: homeomorphism_suite(
            rng, config.depth, families, pairs=config.pairs
        ),
        "energy_calibration": lambda: energy_calibration_suite(config.depth),
        "series_regimes": lambda: series_regime_suite(rng, config.depth, families),
        "snowflake_exactness": lambda: snowflake_exactness_suite(config.generation),
        "eta_identity": lambda: eta_identity_suite(config.seed, config.generation),
        "cantor_energy": lambda: cantor_energy_suite(cantor_depths),
        "stability": lambda: stability_suite(
            rng, first_generation, config.generation, config.samples
        ),
        "claim": lambda: claim_suite(rng, config.seed, config.generation, config.pairs),
    }
    results = {}
    for name, suite in suites.items():
        LOGGER.info(f"Running suite {name}")
        results[name] = suite()
        if not results[name]["passed"]:
            LOGGER.warning(f"Suite {name} failed")
    return results
