# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

"""
Weighted energy of the dyadic extension,

    E = integral over T of |DH|^p / Im(H)^(p beta),

its per cell majorant, the dyadic series bound in both summation regimes and
the chain rule bound for a composition with a Holder profile map.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from sobolev_extender.errors import InvalidParameter, OutOfDomain, ParamMismatch
from sobolev_extender.geometry import (
    operator_norm,
    quadrature_triangle_integral,
    triangle_power_integral,
)
from sobolev_extender.log import LOGGER

# Fraction of cells cross checked by adaptive quadrature
QUADRATURE_FRACTION = 0.01
QUADRATURE_EPSREL = 1e-8


@dataclass(frozen=True)
class EnergyParams:
    p: float
    beta: float

    def __post_init__(self):
        if not 1.0 <= self.p < 2.0:
            raise InvalidParameter(f"Sobolev exponent p = {self.p} must lie in [1, 2)")
        if not self.p * self.beta < 1.0:
            raise InvalidParameter(f"p * beta = {self.p * self.beta} must be below 1")

    @property
    def s(self):
        """Exponent of the weight, p * beta."""
        return self.p * self.beta

    @property
    def q(self):
        """Exponent of the image lengths in the series, p (1 - beta)."""
        return self.p * (1.0 - self.beta)

    @property
    def regime(self):
        return "total_length" if self.q >= 1.0 else "holder"


def identity_energy(params):
    """Energy of the identity of T: integral of y^(-s) 2 (1 - y) dy."""
    s = params.s
    return 2.0 * (1.0 / (1.0 - s) - 1.0 / (2.0 - s))


def piece_energy(piece, params):
    return operator_norm(piece.map) ** params.p * triangle_power_integral(
        piece.source.area, piece.heights, params.s
    )


def piece_energy_quadrature(piece, params, epsrel=QUADRATURE_EPSREL):
    return operator_norm(piece.map) ** params.p * quadrature_triangle_integral(
        piece.source.area, piece.heights, params.s, epsrel
    )


def cell_energy(cell, params):
    """Exact energy of a pentagon cell (one or three affine pieces)."""
    return sum(piece_energy(piece, params) for piece in cell.pieces)


def cell_energy_bound(cell, params):
    """L^(2 - p) (|I'_k|^q + |I'_(k+1)|^q), a single term for last cells."""
    q = params.q
    return cell.length ** (2.0 - params.p) * sum(
        length**q for length in cell.image_lengths
    )


@dataclass
class SeriesBound:
    """
    Partial sums of sum_j 2^(-j(2 - p)) sum_k |I'_(k,j)|^q and the closed
    majorant of each term in the applicable regime.
    """

    params: EnergyParams
    terms: list
    partial_sums: list
    majorants: list
    tail: float
    violations: int

    @property
    def regime(self):
        return self.params.regime

    def to_rows(self):
        return [
            [j, term, partial, majorant]
            for j, (term, partial, majorant) in enumerate(
                zip(self.terms, self.partial_sums, self.majorants)
            )
        ]


def _majorant(params, j):
    if params.regime == "total_length":
        return 2.0 ** (-j * (2.0 - params.p)) * 2.0**params.q
    return 2.0**params.q * 2.0 ** (-j * (1.0 - params.s))


def _tail(params, depth):
    # Geometric tail of the majorants beyond depth
    if params.regime == "total_length":
        ratio = 2.0 ** (-(2.0 - params.p))
    else:
        ratio = 2.0 ** (-(1.0 - params.s))
    return 2.0**params.q * ratio ** (depth + 1) / (1.0 - ratio)


def series_from_values(values, params, depth):
    """Series bound from phi sampled at the points -1 + 2^(-depth) i of [-1, 1]."""
    values = np.asarray(values, dtype=float)
    finest = len(values) - 1
    terms = []
    majorants = []
    violations = 0
    for j in range(depth + 1):
        step = finest // 2**j
        lengths = np.diff(values[::step])
        term = 2.0 ** (-j * (2.0 - params.p)) * float(np.sum(lengths**params.q))
        majorant = _majorant(params, j)
        if term > majorant * (1.0 + 1e-12):
            violations += 1
        terms.append(term)
        majorants.append(majorant)
    partial_sums = np.cumsum(terms).tolist()
    return SeriesBound(
        params=params,
        terms=terms,
        partial_sums=partial_sums,
        majorants=majorants,
        tail=_tail(params, depth),
        violations=violations,
    )


def series_bound(phi, params, depth):
    knots = [-1.0 + 2.0 ** (1 - depth) * i for i in range(2**depth + 1)]
    return series_from_values(phi.eval_many(knots), params, depth)


@dataclass
class EnergyReport:
    params: EnergyParams
    depth: int
    total: float
    cells_total: float
    closure: float
    per_generation: list
    quadrature_check: float
    quadrature_cells: int
    bound_ratio: tuple
    series: SeriesBound
    cell_counts: list = field(default_factory=list)

    @property
    def regime(self):
        return self.series.regime

    @property
    def series_bound_partial(self):
        return self.series.partial_sums

    @property
    def domination(self):
        """Measured constant C* with total = C* (partial sum + tail)."""
        return self.total / (self.series.partial_sums[-1] + self.series.tail)

    def to_rows(self):
        return [
            [j, count, exact, term]
            for (j, exact), count, term in zip(
                self.per_generation, self.cell_counts, self.series.terms
            )
        ]

    def to_dict(self):
        return {
            "params": {"p": self.params.p, "beta": self.params.beta},
            "depth": self.depth,
            "total": self.total,
            "cells_total": self.cells_total,
            "closure": self.closure,
            "per_generation": [
                {"j": j, "cells": count, "exact_sum": exact, "bound_term": term}
                for j, count, exact, term in self.to_rows()
            ],
            "quadrature_check": self.quadrature_check,
            "quadrature_cells": self.quadrature_cells,
            "bound_ratio": {"min": self.bound_ratio[0], "max": self.bound_ratio[1]},
            "regime": self.regime,
            "series_bound_partial": self.series.partial_sums,
            "series_majorants": self.series.majorants,
            "series_tail": self.series.tail,
            "series_violations": self.series.violations,
            "domination": self.domination,
        }


def _quadrature_check(cells, params, rng, fraction):
    """Largest relative gap between closed form and quadrature on sampled cells."""
    count = max(1, int(round(fraction * len(cells))))
    chosen = sorted(rng.choice(len(cells), size=min(count, len(cells)), replace=False))
    worst = 0.0
    for index in chosen:
        cell = cells[int(index)]
        exact = cell_energy(cell, params)
        oracle = sum(piece_energy_quadrature(piece, params) for piece in cell.pieces)
        worst = max(worst, abs(exact - oracle) / abs(oracle))
    return worst, len(chosen)


def mesh_energy(mesh, params, seed=0, fraction=QUADRATURE_FRACTION):
    """
    Energy of the truncated extension: every cell of generations 0..depth plus
    the affine closure of the strip below them.
    """
    per_generation = []
    cell_counts = []
    generation_sums = []
    ratios = []
    for j, generation in enumerate(mesh.generations):
        energies = np.array([cell_energy(cell, params) for cell in generation])
        bounds = np.array([cell_energy_bound(cell, params) for cell in generation])
        # numpy sums pairwise in ascending k
        exact = float(np.sum(energies))
        per_generation.append((j, exact))
        cell_counts.append(len(generation))
        generation_sums.append(exact)
        ratios.append(energies / bounds)
        LOGGER.debug(f"Generation {j}: {len(generation)} cells, energy {exact}")
    cells_total = float(np.sum(generation_sums))
    closure = float(np.sum([piece_energy(piece, params) for piece in mesh.closure]))
    ratios = np.concatenate(ratios)
    rng = np.random.default_rng(seed)
    quadrature_check, quadrature_cells = _quadrature_check(
        mesh.cells, params, rng, fraction
    )
    series = series_from_values(mesh.values[::2], params, mesh.depth)
    report = EnergyReport(
        params=params,
        depth=mesh.depth,
        total=cells_total + closure,
        cells_total=cells_total,
        closure=closure,
        per_generation=per_generation,
        quadrature_check=quadrature_check,
        quadrature_cells=quadrature_cells,
        bound_ratio=(float(np.min(ratios)), float(np.max(ratios))),
        series=series,
        cell_counts=cell_counts,
    )
    LOGGER.info(
        f"Energy p = {params.p}, beta = {params.beta}, depth {mesh.depth}: "
        f"total {report.total}"
    )
    return report


def composition_energy_bound(report, C, alpha, p):
    """
    C^p times the weighted energy: bound for the W^(1, p) energy of F o H when
    |DF(x)| <= C / (1 - |x|)^(1 - alpha) and the weight exponent is 1 - alpha.
    """
    if not alpha > 0.5:
        raise InvalidParameter(f"Holder exponent {alpha} must exceed 1/2")
    if not C > 0:
        raise InvalidParameter(f"Profile constant {C} must be positive")
    if report.params.p != p:
        raise ParamMismatch(f"Report was computed for p = {report.params.p}, not {p}")
    if not math.isclose(report.params.beta, 1.0 - alpha, rel_tol=0.0, abs_tol=1e-12):
        raise ParamMismatch(
            f"Report weight exponent {report.params.beta} "
            f"is not 1 - alpha = {1 - alpha}"
        )
    return C**p * report.total


def gradient_profile(C, alpha, r):
    """Admissible gradient size C / (1 - r)^(1 - alpha) at radius r."""
    if not 0.0 <= r < 1.0:
        raise OutOfDomain(f"Radius {r} must lie in [0, 1)")
    return C / (1.0 - r) ** (1.0 - alpha)
