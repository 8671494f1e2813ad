# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

import numpy as np
import pytest

from sobolev_extender.boundary import CantorMap, PiecewiseLinearMap, PowerMap
from sobolev_extender.config import RunConfig
from sobolev_extender.errors import InvalidParameter
from sobolev_extender.verify import (
    FAMILIES,
    cantor_energy_suite,
    claim_suite,
    energy_calibration_suite,
    eta_identity_suite,
    homeomorphism_suite,
    random_boundary_map,
    run_suites,
    series_regime_suite,
    snowflake_exactness_suite,
    stability_suite,
    tiling_suite,
)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


class TestRandomMaps:
    @pytest.mark.parametrize(
        "family, kind",
        [("pwl", PiecewiseLinearMap), ("cantor", CantorMap), ("power", PowerMap)],
    )
    def test_families(self, rng, family, kind):
        for _ in range(10):
            phi = random_boundary_map(rng, family)
            assert isinstance(phi, kind)
            assert phi.eval(-1.0) == -1.0
            assert phi.eval(1.0) == 1.0
            values = phi.eval_many(np.linspace(-1.0, 1.0, 65))
            assert np.all(np.diff(values) > 0)

    def test_unknown_family(self, rng):
        with pytest.raises(InvalidParameter):
            random_boundary_map(rng, "spline")

    def test_same_seed_same_maps(self):
        first = random_boundary_map(np.random.default_rng(3), "pwl").to_spec()
        second = random_boundary_map(np.random.default_rng(3), "pwl").to_spec()
        assert first == second


class TestSuites:
    def test_tiling(self, rng):
        result = tiling_suite(rng, 6)
        assert result["passed"]
        assert len(result["maps"]) == 3

    def test_homeomorphism(self, rng):
        result = homeomorphism_suite(rng, 4, maps=6, pairs=100)
        assert result["passed"]
        assert all(r["overlaps"] == 0 for r in result["maps"])

    def test_energy_calibration(self):
        result = energy_calibration_suite(3)
        assert result["passed"]
        totals = [case["total"] for case in result["cases"]]
        assert totals[:2] == pytest.approx([8 / 3, 1.0])
        assert len(totals) == 4

    def test_series_regimes(self, rng):
        result = series_regime_suite(rng, 8, maps=4)
        assert result["passed"]
        assert {case["regime"] for case in result["cases"]} == {
            "total_length",
            "holder",
        }

    def test_snowflake_exactness(self):
        result = snowflake_exactness_suite(4)
        assert result["passed"]
        assert result["segments"] == 1024

    def test_eta_identity(self):
        assert eta_identity_suite(seed=5, generation=5)["passed"]

    def test_stability(self, rng):
        result = stability_suite(rng, 4, 6, samples=200)
        assert result["flat"]["passed"]
        assert result["flat"]["holder_constant"] == 1.0
        assert {case["oracle"] for case in result["cases"]} == {
            "choice1",
            "alternating",
        }
        for case in result["cases"]:
            assert case["generations"] == [4, 5, 6]
            assert case["holder_spread"] <= 0.1
            assert case["qs_spread"] <= 0.5
            assert len(case["holder_per_level"][-1]) == 7
        assert result["passed"]

    def test_stability_needs_a_generation_range(self, rng):
        with pytest.raises(InvalidParameter):
            stability_suite(rng, 5, 4, samples=10)
        with pytest.raises(InvalidParameter):
            stability_suite(rng, 0, 2, samples=10)

    def test_cantor_energy(self):
        result = cantor_energy_suite(
            depths=(3, 5, 4), thetas=(0.25,), params=((1.5, 0.3), (1.9, 0.52))
        )
        assert result["passed"]
        assert len(result["cases"]) == 2
        for case in result["cases"]:
            assert case["depths"] == [3, 4, 5]
            assert len(case["increments"]) == 2
            assert all(value > 0 for value in case["increments"])
            for increment, bound in zip(case["increments"], case["allowed_increments"]):
                assert increment <= bound * (1 + 1e-9)
            assert len(case["dominations"]) == 3
            assert case["domination_spread"] >= 0
            assert case["cauchy"] in (True, False)

    def test_claim(self, rng):
        result = claim_suite(rng, seed=2, generation=4, pairs=100)
        assert result["passed"]
        assert result["pairs"] > 0
        assert result["max_ratio"] >= result["min_ratio"]
        assert result["n_within"]
        assert result["max_n"] <= result["n_bound"]

    def test_run_suites(self):
        config = RunConfig.from_mapping(
            {
                "command": "verify",
                "depth": 3,
                "generation": 3,
                "samples": 100,
                "pairs": 50,
                "seed": 1,
            }
        )
        results = run_suites(config)
        assert set(results) == {
            "tiling",
            "homeomorphism",
            "energy_calibration",
            "series_regimes",
            "snowflake_exactness",
            "eta_identity",
            "cantor_energy",
            "stability",
            "claim",
        }
        assert all(result["passed"] for result in results.values())
        assert FAMILIES == config.families
