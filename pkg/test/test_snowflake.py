# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

import math

import numpy as np
import pytest

from sobolev_extender.errors import (
    InvalidLetter,
    InvalidParameter,
    PreconditionViolated,
)
from sobolev_extender.geometry import Point
from sobolev_extender.snowflake import (
    ChoiceOracle,
    Segment,
    SnowflakeLevel,
    SnowflakeSpec,
    SnowflakeState,
    build_snowflake,
    claim_check,
    derive_exponents,
    distinct_vertices,
    eta_identity_check,
    eval_g,
    generator_bump,
    holder_estimate,
    initial_state,
    john_constant,
    length_formula_check,
    neighbour_comparability,
    partition_gap,
    quasisymmetry_probe,
    refine,
    sample_claim_pairs,
    sample_triples,
    self_intersections,
    state_to_dict,
    word_counts,
)

THIRD = 1 / 3


def koch(generation, p=THIRD):
    return build_snowflake(SnowflakeSpec(p, ChoiceOracle.all_choice_1()), generation)


def flat(generation):
    return build_snowflake(SnowflakeSpec(0.25, ChoiceOracle.all_choice_2()), generation)


def random_state(generation, p=0.4, seed=11):
    oracle = ChoiceOracle.seeded(seed)
    return build_snowflake(SnowflakeSpec(p, oracle), generation)


class TestExponents:
    def test_koch_parameter(self):
        alpha, x, eta = derive_exponents(THIRD)
        assert alpha == pytest.approx(math.log(3) / math.log(4))
        assert x**alpha == pytest.approx(0.25)
        assert 0.25**alpha == pytest.approx(THIRD)
        assert eta == pytest.approx(0.25 / (0.5 - x) ** alpha)

    def test_flat_parameter(self):
        assert derive_exponents(0.25) == pytest.approx((1.0, 0.25, 1.0))

    def test_near_half(self):
        alpha, x, _ = derive_exponents(0.49)
        assert 0.5 < alpha < 0.52
        assert 0 < x < 0.25

    @pytest.mark.parametrize("p", [0.2, 0.5, 0.7])
    def test_out_of_range(self, p):
        with pytest.raises(InvalidParameter):
            derive_exponents(p)

    def test_word_counts(self):
        assert word_counts("ABCA") == (2, 1, 1)
        assert word_counts("") == (0, 0, 0)
        with pytest.raises(InvalidLetter):
            word_counts("ABD")


class TestOracles:
    def test_fixed_oracles(self):
        assert ChoiceOracle.all_choice_1()("ABC") == 1
        assert ChoiceOracle.all_choice_2()("") == 2
        alternating = ChoiceOracle.alternating()
        assert [alternating(w) for w in ("", "A", "AB")] == [1, 2, 1]

    def test_seeded_oracle_is_a_pure_function(self):
        first, second = ChoiceOracle.seeded(7), ChoiceOracle.seeded(7)
        words = ["", "A", "AB", "ACCB", "BBBB"]
        assert [first(w) for w in words] == [second(w) for w in words]
        assert {ChoiceOracle.seeded(7, 1.0)(w) for w in words} == {1}
        assert {ChoiceOracle.seeded(7, 0.0)(w) for w in words} == {2}

    def test_from_name(self):
        assert ChoiceOracle.from_name("random", seed=3).name == "random:3:0.5"
        with pytest.raises(InvalidParameter):
            ChoiceOracle.from_name("sometimes")

    def test_order_needs_two_of_each(self):
        with pytest.raises(InvalidParameter):
            SnowflakeSpec(THIRD, ChoiceOracle.all_choice_2(), order="BBBC")


class TestConstruction:
    def test_generator_bump(self):
        segments = generator_bump(THIRD, Segment(Point(0.0, 0.0), Point(1.0, 0.0), ""))
        assert len(segments) == 4
        assert [segment.word for segment in segments] == ["A"] * 4
        for segment in segments:
            assert segment.length == pytest.approx(THIRD)
        top = segments[1].end
        assert (top.x, top.y) == pytest.approx((0.5, -math.sqrt(3) / 6))
        assert segments[-1].end == Point(1.0, 0.0)

    def test_flat_bump_is_straight(self):
        base = Segment(Point(0.0, 0.0), Point(0.0, 2.0), "BC")
        segments = generator_bump(0.25, base)
        assert {segment.word for segment in segments} == {"BCA"}
        assert sum(segment.length for segment in segments) == pytest.approx(base.length)
        for segment in segments:
            assert segment.start.x == pytest.approx(0.0, abs=1e-15)
            assert segment.length == pytest.approx(0.5)

    def test_refine_counts(self):
        state = initial_state(SnowflakeSpec(THIRD, ChoiceOracle.all_choice_1()))
        for generation in range(1, 4):
            state = refine(state)
            assert state.generation == generation
            assert state.deepest.size == 4 * 4**generation
            assert list(state.deepest.parent[:8]) == [0, 0, 0, 0, 1, 1, 1, 1]

    @pytest.mark.parametrize("generation", [1, 3, 5])
    def test_koch_perimeter(self, generation):
        state = koch(generation)
        assert state.perimeter() == pytest.approx(4 * (4 / 3) ** generation, rel=1e-12)
        lengths = state.deepest.lengths
        assert lengths == pytest.approx(np.full(len(lengths), 3.0**-generation))

    def test_word_lengths(self):
        spec = SnowflakeSpec(THIRD, ChoiceOracle.alternating())
        state = build_snowflake(spec, 2)
        index = state.deepest.words.index("AC")
        assert state.segment(2, index).length == pytest.approx(THIRD / 4)
        assert state.interval(2, index).length == pytest.approx(0.25 * (0.5 - spec.x))
        assert state.interval(2, index).counts == (1, 0, 1)

    @pytest.mark.parametrize("p", [0.25, THIRD, 0.45])
    def test_length_formulas(self, p):
        segment_error, interval_error = length_formula_check(random_state(6, p))
        assert segment_error <= 1e-12
        assert interval_error <= 1e-12

    def test_parameters_partition_the_square(self):
        state = random_state(6)
        assert partition_gap(state) <= 1e-12
        assert distinct_vertices(state)

    def test_eta_identity(self):
        check = eta_identity_check(random_state(6, THIRD))
        assert check.max_residual <= 1e-10
        assert check.violations == 0
        assert check.pairs == sum(4 * 4**n for n in range(7))

    def test_state_to_dict(self):
        data = state_to_dict(koch(2))
        assert data["generation"] == 2
        assert len(data["levels"]) == 3
        assert data["levels"][1][0]["word"] == "A"
        assert data["levels"][2][5]["parent"] == 1


class TestParametrisation:
    def test_corners_and_bump_top(self):
        state = koch(2)
        assert eval_g(state, 0.0) == Point(0.0, 0.0)
        assert eval_g(state, 4.0) == Point(0.0, 0.0)
        top = eval_g(state, 0.5)
        assert (top.x, top.y) == pytest.approx((0.5, -math.sqrt(3) / 6))

    def test_flat_case_is_arc_length(self):
        state = flat(3)
        point = eval_g(state, 1.5)
        assert (point.x, point.y) == pytest.approx((1.0, 0.5))
        point = eval_g(state, 2.25)
        assert (point.x, point.y) == pytest.approx((0.75, 1.0))

    def test_flat_holder_constant(self):
        estimate = holder_estimate(flat(4), arcs=50)
        assert estimate.constant == pytest.approx(1.0)
        assert estimate.cover_constant <= 1.0 + 1e-12
        assert estimate.max_cover <= 6

    def test_koch_holder_constant_is_stable(self):
        coarse = holder_estimate(koch(3), arcs=20).constant
        fine = holder_estimate(koch(5), arcs=20).constant
        assert coarse == pytest.approx(fine, rel=1e-6)

    def test_random_holder_constant_is_finite(self):
        estimate = holder_estimate(random_state(5), arcs=50)
        assert 0 < estimate.constant < math.inf
        assert len(estimate.per_level) == 6

    def test_holder_needs_a_refinement(self):
        with pytest.raises(PreconditionViolated):
            holder_estimate(koch(0))

    def test_symmetric_ratios(self):
        qs = quasisymmetry_probe(flat(3), [[0.5, 0.2], [2.5, 0.4]])
        assert qs.distortion == pytest.approx(1.0)
        qs = quasisymmetry_probe(koch(4), [[0.5, 0.2], [1.5, 0.1]])
        assert qs.max_ratio == pytest.approx(1.0)
        assert qs.min_ratio == pytest.approx(1.0)

    def test_random_ratios_are_bounded(self):
        rng = np.random.default_rng(4)
        qs = quasisymmetry_probe(random_state(5), sample_triples(rng, 500))
        assert qs.samples == 500
        assert 1.0 <= qs.distortion < math.inf


class TestClaim:
    def test_siblings(self):
        state = koch(2)
        result = claim_check(state, state.interval(1, 0), state.interval(1, 1), 2.0)
        assert result.n == 0
        assert result.ratio == pytest.approx(1.0)
        assert result.within and result.n_within

    def test_overlap(self):
        state = koch(2)
        with pytest.raises(PreconditionViolated):
            claim_check(state, state.interval(1, 0), state.interval(1, 0), 2.0)

    def test_incomparable_lengths(self):
        state = koch(3)
        with pytest.raises(PreconditionViolated):
            claim_check(state, state.interval(1, 1), state.interval(3, 0), 2.0)

    def test_too_far_apart(self):
        state = koch(2)
        with pytest.raises(PreconditionViolated):
            claim_check(state, state.interval(2, 0), state.interval(2, 8), 2.0)

    def test_sampled_pairs(self):
        state = random_state(5)
        comparability = neighbour_comparability(state)
        assert comparability >= 1.0
        pairs = sample_claim_pairs(state, np.random.default_rng(0), 200, 4.0)
        assert pairs
        for first, second in pairs:
            result = claim_check(state, first, second, 4.0, comparability)
            assert result.within
            assert result.n_bound > 2


class TestSimplicity:
    def test_koch_is_simple(self):
        assert self_intersections(koch(3)) == []

    def test_flat_is_simple(self):
        assert self_intersections(flat(2)) == []

    def test_bow_tie(self):
        starts = np.array([[0.0, 0.0], [1.0, 1.0], [1.0, 0.0], [0.0, 1.0]])
        deltas = np.roll(starts, -1, axis=0) - starts
        level = SnowflakeLevel(
            starts=starts,
            deltas=deltas,
            param_start=np.arange(4.0),
            param_len=np.ones(4),
            words=[""] * 4,
            counts=np.zeros((4, 3), dtype=int),
            parent=np.full(4, -1),
        )
        spec = SnowflakeSpec(THIRD, ChoiceOracle.all_choice_1())
        state = SnowflakeState(spec, [level])
        assert self_intersections(state) == [(0, 2)]

    def test_john_constant_of_the_square(self):
        estimate = john_constant(koch(0), samples=100)
        assert estimate.samples > 0
        assert estimate.failures == 0
        assert 0 < estimate.constant < math.inf

    def test_john_constant_of_a_snowflake(self):
        estimate = john_constant(koch(3), samples=100, steps=16)
        assert estimate.samples > 0
        assert math.isfinite(estimate.constant)
