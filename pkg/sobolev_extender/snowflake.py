# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

"""
Snowflake type curves grown from the unit square and their Holder continuous
quasisymmetric parametrisation g by the square itself.

Every segment of S_n is either replaced by the four segment bump of relative
lengths p (choice 1) or cut into four straight quarters (choice 2). The
matching parameter interval on S_0 is cut into quarters (letter A) or into
pieces of relative length x, 1/2 - x, 1/2 - x, x (letters B and C). All levels
are kept as numpy arrays; children of segment i sit at 4 i, ..., 4 i + 3.
"""

import hashlib
import math
from dataclasses import dataclass

import numpy as np

from sobolev_extender.errors import (
    InvalidLetter,
    InvalidParameter,
    PreconditionViolated,
)
from sobolev_extender.geometry import Point
from sobolev_extender.log import LOGGER

PERIMETER = 4.0
LETTERS = "ABC"
# Generations of descendants used to measure the diameter of an image arc
DIAMETER_DEPTH = 3
# Largest number of parameter intervals covering an arc
COVER_SIZE = 6


def derive_exponents(p):
    """Exponents of the construction.

    alpha solves (1/4)^alpha = p, x solves x^alpha = 1/4 and
    eta = (1/4) / (1/2 - x)^alpha.
    """
    p = float(p)
    if not 0.25 <= p < 0.5:
        raise InvalidParameter(f"Snowflake parameter {p} must lie in [1/4, 1/2)")
    alpha = math.log(p) / math.log(0.25)
    x = 0.25 ** (1.0 / alpha)
    eta = 0.25 / (0.5 - x) ** alpha
    return alpha, x, eta


def word_counts(word):
    """Number of letters A, B and C in a word."""
    counts = [0, 0, 0]
    for letter in word:
        if letter not in LETTERS:
            raise InvalidLetter(f"Letter {letter!r} is not one of A, B, C")
        counts[LETTERS.index(letter)] += 1
    return tuple(counts)


class ChoiceOracle:
    """Pure function from a word to the choice (1 or 2) applied to its segment."""

    def __init__(self, name, rule):
        self.name = name
        self.rule = rule

    def __call__(self, word):
        return self.rule(word)

    @classmethod
    def all_choice_1(cls):
        return cls("choice1", lambda word: 1)

    @classmethod
    def all_choice_2(cls):
        return cls("choice2", lambda word: 2)

    @classmethod
    def alternating(cls):
        # Choice 1 on even generations, choice 2 on odd ones
        return cls("alternating", lambda word: 1 if len(word) % 2 == 0 else 2)

    @classmethod
    def seeded(cls, seed, probability=0.5):
        def rule(word):
            digest = hashlib.blake2b(f"{seed}:{word}".encode(), digest_size=8).digest()
            return 1 if int.from_bytes(digest, "big") / 2.0**64 < probability else 2

        return cls(f"random:{seed}:{probability}", rule)

    @classmethod
    def from_name(cls, name, seed=0, probability=0.5):
        oracles = {
            "choice1": cls.all_choice_1,
            "choice2": cls.all_choice_2,
            "alternating": cls.alternating,
            "random": lambda: cls.seeded(seed, probability),
        }
        if name not in oracles:
            raise InvalidParameter(f"Unknown choice oracle {name}")
        return oracles[name]()


@dataclass(frozen=True)
class SnowflakeSpec:
    p: float
    oracle: ChoiceOracle
    order: str = "BCCB"

    def __post_init__(self):
        derive_exponents(self.p)
        if sorted(self.order) != ["B", "B", "C", "C"]:
            raise InvalidParameter(f"Choice 2 order {self.order} needs two B and two C")

    @property
    def exponents(self):
        return derive_exponents(self.p)

    @property
    def alpha(self):
        return self.exponents[0]

    @property
    def x(self):
        return self.exponents[1]

    @property
    def eta(self):
        return self.exponents[2]

    @property
    def height(self):
        """Relative height of the choice 1 bump."""
        return math.sqrt(max(self.p**2 - (0.5 - self.p) ** 2, 0.0))


@dataclass(frozen=True)
class Segment:
    start: Point
    end: Point
    word: str

    @property
    def generation(self):
        return len(self.word)

    @property
    def length(self):
        return math.hypot(self.end.x - self.start.x, self.end.y - self.start.y)


@dataclass(frozen=True)
class ParamInterval:
    level: int
    index: int
    start: float
    length: float
    word: str

    @property
    def end(self):
        return self.start + self.length

    @property
    def counts(self):
        return word_counts(self.word)


@dataclass
class SnowflakeLevel:
    """Segments of S_n with their parameter intervals on S_0 (perimeter coordinate)."""

    starts: np.ndarray
    deltas: np.ndarray
    param_start: np.ndarray
    param_len: np.ndarray
    words: list
    counts: np.ndarray
    parent: np.ndarray

    @property
    def size(self):
        return len(self.words)

    @property
    def lengths(self):
        return np.hypot(self.deltas[:, 0], self.deltas[:, 1])

    @property
    def vertices(self):
        """Closed list of polygon vertices (first vertex repeated at the end)."""
        return np.vstack([self.starts, self.starts[:1]])


def _initial_level():
    starts = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
    deltas = np.array([[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]])
    return SnowflakeLevel(
        starts=starts,
        deltas=deltas,
        param_start=np.array([0.0, 1.0, 2.0, 3.0]),
        param_len=np.ones(4),
        words=[""] * 4,
        counts=np.zeros((4, 3), dtype=int),
        parent=np.full(4, -1),
    )


class SnowflakeState:
    """Immutable snapshot of S_0, ..., S_n with the matched parameter intervals."""

    def __init__(self, spec, levels=None):
        self.spec = spec
        self.levels = list(levels) if levels is not None else [_initial_level()]
        self.logger = LOGGER.getChild(self.__class__.__name__)

    @property
    def generation(self):
        return len(self.levels) - 1

    @property
    def deepest(self):
        return self.levels[-1]

    def segment(self, level, index):
        data = self.levels[level]
        start = data.starts[index]
        end = start + data.deltas[index]
        return Segment(
            Point(float(start[0]), float(start[1])),
            Point(float(end[0]), float(end[1])),
            data.words[index],
        )

    def interval(self, level, index):
        data = self.levels[level]
        return ParamInterval(
            level=level,
            index=index,
            start=float(data.param_start[index]),
            length=float(data.param_len[index]),
            word=data.words[index],
        )

    def perimeter(self, level=None):
        data = self.levels[self.generation if level is None else level]
        return float(np.sum(data.lengths))


def initial_state(spec):
    return SnowflakeState(spec)


def generator_bump(p, base):
    """The four segments replacing the directed segment base under choice 1."""
    spec = SnowflakeSpec(p, ChoiceOracle.all_choice_1())
    start, end = base.start, base.end
    d = np.array([end.x - start.x, end.y - start.y])
    deltas = _choice_1_deltas(d[None, :], spec.p, spec.height)[0]
    points = [np.array([start.x, start.y])]
    for delta in deltas:
        points.append(points[-1] + delta)
    # Last point is the end of the base
    points[-1] = np.array([end.x, end.y])
    return [
        Segment(Point(*map(float, a)), Point(*map(float, b)), base.word + "A")
        for a, b in zip(points[:-1], points[1:])
    ]


def _choice_1_deltas(deltas, p, height):
    # Outward normal: right of the counterclockwise direction
    normal = np.column_stack([deltas[:, 1], -deltas[:, 0]])
    middle = (0.5 - p) * deltas
    return np.stack(
        [p * deltas, middle + height * normal, middle - height * normal, p * deltas],
        axis=1,
    )


def refine(state):
    """S_(n + 1) from S_n, the choice for each segment read from the oracle."""
    spec = state.spec
    level = state.deepest
    size = level.size
    choices = np.array([spec.oracle(word) for word in level.words])
    if np.any((choices != 1) & (choices != 2)):
        raise InvalidParameter(
            f"Oracle {spec.oracle.name} returned a choice other than 1 or 2"
        )
    first = (choices == 1)[:, None, None]
    straight = np.repeat((0.25 * level.deltas)[:, None, :], 4, axis=1)
    child_deltas = np.where(
        first, _choice_1_deltas(level.deltas, spec.p, spec.height), straight
    )
    child_starts = np.empty_like(child_deltas)
    child_starts[:, 0] = level.starts
    for i in range(1, 4):
        child_starts[:, i] = child_starts[:, i - 1] + child_deltas[:, i - 1]

    x = spec.x
    fraction_of = {"A": 0.25, "B": x, "C": 0.5 - x}
    second_fractions = np.array([fraction_of[letter] for letter in spec.order])
    fractions = np.where(
        (choices == 1)[:, None], np.full(4, 0.25)[None, :], second_fractions[None, :]
    )
    offsets = np.concatenate(
        [np.zeros((size, 1)), np.cumsum(fractions[:, :3], axis=1)], axis=1
    )
    child_param_start = level.param_start[:, None] + level.param_len[:, None] * offsets
    child_param_len = level.param_len[:, None] * fractions

    words = []
    letter_index = np.empty((size, 4), dtype=int)
    for i, (word, choice) in enumerate(zip(level.words, choices)):
        letters = "AAAA" if choice == 1 else spec.order
        words.extend(word + letter for letter in letters)
        letter_index[i] = [LETTERS.index(letter) for letter in letters]
    counts = np.repeat(level.counts, 4, axis=0)
    counts[np.arange(4 * size), letter_index.reshape(-1)] += 1

    child = SnowflakeLevel(
        starts=child_starts.reshape(-1, 2),
        deltas=child_deltas.reshape(-1, 2),
        param_start=child_param_start.reshape(-1),
        param_len=child_param_len.reshape(-1),
        words=words,
        counts=counts,
        parent=np.repeat(np.arange(size), 4),
    )
    LOGGER.debug(f"Refined generation {state.generation} to {child.size} segments")
    return SnowflakeState(spec, state.levels + [child])


def build_snowflake(spec, generation):
    state = initial_state(spec)
    for _ in range(generation):
        state = refine(state)
    return state


def length_formula_check(state):
    """Largest relative error of the word formulas for segment and interval lengths."""
    spec = state.spec
    worst_segment = 0.0
    worst_interval = 0.0
    for level in state.levels:
        a, b, c = level.counts[:, 0], level.counts[:, 1], level.counts[:, 2]
        segment_formula = spec.p**a * 0.25 ** (b + c)
        interval_formula = 0.25**a * spec.x**b * (0.5 - spec.x) ** c
        worst_segment = max(
            worst_segment, float(np.max(np.abs(level.lengths / segment_formula - 1)))
        )
        worst_interval = max(
            worst_interval,
            float(np.max(np.abs(level.param_len / interval_formula - 1))),
        )
    return worst_segment, worst_interval


def partition_gap(state):
    """Largest gap or overlap between consecutive parameter intervals of any level."""
    worst = 0.0
    for level in state.levels:
        ends = level.param_start + level.param_len
        gaps = np.abs(level.param_start[1:] - ends[:-1])
        edge = max(abs(level.param_start[0]), abs(ends[-1] - PERIMETER))
        worst = max(worst, float(np.max(gaps, initial=0.0)), edge)
    return worst


def distinct_vertices(state):
    """True when the vertices of the deepest polygon are pairwise distinct."""
    starts = state.deepest.starts
    return len(np.unique(starts, axis=0)) == len(starts)


@dataclass
class EtaCheck:
    max_residual: float
    violations: int
    pairs: int


def eta_identity_check(state):
    """
    Residual of length(s) / length(I)^alpha = eta^c(word) measured on the
    geometry, and the number of pairs breaking length(s) <= length(I)^alpha.
    """
    spec = state.spec
    worst = 0.0
    violations = 0
    pairs = 0
    for level in state.levels:
        scaled = level.param_len**spec.alpha
        ratio = level.lengths / scaled
        expected = spec.eta ** level.counts[:, 2]
        worst = max(worst, float(np.max(np.abs(ratio - expected))))
        violations += int(np.sum(level.lengths > scaled * (1 + 1e-12)))
        pairs += level.size
    if violations:
        LOGGER.warning(f"{violations} segments are longer than length(I)^alpha")
    return EtaCheck(max_residual=worst, violations=violations, pairs=pairs)


def eval_g(state, t, level=None):
    return Point(*map(float, eval_g_many(state, [t], level)[0]))


def eval_g_many(state, ts, level=None):
    """g at perimeter coordinates ts (taken modulo 4), linear on each interval."""
    data = state.levels[state.generation if level is None else level]
    ts = np.mod(np.asarray(ts, dtype=float), PERIMETER)
    index = np.searchsorted(data.param_start, ts, side="right") - 1
    index = np.clip(index, 0, data.size - 1)
    fraction = (ts - data.param_start[index]) / data.param_len[index]
    return data.starts[index] + fraction[:, None] * data.deltas[index]


def _max_pairwise(points, chunk=1024):
    """Diameter of each row of points, shape (n, m, 2), in chunks."""
    result = np.empty(len(points))
    for first in range(0, len(points), chunk):
        block = points[first:first + chunk]
        difference = block[:, :, None, :] - block[:, None, :, :]
        result[first:first + chunk] = np.sqrt(
            np.max(np.sum(difference**2, axis=-1), axis=(1, 2))
        )
    return result


def _arc_diameters(state, level):
    """Diameters of g(I) for the intervals of a level, read a few generations deeper."""
    depth = min(DIAMETER_DEPTH, state.generation - level)
    vertices = state.levels[level + depth].vertices
    block = 4**depth
    count = state.levels[level].size
    index = np.arange(count)[:, None] * block + np.arange(block + 1)[None, :]
    return _max_pairwise(vertices[index])


@dataclass
class HolderEstimate:
    constant: float
    per_level: list
    cover_constant: float
    max_cover: int


def _cover_level(state, start, end):
    """Deepest level at which [start, end] meets at most COVER_SIZE intervals."""
    chosen = 0
    for number, data in enumerate(state.levels):
        first = np.searchsorted(data.param_start, start, side="right") - 1
        last = np.searchsorted(data.param_start, end, side="left") - 1
        if last - first + 1 > COVER_SIZE:
            break
        chosen = number
    return chosen


def _cover_estimate(state, arcs):
    alpha = state.spec.alpha
    worst = 0.0
    max_cover = 0
    for start, end in arcs:
        level = _cover_level(state, start, end)
        data = state.levels[level]
        first = np.searchsorted(data.param_start, start, side="right") - 1
        last = np.searchsorted(data.param_start, end, side="left") - 1
        max_cover = max(max_cover, int(last - first + 1))
        fine = state.levels[min(level + DIAMETER_DEPTH, state.generation)]
        inside = (fine.param_start > start) & (fine.param_start < end)
        points = np.vstack(
            [eval_g_many(state, [start, end]), fine.starts[inside]]
        )
        diameter = _max_pairwise(points[None, :, :])[0]
        worst = max(worst, diameter / (end - start) ** alpha)
    return worst, max_cover


def holder_estimate(state, arcs=200, rng=None):
    """
    Largest diam(g(I)) / length(I)^alpha over all parameter intervals, and the
    same ratio for random arcs covered by at most six intervals.
    """
    if state.generation < 1:
        raise PreconditionViolated("Holder estimate needs at least one refinement")
    alpha = state.spec.alpha
    per_level = []
    for level in range(state.generation + 1):
        diameters = _arc_diameters(state, level)
        ratios = diameters / state.levels[level].param_len**alpha
        per_level.append(float(np.max(ratios)))
    rng = rng if rng is not None else np.random.default_rng(0)
    samples = np.sort(rng.uniform(0.0, PERIMETER, size=(arcs, 2)), axis=1)
    samples = [(a, b) for a, b in samples if b > a]
    cover_constant, max_cover = _cover_estimate(state, samples)
    return HolderEstimate(
        constant=max(per_level),
        per_level=per_level,
        cover_constant=cover_constant,
        max_cover=max_cover,
    )


@dataclass
class QuasisymmetryProbe:
    max_ratio: float
    min_ratio: float
    samples: int

    @property
    def distortion(self):
        return max(self.max_ratio, 1.0 / self.min_ratio)


def sample_triples(rng, count, max_step=0.5):
    """Random (x, t) with x in [0, 4) and t in (0, max_step]."""
    centres = rng.uniform(0.0, PERIMETER, size=count)
    steps = max_step * (1.0 - rng.uniform(0.0, 1.0, size=count))
    return np.column_stack([centres, steps])


def quasisymmetry_probe(state, samples, level=None):
    """Extremes of |g(x + t) - g(x)| / |g(x) - g(x - t)|, arguments taken modulo 4."""
    samples = np.asarray(samples, dtype=float)
    centres, steps = samples[:, 0], samples[:, 1]
    middle = eval_g_many(state, centres, level)
    ahead = eval_g_many(state, centres + steps, level)
    behind = eval_g_many(state, centres - steps, level)
    forward = np.hypot(*(ahead - middle).T)
    backward = np.hypot(*(middle - behind).T)
    ratios = forward / backward
    return QuasisymmetryProbe(
        max_ratio=float(np.max(ratios)),
        min_ratio=float(np.min(ratios)),
        samples=len(ratios),
    )


def neighbour_comparability(state):
    """Largest length ratio of adjacent parameter intervals of the same level."""
    worst = 1.0
    for level in state.levels:
        lengths = level.param_len
        following = np.roll(lengths, -1)
        ratios = np.maximum(lengths / following, following / lengths)
        worst = max(worst, float(np.max(ratios)))
    return worst


def _circular_gaps(first, second):
    ahead = (second.start - first.start) % PERIMETER - first.length
    behind = (first.start - second.start) % PERIMETER - second.length
    return ahead, behind


@dataclass
class ClaimResult:
    n: int
    ratio: float
    lower: float
    upper: float
    n_bound: float

    @property
    def within(self):
        return self.lower * (1 - 1e-12) <= self.ratio <= self.upper * (1 + 1e-12)

    @property
    def n_within(self):
        return self.n <= self.n_bound


def claim_check(state, first, second, C, comparability=None):
    """
    Compare the image lengths of two close parameter intervals of comparable
    length: with N the difference of their C counts the ratio lies in
    [eta^N C^-alpha, C^alpha eta^-N], and N is at most
    2 + log(C K) / log(1 / (1/2 - x)), K the neighbour comparability.
    """
    tolerance = 1e-12
    ahead, behind = _circular_gaps(first, second)
    if ahead < -tolerance or behind < -tolerance:
        raise PreconditionViolated("Intervals overlap")
    shortest = first.length / C * (1 - tolerance)
    longest = C * first.length * (1 + tolerance)
    if not shortest <= second.length <= longest:
        raise PreconditionViolated("Interval lengths are not comparable")
    if min(ahead, behind) > C * first.length * (1 + tolerance):
        raise PreconditionViolated("Intervals are too far apart")
    spec = state.spec
    alpha, x, eta = spec.exponents
    a1, b1, c1 = first.counts
    a2, b2, c2 = second.counts
    image_first = spec.p**a1 * 0.25 ** (b1 + c1)
    image_second = spec.p**a2 * 0.25 ** (b2 + c2)
    n = abs(c1 - c2)
    if comparability is None:
        comparability = neighbour_comparability(state)
    return ClaimResult(
        n=n,
        ratio=image_first / image_second,
        lower=eta**n * C**-alpha,
        upper=C**alpha * eta**-n,
        n_bound=2 + math.log(C * comparability) / math.log(1 / (0.5 - x)),
    )


def sample_claim_pairs(state, rng, count, C, attempts=50):
    """Random pairs of intervals meeting the hypotheses of claim_check."""
    pairs = []
    generation = state.generation
    for _ in range(count * attempts):
        if len(pairs) == count:
            break
        level = int(rng.integers(1, generation + 1))
        first = state.interval(level, int(rng.integers(state.levels[level].size)))
        other_level = int(np.clip(level + rng.integers(-1, 2), 0, generation))
        data = state.levels[other_level]
        offset = C * first.length * rng.uniform(0.0, 1.0)
        if rng.uniform() < 0.5:
            point = (first.end + offset) % PERIMETER
        else:
            point = (first.start - offset) % PERIMETER
        index = np.searchsorted(data.param_start, point, side="right") - 1
        index = int(np.clip(index, 0, data.size - 1))
        second = state.interval(other_level, index)
        ahead, behind = _circular_gaps(first, second)
        if ahead < 0 or behind < 0:
            continue
        if not first.length / C <= second.length <= C * first.length:
            continue
        if min(ahead, behind) > C * first.length:
            continue
        pairs.append((first, second))
    return pairs


def _orientation(a, b, c):
    return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (
        c[..., 0] - a[..., 0]
    ) * (b[..., 1] - a[..., 1])


def self_intersections(state, level=None):
    """
    Pairs (i, j) of non adjacent segments of the polygon that touch or cross,
    found by a sweep over segments sorted by their smallest x.
    """
    data = state.levels[state.generation if level is None else level]
    size = data.size
    starts = data.starts
    ends = starts + data.deltas
    low = np.minimum(starts, ends)
    high = np.maximum(starts, ends)
    order = np.argsort(low[:, 0], kind="stable")
    sorted_low_x = low[order, 0]
    found = []
    for position, i in enumerate(order):
        stop = np.searchsorted(sorted_low_x, high[i, 0], side="right")
        candidates = order[position + 1:stop]
        if len(candidates) == 0:
            continue
        candidates = candidates[
            (low[candidates, 1] <= high[i, 1]) & (high[candidates, 1] >= low[i, 1])
        ]
        gap = np.abs(candidates - i)
        candidates = candidates[(gap != 1) & (gap != size - 1)]
        if len(candidates) == 0:
            continue
        a, b = starts[i], ends[i]
        c, d = starts[candidates], ends[candidates]
        o1 = _orientation(a, b, c)
        o2 = _orientation(a, b, d)
        o3 = _orientation(c, d, a)
        o4 = _orientation(c, d, b)
        crossing = (o1 * o2 <= 0) & (o3 * o4 <= 0)
        collinear = (o1 == 0) & (o2 == 0)
        # Collinear pieces only meet when their boxes overlap in both directions
        if np.any(collinear):
            overlap = (low[candidates, 0] <= high[i, 0]) & (
                high[candidates, 0] >= low[i, 0]
            )
            crossing = np.where(collinear, overlap, crossing)
        for j in candidates[crossing]:
            found.append((int(min(i, j)), int(max(i, j))))
    return sorted(found)


def _points_in_polygon(points, polygon):
    """Even odd rule, vectorised over points; polygon closed (first vertex repeated)."""
    px, py = points[:, 0][:, None], points[:, 1][:, None]
    x1, y1 = polygon[:-1, 0][None, :], polygon[:-1, 1][None, :]
    x2, y2 = polygon[1:, 0][None, :], polygon[1:, 1][None, :]
    straddle = (y1 > py) != (y2 > py)
    with np.errstate(divide="ignore", invalid="ignore"):
        crossing_x = x1 + (py - y1) * (x2 - x1) / (y2 - y1)
    hits = straddle & (px < crossing_x)
    return np.sum(hits, axis=1) % 2 == 1


def _distance_to_boundary(points, polygon):
    a = polygon[:-1][None, :, :]
    edge = (polygon[1:] - polygon[:-1])[None, :, :]
    offset = points[:, None, :] - a
    along = np.clip(
        np.sum(offset * edge, axis=-1) / np.sum(edge * edge, axis=-1), 0.0, 1.0
    )
    nearest = a + along[..., None] * edge
    return np.min(np.hypot(*(points[:, None, :] - nearest).transpose(2, 0, 1)), axis=1)


@dataclass
class JohnEstimate:
    constant: float
    samples: int
    failures: int


def john_constant(state, samples=200, rng=None, level=None, steps=32):
    """
    Smallest c such that the straight carrot from a sampled interior point y to
    the centre (1/2, 1/2) satisfies |y - w| <= c dist(w, boundary) at every
    sampled w. Samples whose carrot leaves the polygon are counted as failures.
    """
    rng = rng if rng is not None else np.random.default_rng(0)
    number = min(state.generation, 5) if level is None else level
    polygon = state.levels[number].vertices
    centre = np.array([0.5, 0.5])
    low, high = polygon.min(axis=0), polygon.max(axis=0)
    candidates = rng.uniform(low, high, size=(samples * 4, 2))
    interior = candidates[_points_in_polygon(candidates, polygon)][:samples]
    worst = 0.0
    failures = 0
    fractions = np.linspace(0.0, 1.0, steps + 1)[1:]
    for point in interior:
        carrot = point[None, :] + fractions[:, None] * (centre - point)[None, :]
        if not np.all(_points_in_polygon(carrot, polygon)):
            failures += 1
            continue
        distances = _distance_to_boundary(carrot, polygon)
        travelled = fractions * np.hypot(*(centre - point))
        worst = max(worst, float(np.max(travelled / distances)))
    return JohnEstimate(constant=worst, samples=len(interior), failures=failures)


def state_to_dict(state):
    """JSON ready segment tree: every level with words, geometry and parameters."""
    spec = state.spec
    alpha, x, eta = spec.exponents
    levels = []
    for level in state.levels:
        ends = level.starts + level.deltas
        levels.append(
            [
                {
                    "word": word,
                    "start": start.tolist(),
                    "end": end.tolist(),
                    "param_start": float(param_start),
                    "param_len": float(param_len),
                    "parent": int(parent),
                }
                for word, start, end, param_start, param_len, parent in zip(
                    level.words,
                    level.starts,
                    ends,
                    level.param_start,
                    level.param_len,
                    level.parent,
                )
            ]
        )
    return {
        "p": spec.p,
        "alpha": alpha,
        "x": x,
        "eta": eta,
        "oracle": spec.oracle.name,
        "order": spec.order,
        "generation": state.generation,
        "levels": levels,
    }
