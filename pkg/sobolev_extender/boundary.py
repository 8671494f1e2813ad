# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

"""
Boundary data: increasing homeomorphisms of [-1, 1] fixing the endpoints and
homeomorphisms of the unit circle built from them.
"""

import math

import numpy as np

from sobolev_extender.errors import InvalidParameter, OutOfDomain
from sobolev_extender.log import LOGGER

TWO_PI = 2 * math.pi
# Descent stops once the bracketing image interval is shorter than this
CANTOR_RESOLUTION = 1e-15


def _check_domain(t):
    t = float(t)
    if not -1.0 <= t <= 1.0:
        raise OutOfDomain(f"{t} is outside [-1, 1]")
    return t


class MonotoneMap:
    """Strictly increasing map of [-1, 1] onto itself with phi(-1) = -1, phi(1) = 1."""

    kind = "monotone"

    def eval(self, t):
        t = _check_domain(t)
        # Endpoint values are exact for every representation
        if t == -1.0:
            return -1.0
        if t == 1.0:
            return 1.0
        return self._evaluate(t)

    __call__ = eval

    def _evaluate(self, t):
        raise NotImplementedError

    def image_interval(self, a, b):
        a = _check_domain(a)
        b = _check_domain(b)
        if a > b:
            raise OutOfDomain(f"Interval [{a}, {b}] has reversed endpoints")
        return (self.eval(a), self.eval(b))

    def eval_many(self, points):
        return np.array([self.eval(t) for t in points], dtype=float)

    def to_spec(self):
        return {"type": self.kind, "params": {}}

    def __repr__(self):
        return f"{self.__class__.__name__}({self.to_spec()['params']})"


class IdentityMap(MonotoneMap):
    kind = "identity"

    def _evaluate(self, t):
        return t


class PiecewiseLinearMap(MonotoneMap):
    """Linear interpolation of a table of strictly increasing knots and values."""

    kind = "pwl"

    def __init__(self, knots, values):
        knots = np.asarray([float(k) for k in knots], dtype=float)
        values = np.asarray([float(v) for v in values], dtype=float)
        if knots.shape != values.shape or len(knots) < 2:
            raise InvalidParameter(
                "Knots and values must be matching tables of size >= 2"
            )
        if knots[0] != -1.0 or knots[-1] != 1.0:
            raise InvalidParameter("Knots must run from -1 to 1")
        if values[0] != -1.0 or values[-1] != 1.0:
            raise InvalidParameter("Values must run from -1 to 1")
        if np.any(np.diff(knots) <= 0) or np.any(np.diff(values) <= 0):
            raise InvalidParameter("Knots and values must be strictly increasing")
        self.knots = knots
        self.values = values

    def _evaluate(self, t):
        return float(np.interp(t, self.knots, self.values))

    def to_spec(self):
        return {
            "type": self.kind,
            "params": {"knots": self.knots.tolist(), "values": self.values.tolist()},
        }


class CantorMap(MonotoneMap):
    """
    Distribution function of the self-similar binary measure giving mass fraction
    theta to every left dyadic child and 1 - theta to every right child.
    """

    kind = "cantor"

    def __init__(self, theta):
        theta = float(theta)
        if not 0.0 < theta < 1.0:
            raise InvalidParameter(f"Cantor mass fraction {theta} must lie in (0, 1)")
        self.theta = theta

    def mass(self, s):
        """Cumulative mass of [0, s] for s in [0, 1]."""
        lo_s, hi_s = 0.0, 1.0
        lo_m, weight = 0.0, 1.0
        while True:
            if s == lo_s:
                return lo_m
            if s == hi_s:
                return lo_m + weight
            if 2 * weight < CANTOR_RESOLUTION:
                return lo_m + (s - lo_s) / (hi_s - lo_s) * weight
            mid_s = (lo_s + hi_s) / 2
            left_mass = self.theta * weight
            if s == mid_s:
                return lo_m + left_mass
            if s < mid_s:
                hi_s = mid_s
                weight = left_mass
            else:
                lo_s = mid_s
                lo_m += left_mass
                weight *= 1.0 - self.theta

    def _evaluate(self, t):
        return 2 * self.mass((t + 1) / 2) - 1

    def to_spec(self):
        return {"type": self.kind, "params": {"theta": self.theta}}


def cantor_map(theta):
    """Singular test family; theta = 1/2 is Lebesgue measure, i.e. the identity."""
    return CantorMap(theta)


class PowerMap(MonotoneMap):
    """t -> sign(t) |t|^gamma"""

    kind = "power"

    def __init__(self, gamma):
        gamma = float(gamma)
        if not gamma > 0 or not math.isfinite(gamma):
            raise InvalidParameter(f"Power exponent {gamma} must be positive")
        self.gamma = gamma

    def _evaluate(self, t):
        return math.copysign(abs(t) ** self.gamma, t)

    def to_spec(self):
        return {"type": self.kind, "params": {"gamma": self.gamma}}


class CompositeMap(MonotoneMap):
    """Maps applied in the listed order: maps[-1] o ... o maps[0]."""

    kind = "compose"

    def __init__(self, maps):
        if len(maps) == 0:
            raise InvalidParameter("A composition needs at least one map")
        self.maps = list(maps)

    def _evaluate(self, t):
        for monotone in self.maps:
            t = monotone.eval(t)
        return t

    def to_spec(self):
        return {
            "type": self.kind,
            "params": {"maps": [monotone.to_spec() for monotone in self.maps]},
        }


class ArcRestriction(MonotoneMap):
    """A circle map read on the arc [start, end], normalised to [-1, 1] both sides."""

    kind = "arc"

    def __init__(self, circle_map, start, end):
        if not end > start:
            raise InvalidParameter(f"Arc [{start}, {end}] is empty")
        self.circle_map = circle_map
        self.start = start
        self.end = end
        self.image_start = circle_map.lift(start)
        self.image_end = circle_map.lift(end)

    def _evaluate(self, t):
        angle = self.start + (t + 1) / 2 * (self.end - self.start)
        image = self.circle_map.lift(angle)
        span = self.image_end - self.image_start
        return min(max(-1 + 2 * (image - self.image_start) / span, -1.0), 1.0)

    def to_spec(self):
        return {
            "type": self.kind,
            "params": {"start": self.start, "end": self.end},
        }


class CircleMap:
    """
    Circle homeomorphism given by its lift on one turn, stored as consecutive
    segments (start, end, image_start, image_end, monotone) with the monotone
    map read on the normalised segment. Orientation -1 means the map is complex
    conjugation after the orientation preserving map described by the segments.
    """

    def __init__(self, segments, orientation=1):
        if orientation not in (1, -1):
            raise InvalidParameter(f"Orientation must be 1 or -1, not {orientation}")
        if len(segments) == 0:
            raise InvalidParameter("A circle map needs at least one segment")
        self.segments = [tuple(segment) for segment in segments]
        self.orientation = orientation
        self.logger = LOGGER.getChild(self.__class__.__name__)
        self._validate()
        self.base = self.segments[0][0]
        self.starts = np.array([segment[0] for segment in self.segments])

    def _validate(self):
        for index, (start, end, image_start, image_end, _) in enumerate(self.segments):
            if not (end > start and image_end > image_start):
                raise InvalidParameter(
                    f"Segment {index} of the circle map is not increasing"
                )
            if index > 0:
                previous = self.segments[index - 1]
                if start != previous[1] or image_start != previous[3]:
                    raise InvalidParameter(
                        f"Segment {index} does not continue segment {index - 1}"
                    )
        first, last = self.segments[0], self.segments[-1]
        if not math.isclose(last[1] - first[0], TWO_PI, rel_tol=1e-15, abs_tol=1e-15):
            raise InvalidParameter("Circle map segments must cover one full turn")
        if not math.isclose(last[3] - first[2], TWO_PI, rel_tol=1e-15, abs_tol=1e-15):
            raise InvalidParameter("Circle map image segments must cover one full turn")

    @classmethod
    def rotation(cls, angle):
        return cls([(0.0, TWO_PI, angle, angle + TWO_PI, IdentityMap())])

    @classmethod
    def from_monotone(cls, monotone, offset=0.0, orientation=1):
        return cls([(0.0, TWO_PI, offset, offset + TWO_PI, monotone)], orientation)

    @classmethod
    def from_arcs(cls, maps, image_breaks=None, orientation=1):
        """One monotone map per arc between consecutive break angles."""
        count = len(maps)
        breaks = [TWO_PI * i / count for i in range(count)] + [TWO_PI]
        if image_breaks is None:
            image_breaks = breaks
        if len(image_breaks) != count + 1:
            raise InvalidParameter("Need one more image break than arc maps")
        segments = [
            (breaks[i], breaks[i + 1], image_breaks[i], image_breaks[i + 1], maps[i])
            for i in range(count)
        ]
        return cls(segments, orientation)

    def _locate(self, angle):
        turns = math.floor((angle - self.base) / TWO_PI)
        reduced = angle - TWO_PI * turns
        index = int(np.searchsorted(self.starts, reduced, side="right")) - 1
        index = min(max(index, 0), len(self.segments) - 1)
        return index, reduced, turns

    def lift(self, angle):
        """Orientation preserving part of the map on the angle coordinate."""
        index, reduced, turns = self._locate(angle)
        start, end, image_start, image_end, monotone = self.segments[index]
        if reduced == start:
            image = image_start
        else:
            t = min(-1 + 2 * (reduced - start) / (end - start), 1.0)
            image = image_start + (monotone.eval(t) + 1) / 2 * (image_end - image_start)
        return image + TWO_PI * turns

    def eval(self, angle):
        """Image angle in [0, 2 pi)."""
        image = math.fmod(self.lift(angle), TWO_PI)
        if image < 0:
            image += TWO_PI
        if self.orientation == -1:
            image = math.fmod(TWO_PI - image, TWO_PI)
        return image

    __call__ = eval

    def point(self, angle):
        image = self.eval(angle)
        return (math.cos(image), math.sin(image))

    def restrict(self, start, end):
        """Monotone map of the arc [start, end] onto its image arc."""
        for segment_start, segment_end, _, _, monotone in self.segments:
            if segment_start == start and segment_end == end:
                return monotone
        return ArcRestriction(self, start, end)

    def to_spec(self):
        return {
            "orientation": self.orientation,
            "segments": [
                {
                    "start": start,
                    "end": end,
                    "image_start": image_start,
                    "image_end": image_end,
                    "map": monotone.to_spec(),
                }
                for start, end, image_start, image_end, monotone in self.segments
            ],
        }
