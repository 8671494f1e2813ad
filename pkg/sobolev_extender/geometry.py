# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

"""
Planar primitives: points, triangles, affine maps, operator norms and the
singular weighted integral over a triangle used by every energy computation.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import dblquad

from sobolev_extender.errors import (
    DegenerateSource,
    DegenerateTriangle,
    DivergentIntegral,
    InvalidParameter,
    NegativeWeight,
)

# Relative area below which a source triangle does not define an affine map
EXACTNESS_THRESHOLD = 1e-14
# Relative tolerance of the adaptive quadrature oracle
ORACLE_EPSREL = 1e-10


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidParameter(
                f"Point coordinates must be finite: ({self.x}, {self.y})"
            )

    def __add__(self, other):
        return Point(self.x + other.x, self.y + other.y)

    def __sub__(self, other):
        return Point(self.x - other.x, self.y - other.y)

    def __mul__(self, factor):
        return Point(self.x * factor, self.y * factor)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.x
        yield self.y

    def norm(self):
        return math.hypot(self.x, self.y)


def orient2d(a, b, c):
    """Twice the signed area of (a, b, c); positive when counterclockwise."""
    return (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y)


def distance(a, b):
    return math.hypot(a.x - b.x, a.y - b.y)


@dataclass(frozen=True)
class Triangle:
    """Triangle with vertices in counterclockwise order."""

    v0: Point
    v1: Point
    v2: Point

    def __post_init__(self):
        if not orient2d(self.v0, self.v1, self.v2) > 0:
            raise DegenerateTriangle(
                f"Triangle {self.vertices} is degenerate or clockwise"
            )

    @property
    def vertices(self):
        return (self.v0, self.v1, self.v2)

    @property
    def signed_area(self):
        return orient2d(self.v0, self.v1, self.v2) / 2

    @property
    def area(self):
        return abs(self.signed_area)

    @property
    def diameter(self):
        return max(
            distance(self.v0, self.v1),
            distance(self.v1, self.v2),
            distance(self.v2, self.v0),
        )

    def barycentric(self, point):
        total = orient2d(self.v0, self.v1, self.v2)
        l0 = orient2d(point, self.v1, self.v2) / total
        l1 = orient2d(self.v0, point, self.v2) / total
        return (l0, l1, 1.0 - l0 - l1)

    def contains(self, point, tolerance=1e-12):
        return min(self.barycentric(point)) >= -tolerance

    def centroid(self):
        return Point(
            (self.v0.x + self.v1.x + self.v2.x) / 3,
            (self.v0.y + self.v1.y + self.v2.y) / 3,
        )


@dataclass(frozen=True)
class AffineMap:
    """z -> linear @ z + offset, linear stored row-major as ((a, b), (c, d))."""

    linear: tuple
    offset: Point

    def __call__(self, point):
        (a, b), (c, d) = self.linear
        return Point(
            a * point.x + b * point.y + self.offset.x,
            c * point.x + d * point.y + self.offset.y,
        )

    @property
    def det(self):
        (a, b), (c, d) = self.linear
        return a * d - b * c

    @property
    def matrix(self):
        return np.array(self.linear, dtype=float)

    def compose(self, other):
        """self after other."""
        (a, b), (c, d) = self.linear
        (e, f), (g, h) = other.linear
        linear = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        return AffineMap(linear, self(other.offset))

    def coefficients(self):
        (a, b), (c, d) = self.linear
        return [[a, b, self.offset.x], [c, d, self.offset.y]]


IDENTITY = AffineMap(((1.0, 0.0), (0.0, 1.0)), Point(0.0, 0.0))


def affine_from_triangles(src, dst):
    """Unique affine map sending src.v_i to dst.v_i for i = 0, 1, 2."""
    e1 = src.v1 - src.v0
    e2 = src.v2 - src.v0
    det = e1.x * e2.y - e2.x * e1.y
    scale = max(e1.norm(), e2.norm()) ** 2
    if abs(det) <= EXACTNESS_THRESHOLD * scale:
        raise DegenerateSource(f"Source triangle {src.vertices} has no affine map")
    f1 = dst.v1 - dst.v0
    f2 = dst.v2 - dst.v0
    # linear = [f1 f2] @ inverse([e1 e2])
    a = (f1.x * e2.y - f2.x * e1.y) / det
    b = (f2.x * e1.x - f1.x * e2.x) / det
    c = (f1.y * e2.y - f2.y * e1.y) / det
    d = (f2.y * e1.x - f1.y * e2.x) / det
    linear = ((a, b), (c, d))
    offset = Point(
        dst.v0.x - (a * src.v0.x + b * src.v0.y),
        dst.v0.y - (c * src.v0.x + d * src.v0.y),
    )
    return AffineMap(linear, offset)


def operator_norm(affine):
    """Largest singular value of the linear part."""
    return float(np.linalg.norm(affine.matrix, 2))


def distortion(affine):
    """|A|^2 / det A, the pointwise quasiconformal distortion of an affine map."""
    det = affine.det
    if det <= 0:
        return math.inf
    return operator_norm(affine) ** 2 / det


@dataclass(frozen=True)
class AffineFunctional:
    """w(x, y) = a x + b y + c"""

    a: float
    b: float
    c: float

    def __call__(self, point):
        return self.a * point.x + self.b * point.y + self.c


def _power_difference(lo, hi, exponent):
    """(hi**e - lo**e) / e for 0 < lo < hi, continuous through e = 0."""
    log_ratio = math.log(hi / lo)
    if exponent == 0:
        return log_ratio
    return lo**exponent * math.expm1(exponent * log_ratio) / exponent


def _ramp_integrals(lo, step, s):
    """
    Integrals of tau * w**-s and (1 - tau) * w**-s over tau in [0, 1],
    where w = lo + step * tau, lo >= 0, step > 0.
    """
    if lo == 0.0:
        base = step**-s
        falling = base / ((1 - s) * (2 - s)) if s < 1 else math.inf
        return base / (2 - s), falling
    ratio = step / lo
    if ratio <= 0.5:
        # Binomial series in the ratio; cancellation free for nearly constant weights
        rising = 0.0
        falling = 0.0
        coefficient = 1.0
        power = 1.0
        for k in range(200):
            term = coefficient * power
            rising += term / (k + 2)
            falling += term / ((k + 1) * (k + 2))
            if abs(term) < 1e-18 * abs(rising):
                break
            coefficient *= (-s - k) / (k + 1)
            power *= ratio
        scale = lo**-s
        return scale * rising, scale * falling
    hi = lo + step
    d1 = _power_difference(lo, hi, 1 - s)
    d2 = _power_difference(lo, hi, 2 - s)
    step2 = step * step
    return (d2 - lo * d1) / step2, (hi * d1 - d2) / step2


def triangle_power_integral(area, values, s):
    """
    Exact integral of w**-s over a triangle of the given area, w the affine
    function taking the given values at the vertices.
    """
    lo, mid, hi = sorted(float(v) for v in values)
    if lo < 0:
        raise NegativeWeight(f"Weight takes negative value {lo} on the triangle")
    zeros = sum(1 for v in (lo, mid, hi) if v == 0.0)
    if zeros == 3:
        if s > 0:
            raise DivergentIntegral("Weight vanishes identically")
        return area if s == 0 else 0.0
    if zeros == 2 and s >= 1:
        raise DivergentIntegral(f"Weight vanishes on an edge and s = {s} >= 1")
    if zeros == 1 and s >= 2:
        raise DivergentIntegral(f"Weight vanishes at a vertex and s = {s} >= 2")
    spread = hi - lo
    if spread == 0.0:
        return area * lo**-s
    total = 0.0
    if mid > lo:
        rising, _ = _ramp_integrals(lo, mid - lo, s)
        total += (mid - lo) * rising
    if hi > mid:
        _, falling = _ramp_integrals(mid, hi - mid, s)
        total += (hi - mid) * falling
    return 2 * area * total / spread


def weighted_triangle_integral(triangle, weight, s):
    """Closed form of the integral of weight(z)**-s over the triangle."""
    values = [weight(v) for v in triangle.vertices]
    return triangle_power_integral(triangle.area, values, s)


def quadrature_triangle_integral(area, values, s, epsrel=ORACLE_EPSREL):
    """Adaptive quadrature of the same integral; the testing oracle."""
    # Put the largest value first so zero sets sit on the inner upper limit
    order = sorted(range(3), key=lambda i: -values[i])
    w0, w1, w2 = (float(values[i]) for i in order)

    def integrand(eta, xi):
        weight = (1.0 - xi - eta) * w0 + xi * w1 + eta * w2
        return weight**-s

    result, _ = dblquad(
        integrand, 0.0, 1.0, lambda xi: 0.0, lambda xi: 1.0 - xi,
        epsabs=0.0, epsrel=epsrel,
    )
    return 2 * area * result


def triangles_overlap(first, second, tolerance=1e-12):
    """
    True when the interiors of two triangles intersect (separating axis test).
    The tolerance is relative to the larger diameter, and absolute below unit size.
    """
    scale = max(first.diameter, second.diameter, 1.0)
    for triangle in (first, second):
        vertices = triangle.vertices
        for i in range(3):
            a, b = vertices[i], vertices[(i + 1) % 3]
            length = distance(a, b)
            normal = Point((b.y - a.y) / length, (a.x - b.x) / length)
            p1 = [normal.x * v.x + normal.y * v.y for v in first.vertices]
            p2 = [normal.x * v.x + normal.y * v.y for v in second.vertices]
            if max(p1) <= min(p2) + tolerance * scale:
                return False
            if max(p2) <= min(p1) + tolerance * scale:
                return False
    return True
