# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

"""
Extension of a circle homeomorphism to the unit disk.

The circle is cut into four quarter arcs. The circular segment between an arc
and its chord is charted onto T by a cone map from the chord midpoint (arc to
the base, chord halves to the legs), extended there by the dyadic mesh of the
arc restriction and charted back onto the image segment. The square left over
is mapped by a Coons patch interpolating the four induced chord traces; its
injectivity is checked numerically and failures are raised, not hidden.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from sobolev_extender.errors import InjectivityCheckFailed, OutOfDomain
from sobolev_extender.extension import build_extension, check_homeomorphism
from sobolev_extender.geometry import Point, Triangle, orient2d, triangles_overlap
from sobolev_extender.log import LOGGER

QUARTER = math.pi / 2
CORNERS = (Point(1.0, 0.0), Point(0.0, 1.0), Point(-1.0, 0.0), Point(0.0, -1.0))


def _on_circle(angle):
    return Point(math.cos(angle), math.sin(angle))


class SegmentChart:
    """
    Cone chart of the circular segment over the arc [start, end]:
    T point (lambda * t, 1 - lambda) -> M + lambda * (gamma(t) - M), gamma the
    constant speed parametrisation of the arc over t in [-1, 1].
    """

    def __init__(self, start, end):
        self.start = start
        self.end = end
        first, last = _on_circle(start), _on_circle(end)
        self.midpoint = Point((first.x + last.x) / 2, (first.y + last.y) / 2)

    def arc_point(self, t):
        return _on_circle(self.start + (t + 1) / 2 * (self.end - self.start))

    def forward(self, point):
        scale = 1.0 - point.y
        if scale <= 0.0:
            return self.midpoint
        t = min(max(point.x / scale, -1.0), 1.0)
        target = self.arc_point(t)
        return self.midpoint + (target - self.midpoint) * scale

    def inverse(self, point):
        offset = point - self.midpoint
        length = offset.norm()
        if length == 0.0:
            return Point(0.0, 1.0)
        direction = offset * (1.0 / length)
        along = self.midpoint.x * direction.x + self.midpoint.y * direction.y
        # Ray from the midpoint meets the circle at distance reach
        reach = -along + math.sqrt(
            max(along * along - (self.midpoint.norm() ** 2 - 1.0), 0.0)
        )
        hit = self.midpoint + direction * reach
        # Angle of the hit point taken within half a turn of the arc centre
        centre = (self.start + self.end) / 2
        angle = centre + math.remainder(math.atan2(hit.y, hit.x) - centre, 2 * math.pi)
        t = min(max(2 * (angle - self.start) / (self.end - self.start) - 1, -1.0), 1.0)
        scale = min(max(length / reach, 0.0), 1.0)
        return Point(scale * t, 1.0 - scale)


@dataclass
class CircularSegment:
    index: int
    start: float
    end: float

    @property
    def arc_endpoints(self):
        return (_on_circle(self.start), _on_circle(self.end))

    @property
    def chord_length(self):
        first, last = self.arc_endpoints
        return (first - last).norm()

    @property
    def area(self):
        angle = self.end - self.start
        return (angle - math.sin(angle)) / 2


@dataclass
class DiskCover:
    segments: list
    square: tuple

    @property
    def square_area(self):
        total = 0.0
        for i in range(4):
            a, b = self.square[i], self.square[(i + 1) % 4]
            total += a.x * b.y - b.x * a.y
        return total / 2


def cover_circle():
    """Four quarter arcs starting at angle 0, their circular segments and the square."""
    segments = [CircularSegment(i, i * QUARTER, (i + 1) * QUARTER) for i in range(4)]
    return DiskCover(segments, CORNERS)


@dataclass
class DiskExtension:
    """Piecewise map of the closed unit disk extending a circle homeomorphism."""

    phi: object
    depth: int
    meshes: list
    source_charts: list
    image_charts: list
    image_corners: list
    diagnostics: dict = field(default_factory=dict)

    def chord_trace(self, index, s):
        """Image of the point P_i + s (P_(i+1) - P_i) of chord i."""
        if s <= 0.5:
            scale = 1.0 - 2 * s
            leg_point = Point(-scale, 1.0 - scale)
        else:
            scale = 2 * s - 1.0
            leg_point = Point(scale, 1.0 - scale)
        return self._conjugate(self._segment_image(index, leg_point))

    def _segment_image(self, index, point_in_t):
        image = self.meshes[index].eval(point_in_t)
        return self.image_charts[index].forward(image)

    def _conjugate(self, point):
        if self.phi.orientation == -1:
            return Point(point.x, -point.y)
        return point

    def central(self, sigma, tau):
        """Coons patch at Q = P0 + sigma (P1 - P0) + tau (P3 - P0)."""
        bottom = self.chord_trace(0, sigma)
        right = self.chord_trace(1, tau)
        top = self.chord_trace(2, 1 - sigma)
        left = self.chord_trace(3, 1 - tau)
        q00, q10, q11, q01 = self.image_corners
        ruled = (
            bottom * (1 - tau) + top * tau + left * (1 - sigma) + right * sigma
        )
        bilinear = (
            q00 * ((1 - sigma) * (1 - tau))
            + q10 * (sigma * (1 - tau))
            + q11 * (sigma * tau)
            + q01 * ((1 - sigma) * tau)
        )
        return ruled - bilinear

    def eval(self, point):
        point = Point(*point)
        if point.norm() > 1.0 + 1e-12:
            raise OutOfDomain(f"({point.x}, {point.y}) is outside the unit disk")
        if abs(point.x) + abs(point.y) <= 1.0:
            sigma = (1.0 - point.x + point.y) / 2
            tau = (1.0 - point.x - point.y) / 2
            return self.central(sigma, tau)
        angle = math.atan2(point.y, point.x) % (2 * math.pi)
        index = min(int(angle // QUARTER), 3)
        point_in_t = self.source_charts[index].inverse(point)
        return self._conjugate(self._segment_image(index, point_in_t))

    __call__ = eval


def _grid_triangles(points):
    """Two counterclockwise triangles per cell of a square grid of points."""
    rows, cols = len(points), len(points[0])
    for r in range(rows - 1):
        for c in range(cols - 1):
            yield (r, c), (r, c + 1), (r + 1, c + 1)
            yield (r, c), (r + 1, c + 1), (r + 1, c)


def _jacobian_sign(source, image, sign=1):
    """Smallest signed ratio of image to source orientation over the grid triangles."""
    smallest = math.inf
    triangles = []
    for i, j, k in _grid_triangles(source):
        a, b, c = source[i[0]][i[1]], source[j[0]][j[1]], source[k[0]][k[1]]
        area = orient2d(a, b, c)
        if area <= 0:
            continue
        fa, fb, fc = image[i[0]][i[1]], image[j[0]][j[1]], image[k[0]][k[1]]
        smallest = min(smallest, sign * orient2d(fa, fb, fc) / area)
        triangles.append((fa, fb, fc))
    return smallest, triangles


def _overlaps(triangles, pairs, rng):
    count = 0
    positive = []
    for a, b, c in triangles:
        orientation = orient2d(a, b, c)
        if orientation > 0:
            positive.append(Triangle(a, b, c))
        elif orientation < 0:
            positive.append(Triangle(a, c, b))
    if len(positive) < 2:
        return 0
    for _ in range(pairs):
        first, second = rng.choice(len(positive), size=2, replace=False)
        if triangles_overlap(positive[first], positive[second]):
            count += 1
    return count


def _central_check(extension, grid, pairs, rng, sign):
    values = np.linspace(0.0, 1.0, grid + 1)
    side, down = CORNERS[1] - CORNERS[0], CORNERS[3] - CORNERS[0]
    # (sigma, tau) -> Q preserves orientation
    source = [[CORNERS[0] + side * s + down * t for s in values] for t in values]
    image = [[extension.central(s, t) for s in values] for t in values]
    smallest, triangles = _jacobian_sign(source, image, sign)
    return smallest, _overlaps(triangles, pairs, rng)


def _segment_check(extension, index, grid, sign):
    chart = extension.source_charts[index]
    source = []
    image = []
    for y in np.linspace(0.0, 1.0, grid + 1):
        row_source = []
        row_image = []
        for x in np.linspace(-1.0, 1.0, grid + 1):
            # Square grid squeezed into T
            point_in_t = Point(float(x) * (1.0 - float(y)), float(y))
            row_source.append(chart.forward(point_in_t))
            row_image.append(
                extension._conjugate(extension._segment_image(index, point_in_t))
            )
        source.append(row_source)
        image.append(row_image)
    smallest, _ = _jacobian_sign(source, image, sign)
    return smallest


def assemble_disk_extension(phi, depth, grid=32, pairs=1000, seed=0, strict=True):
    """
    Extend the circle map phi to the disk and run the numerical injectivity checks.
    Raises InjectivityCheckFailed when strict and the central map folds.
    """
    cover = cover_circle()
    meshes = []
    source_charts = []
    image_charts = []
    image_corners = []
    sign = phi.orientation
    for segment in cover.segments:
        restriction = phi.restrict(segment.start, segment.end)
        meshes.append(build_extension(restriction, depth))
        source_charts.append(SegmentChart(segment.start, segment.end))
        image_charts.append(
            SegmentChart(phi.lift(segment.start), phi.lift(segment.end))
        )
        corner = _on_circle(phi.lift(segment.start))
        image_corners.append(Point(corner.x, sign * corner.y))
    extension = DiskExtension(
        phi=phi,
        depth=depth,
        meshes=meshes,
        source_charts=source_charts,
        image_charts=image_charts,
        image_corners=image_corners,
    )
    rng = np.random.default_rng(seed)
    segment_reports = [
        check_homeomorphism(mesh, pairs=pairs // 4, seed=seed).to_dict()
        for mesh in meshes
    ]
    segment_jacobians = [_segment_check(extension, i, grid, sign) for i in range(4)]
    central_jacobian, central_overlaps = _central_check(
        extension, grid, pairs, rng, sign
    )
    diagnostics = {
        "segments": segment_reports,
        "segment_min_jacobian": segment_jacobians,
        "central_min_jacobian": central_jacobian,
        "central_overlaps": central_overlaps,
        "grid": grid,
        "pairs": pairs,
    }
    diagnostics["passed"] = (
        central_jacobian > 0
        and central_overlaps == 0
        and all(value > 0 for value in segment_jacobians)
        and all(report["passed"] for report in segment_reports)
    )
    extension.diagnostics = diagnostics
    LOGGER.info(
        f"Disk extension depth {depth}: central min jacobian {central_jacobian}, "
        f"overlaps {central_overlaps}"
    )
    if strict and not diagnostics["passed"]:
        raise InjectivityCheckFailed(
            "Disk extension failed the numerical injectivity check", diagnostics
        )
    return extension
