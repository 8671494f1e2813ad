# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

"""
Dyadic piecewise affine extension of a boundary homeomorphism of [-1, 1] to the
triangle T = {0 <= y <= 1, y - 1 <= x <= 1 - y}.

Generation j splits [-1, 1] into 2**j intervals of length 2**(1 - j). The cell
of interval I is the pentagon X, Y, z, y, x built from the apex points of I, its
right neighbour and their children, cut into the triangles (X, x, y), (X, y, Y)
and (Y, y, z). The last interval of a generation only has (X, x, y).

Affine maps are computed in the diagonal frame (u, v) = (x - y, x + y) where the
apex of [a, b] is the point (a, b), then conjugated back to (x, y).
"""

import math
import threading
from dataclasses import dataclass, field

import numpy as np

from sobolev_extender.errors import (
    DegenerateInterval,
    DegenerateTriangle,
    InvalidParameter,
    OutOfDomain,
)
from sobolev_extender.geometry import (
    AffineMap,
    Point,
    Triangle,
    affine_from_triangles,
    distance,
    distortion,
    triangles_overlap,
)
from sobolev_extender.log import LOGGER

# Tent diameter below which eval stops refining and returns the image tent apex
EVAL_FLOOR = 1e-12
# Tolerance used when deciding whether a point lies in T
DOMAIN_TOLERANCE = 1e-12

TO_DIAGONAL = AffineMap(((1.0, -1.0), (1.0, 1.0)), Point(0.0, 0.0))
FROM_DIAGONAL = AffineMap(((0.5, 0.5), (-0.5, 0.5)), Point(0.0, 0.0))


class ReferenceTriangle:
    """The triangle T with vertices (-1, 0), (1, 0), (0, 1) and area 1."""

    VERTICES = (Point(-1.0, 0.0), Point(1.0, 0.0), Point(0.0, 1.0))
    AREA = 1.0

    def contains(self, point, tolerance=DOMAIN_TOLERANCE):
        return (
            -tolerance <= point.y <= 1 + tolerance
            and point.y - 1 - tolerance <= point.x <= 1 - point.y + tolerance
        )

    def as_triangle(self):
        return Triangle(*self.VERTICES)


REFERENCE_TRIANGLE = ReferenceTriangle()


def apex(a, b):
    """Right angled apex over [a, b]: (midpoint, half length)."""
    if not b > a:
        raise DegenerateInterval(f"Interval [{a}, {b}] has no apex")
    return Point((a + b) / 2, (b - a) / 2)


def _collapsed_apex(a, b):
    """Apex of an image interval that may have shrunk to a single value."""
    return Point((a + b) / 2, max(b - a, 0.0) / 2)


def _diagonal_triangle(
first, second, third):
    # Each vertex given as the interval (a, b) whose apex it is
    return Triangle(Point(*first), Point(*second), Point(*third))


@dataclass(frozen=True)
class DyadicInterval:
    j: int
    k: int

    def __post_init__(self):
        if self.j < 0 or not 1 <= self.k <= 2**self.j:
            raise InvalidParameter(
                f"No dyadic interval with j = {self.j}, k = {self.k}"
            )

    @property
    def length(self):
        return 2.0 ** (1 - self.j)

    @property
    def a(self):
        return -1.0 + self.length * (self.k - 1)

    @property
    def b(self):
        return -1.0 + self.length * self.k

    @property
    def is_last(self):
        return self.k == 2**self.j

    def children(self):
        return (
            DyadicInterval(self.j + 1, 2 * self.k - 1),
            DyadicInterval(self.j + 1, 2 * self.k),
        )

    def right_neighbor(self):
        if self.is_last:
            return None
        return DyadicInterval(self.j, self.k + 1)


@dataclass(frozen=True)
class AffinePiece:
    """One triangle of the extension: source, image, the map and the image heights."""

    source: Triangle
    image: Triangle
    map: AffineMap
    heights: tuple


def _piece(source_intervals, image_intervals):
    """Affine piece sending apex(source_i) to apex(image_i).

    An interval with a == b stands for a base point.
    """
    src_uv = _diagonal_triangle(*source_intervals)
    dst_uv = _diagonal_triangle(*image_intervals)
    uv_map = affine_from_triangles(src_uv, dst_uv)
    xy_map = FROM_DIAGONAL.compose(uv_map.compose(TO_DIAGONAL))
    source = Triangle(*(FROM_DIAGONAL(v) for v in src_uv.vertices))
    image = Triangle(*(FROM_DIAGONAL(v) for v in dst_uv.vertices))
    heights = tuple((b - a) / 2 for a, b in image_intervals)
    return AffinePiece(source, image, xy_map, heights)


@dataclass(frozen=True)
class PentagonCell:
    """
    Cell of the dyadic interval (j, k). points and image_points are keyed by
    X, Y, z, y, x (Y and z absent for the last interval of a generation).
    knots are the boundary points A, M, B, B + L/2, B + L read by the cell and
    values their images.
    """

    j: int
    k: int
    is_last: bool
    knots: tuple
    values: tuple
    points: dict = field(compare=False)
    image_points: dict = field(compare=False)
    pieces: tuple = field(compare=False)

    @property
    def maps(self):
        return tuple(piece.map for piece in self.pieces)

    @property
    def length(self):
        return 2.0 ** (1 - self.j)

    @property
    def image_lengths(self):
        """|I'_k| and, for full cells, |I'_(k+1)|."""
        a, _, b = self.values[:3]
        if self.is_last:
            return (b - a,)
        return (b - a, self.values[4] - b)

    @property
    def source_area(self):
        return sum(piece.source.area for piece in self.pieces)

    @property
    def image_area(self):
        return sum(piece.image.area for piece in self.pieces)

    def image_orientation(self):
        """Closed form orientation (b - c)(c - a)/2 of (X', x', y')."""
        a, c, b = self.values[:3]
        return (b - c) * (c - a) / 2

    def locate(self, point):
        """Piece whose source triangle contains the point best."""
        return max(self.pieces, key=lambda piece: min(piece.source.barycentric(point)))


def _assemble_cell(j, k, knots, values):
    is_last = len(knots) == 3
    a, c, b = values[:3]
    big_a, mid, big_b = knots[:3]
    points = {
        "X": apex(big_a, big_b),
        "x": apex(big_a, mid),
        "y": apex(mid, big_b),
    }
    image_points = {"X": apex(a, b), "x": apex(a, c), "y": apex(c, b)}
    pieces = [
        _piece(
            ((big_a, big_b), (big_a, mid), (mid, big_b)),
            ((a, b), (a, c), (c, b)),
        )
    ]
    if not is_last:
        quarter, far = knots[3:]
        d, e = values[3:]
        points["Y"] = apex(big_b, far)
        points["z"] = apex(big_b, quarter)
        image_points["Y"] = apex(b, e)
        image_points["z"] = apex(b, d)
        pieces.append(
            _piece(
                ((big_a, big_b), (mid, big_b), (big_b, far)),
                ((a, b), (c, b), (b, e)),
            )
        )
        pieces.append(
            _piece(
                ((big_b, far), (mid, big_b), (big_b, quarter)),
                ((b, e), (c, b), (b, d)),
            )
        )
    return PentagonCell(
        j=j,
        k=k,
        is_last=is_last,
        knots=tuple(knots),
        values=tuple(values),
        points=points,
        image_points=image_points,
        pieces=tuple(pieces),
    )


def _cell_knots(interval):
    length = interval.length
    knots = [interval.a, interval.a + length / 2, interval.b]
    if not interval.is_last:
        knots += [interval.b + length / 2, interval.b + length]
    return knots


def build_cell(interval, phi):
    """Pentagon cell of a dyadic interval for the boundary map phi."""
    knots = _cell_knots(interval)
    values = [phi.eval(t) for t in knots]
    return _assemble_cell(interval.j, interval.k, knots, values)


def _closure_pieces(knots, values):
    """
    Strip below the deepest cells: tents over consecutive knots and the inverted
    triangles between neighbouring tents.
    """
    pieces = []
    count = len(knots) - 1
    for i in range(count):
        a, b = knots[i], knots[i + 1]
        fa, fb = values[i], values[i + 1]
        pieces.append(_piece(((a, a), (b, b), (a, b)), ((fa, fa), (fb, fb), (fa, fb))))
        if i + 1 < count:
            c, fc = knots[i + 2], values[i + 2]
            pieces.append(
                _piece(((a, b), (b, b), (b, c)), ((fa, fb), (fb, fb), (fb, fc)))
            )
    return pieces


class ExtensionMesh:
    """
    All cells of generations 0..depth for the boundary map phi, plus the affine
    closure of the remaining strip 0 <= y <= 2**(-depth - 1).
    """

    def __init__(self, phi, depth):
        if depth < 0:
            raise InvalidParameter(f"Depth {depth} must be non-negative")
        self.phi = phi
        self.depth = depth
        self.logger = LOGGER.getChild(self.__class__.__name__)
        level = depth + 1
        count = 2**level
        # Generation depth + 1 points are exact dyadic doubles
        self.knots = np.array([-1.0 + 2.0 ** (-depth) * i for i in range(count + 1)])
        self.values = phi.eval_many(self.knots)
        if np.any(np.diff(self.values) <= 0):
            raise InvalidParameter(
                "Boundary map is not strictly increasing on the mesh"
            )
        self.generations = [self._build_generation(j) for j in range(depth + 1)]
        self.closure = _closure_pieces(self.knots.tolist(), self.values.tolist())
        self._deeper = {}
        self._lock = threading.Lock()
        LOGGER.debug(f"Built {self.cell_count} cells to depth {depth}")

    def _build_generation(self, j):
        # Points of generation j + 1
        step = 2 ** (self.depth - j)
        knots = self.knots[::step].tolist()
        values = self.values[::step].tolist()
        cells = []
        for k in range(1, 2**j + 1):
            start = 2 * (k - 1)
            end = start + (3 if k == 2**j else 5)
            cells.append(_assemble_cell(j, k, knots[start:end], values[start:end]))
        return cells

    @property
    def cells(self):
        return [cell for generation in self.generations for cell in generation]

    @property
    def cell_count(self):
        return sum(len(generation) for generation in self.generations)

    def cell(self, j, k):
        if j <= self.depth:
            return self.generations[j][k - 1]
        key = (j, k)
        with self._lock:
            if key not in self._deeper:
                self._deeper[key] = build_cell(DyadicInterval(j, k), self.phi)
            return self._deeper[key]

    def pieces(self):
        for cell in self.cells:
            yield from cell.pieces
        yield from self.closure

    @property
    def strip_height(self):
        return 2.0 ** (-self.depth - 1)

    def strip_area(self):
        h = self.strip_height
        return 2 * h - h * h

    def eval(self, point):
        """The limit map H at a point of T, refining below the mesh on demand."""
        point = Point(*point)
        if not REFERENCE_TRIANGLE.contains(point):
            raise OutOfDomain(f"({point.x}, {point.y}) is outside T")
        y = min(max(point.y, 0.0), 1.0)
        if y == 0.0:
            t = min(max(point.x, -1.0), 1.0)
            return Point(self.phi.eval(t), 0.0)
        _, exponent = math.frexp(y)
        j = max(-exponent, 0)
        length = 2.0 ** (1 - j)
        u = point.x - point.y
        k = min(max(math.floor((u + 1) / length) + 1, 1), 2**j)
        if j > self.depth:
            start = -1.0 + length * (k - 1)
            a, b = self.phi.image_interval(start, min(start + 2 * length, 1.0))
            if length < EVAL_FLOOR or b - a < EVAL_FLOOR:
                return _collapsed_apex(a, b)
            try:
                piece = self.cell(j, k).locate(point)
            except (DegenerateInterval, DegenerateTriangle):
                # Image values of the cell coincide in double precision
                return _collapsed_apex(a, b)
            return piece.map(point)
        piece = self.cell(j, k).locate(point)
        return piece.map(point)

    __call__ = eval


def build_extension(phi, depth):
    return ExtensionMesh(phi, depth)


def _leg_trace(knots, values):
    """Largest deviation from the identity and extreme slopes of a leg trace."""
    knots = np.asarray(knots)
    values = np.asarray(values)
    slopes = np.diff(values) / np.diff(knots)
    return {
        "max_deviation": float(np.max(np.abs(values - knots))),
        "min_slope": float(np.min(slopes)),
        "max_slope": float(np.max(slopes)),
    }


def leg_traces(mesh):
    """
    Traces of the mesh on the legs of T. The left leg is read in the coordinate
    v = x + y and meets the apexes of the first intervals, the right leg in
    u = x - y and the apexes of the last intervals.
    """
    depth = mesh.depth
    left = [-1.0] + [-1.0 + 2.0 ** (1 - j) for j in range(depth + 1, -1, -1)]
    right = [1.0 - 2.0 ** (1 - j) for j in range(depth + 2)] + [1.0]
    phi = mesh.phi
    return {
        "left": _leg_trace(left, [phi.eval(t) for t in left]),
        "right": _leg_trace(right, [phi.eval(t) for t in right]),
    }


@dataclass
class HomeomorphismReport:
    min_det: float
    min_orientation: float
    max_edge_mismatch: float
    max_distortion: float
    source_residual: float
    image_residual: float
    overlaps: int
    pairs_tested: int
    legs: dict

    @property
    def passed(self):
        return (
            self.min_det > 0
            and self.min_orientation > 0
            and self.max_edge_mismatch <= 1e-12
            and self.source_residual == 0.0
            and abs(self.image_residual) <= 1e-9
            and self.overlaps == 0
        )

    def to_dict(self):
        return {
            "min_det": self.min_det,
            "min_orientation": self.min_orientation,
            "max_edge_mismatch": self.max_edge_mismatch,
            "max_distortion": self.max_distortion,
            "source_residual": self.source_residual,
            "image_residual": self.image_residual,
            "overlaps": self.overlaps,
            "pairs_tested": self.pairs_tested,
            "legs": self.legs,
            "passed": self.passed,
        }


def _neighbour_cells(mesh, cell):
    j, k = cell.j, cell.k
    candidates = [(j, k - 1), (j, k + 1)]
    if j < mesh.depth:
        candidates += [(j + 1, 2 * k - 1), (j + 1, 2 * k), (j + 1, 2 * k + 1)]
    if j > 0:
        candidates += [(j - 1, (k + 1) // 2), (j - 1, (k + 1) // 2 - 1)]
    return [
        mesh.generations[jj][kk - 1]
        for jj, kk in candidates
        if 0 <= jj <= mesh.depth and 1 <= kk <= 2**jj
    ]


def _sample_overlaps(mesh, pairs, rng):
    """Overlap tests on image triangles, half among neighbours and half at random."""
    cells = mesh.cells
    overlaps = 0
    for index in range(pairs):
        cell = cells[int(rng.integers(len(cells)))]
        if index % 2 == 0:
            others = [cell] + _neighbour_cells(mesh, cell)
            other = others[int(rng.integers(len(others)))]
        else:
            other = cells[int(rng.integers(len(cells)))]
        first = cell.pieces[int(rng.integers(len(cell.pieces)))]
        second = other.pieces[int(rng.integers(len(other.pieces)))]
        if first is second:
            continue
        if triangles_overlap(first.image, second.image):
            overlaps += 1
    return overlaps


def check_homeomorphism(mesh, pairs=1000, seed=0):
    """Numerical check that the mesh map is an orientation preserving homeomorphism."""
    vertex_images = {}
    for cell in mesh.cells:
        for name, source_point in cell.points.items():
            vertex_images.setdefault(source_point, cell.image_points[name])
    min_det = math.inf
    max_mismatch = 0.0
    max_distortion = 0.0
    min_orientation = math.inf
    for cell in mesh.cells:
        min_orientation = min(min_orientation, cell.image_orientation())
        for piece in cell.pieces:
            min_det = min(min_det, piece.map.det)
            max_distortion = max(max_distortion, distortion(piece.map))
            for source_point in piece.source.vertices:
                expected = vertex_images[source_point]
                scale = max(1.0, expected.norm())
                max_mismatch = max(
                    max_mismatch, distance(piece.map(source_point), expected) / scale
                )
    for piece in mesh.closure:
        min_det = min(min_det, piece.map.det)
        max_distortion = max(max_distortion, distortion(piece.map))
    source_area = math.fsum(cell.source_area for cell in mesh.cells)
    image_area = math.fsum(piece.image.area for piece in mesh.pieces())
    rng = np.random.default_rng(seed)
    report = HomeomorphismReport(
        min_det=min_det,
        min_orientation=min_orientation,
        max_edge_mismatch=max_mismatch,
        max_distortion=max_distortion,
        source_residual=1.0 - (source_area + mesh.strip_area()),
        image_residual=1.0 - image_area,
        overlaps=_sample_overlaps(mesh, pairs, rng),
        pairs_tested=pairs,
        legs=leg_traces(mesh),
    )
    LOGGER.info(
        f"Homeomorphism check depth {mesh.depth}: min det {report.min_det}, "
        f"mismatch {report.max_edge_mismatch}, overlaps {report.overlaps}"
    )
    return report


def _xy(point):
    return [point.x, point.y]


def mesh_to_dict(mesh):
    """JSON ready description of every cell: points, images and 2x3 map coefficients."""
    cells = []
    for cell in mesh.cells:
        cells.append(
            {
                "j": cell.j,
                "k": cell.k,
                "is_last": cell.is_last,
                "source": {name: _xy(p) for name, p in cell.points.items()},
                "image": {name: _xy(p) for name, p in cell.image_points.items()},
                "maps": [piece.map.coefficients() for piece in cell.pieces],
            }
        )
    return {
        "depth": mesh.depth,
        "boundary": mesh.phi.to_spec(),
        "cells": cells,
        "closure": [
            {
                "source": [_xy(p) for p in piece.source.vertices],
                "image": [_xy(p) for p in piece.image.vertices],
                "map": piece.map.coefficients(),
            }
            for piece in mesh.closure
        ],
    }
