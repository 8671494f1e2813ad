# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

""" Set up SVG rendering of meshes and curves """

import xml.etree.ElementTree as ET

from sobolev_extender.disk import CORNERS
from sobolev_extender.log import LOGGER

SVG_NAMESPACE = "http://www.w3.org/2000/svg"
# Margin around the drawing, relative to its larger extent
MARGIN = 0.05


def _number(value):
    return f"{value:.9g}"


def _points(vertices):
    return " ".join(f"{_number(x)},{_number(y)}" for x, y in vertices)


class SVGWriter:
    """
    Collects polygons in mathematical coordinates and writes them in one
    y-flipped group, so the geometry itself is never altered.
    """

    def __init__(self, stroke_width=0.002):
        self.stroke_width = stroke_width
        self.layers = []
        self.logger = LOGGER.getChild(self.__class__.__name__)

    def add_polygons(self, polygons, stroke="black", fill="none", name=None):
        polygons = [[(float(x), float(y)) for x, y in polygon] for polygon in polygons]
        self.layers.append((name, stroke, fill, polygons))

    def _bounds(self):
        xs = [x for _, _, _, polygons in self.layers for p in polygons for x, _ in p]
        ys = [y for _, _, _, polygons in self.layers for p in polygons for _, y in p]
        if not xs:
            return 0.0, 0.0, 1.0, 1.0
        return min(xs), min(ys), max(xs), max(ys)

    def to_element(self):
        min_x, min_y, max_x, max_y = self._bounds()
        extent = max(max_x - min_x, max_y - min_y, 1e-12)
        margin = MARGIN * extent
        # View box in flipped coordinates: y runs from -max_y to -min_y
        view_box = [
            min_x - margin,
            -max_y - margin,
            max_x - min_x + 2 * margin,
            max_y - min_y + 2 * margin,
        ]
        svg = ET.Element("svg")
        svg.set("xmlns", SVG_NAMESPACE)
        svg.set("viewBox", " ".join(_number(v) for v in view_box))
        svg.set("width", "800")
        svg.set("height", _number(800 * view_box[3] / view_box[2]))
        flip = ET.SubElement(svg, "g")
        flip.set("transform", "scale(1,-1)")
        for name, stroke, fill, polygons in self.layers:
            group = ET.SubElement(flip, "g")
            if name is not None:
                group.set("id", name)
            group.set("stroke", stroke)
            group.set("fill", fill)
            group.set("stroke-width", _number(self.stroke_width * extent))
            for polygon in polygons:
                element = ET.SubElement(group, "polygon")
                element.set("points", _points(polygon))
        return svg

    def write(self, filename):
        tree = ET.ElementTree(self.to_element())
        tree.write(filename, encoding="utf-8", xml_declaration=True)
        LOGGER.debug(f"Wrote {filename}")


def mesh_polygons(mesh, image=False):
    """Triangles of every piece of the mesh, source or image side."""
    polygons = []
    for piece in mesh.pieces():
        triangle = piece.image if image else piece.source
        polygons.append([(v.x, v.y) for v in triangle.vertices])
    return polygons


def write_mesh_svg(mesh, filename, image=False):
    writer = SVGWriter()
    writer.add_polygons(
        mesh_polygons(mesh, image), name="image" if image else "source"
    )
    writer.write(filename)


def write_curve_svg(vertices, filename):
    """Closed curve through the given vertices."""
    writer = SVGWriter(stroke_width=0.001)
    writer.add_polygons([vertices], name="curve")
    writer.write(filename)


def disk_polygons(extension, grid=16, image=False):
    """Charted segment triangles and a grid of the central square, source or image."""
    polygons = []
    for index, mesh in enumerate(extension.meshes):
        for piece in mesh.pieces():
            if image:
                chart = extension.image_charts[index]
                points = [
                    extension._conjugate(chart.forward(v)) for v in piece.image.vertices
                ]
            else:
                chart = extension.source_charts[index]
                points = [chart.forward(v) for v in piece.source.vertices]
            polygons.append([(v.x, v.y) for v in points])
    corner, side, down = CORNERS[0], CORNERS[1] - CORNERS[0], CORNERS[3] - CORNERS[0]
    steps = [i / grid for i in range(grid + 1)]
    for s0, s1 in zip(steps[:-1], steps[1:]):
        for t0, t1 in zip(steps[:-1], steps[1:]):
            square = [(s0, t0), (s1, t0), (s1, t1), (s0, t1)]
            if image:
                points = [extension.central(s, t) for s, t in square]
            else:
                points = [corner + side * s + down * t for s, t in square]
            polygons.append([(v.x, v.y) for v in points])
    return polygons


def write_disk_svg(extension, filename, grid=16, image=False):
    writer = SVGWriter(stroke_width=0.001)
    writer.add_polygons(
        disk_polygons(extension, grid, image), name="image" if image else "source"
    )
    writer.write(filename)
