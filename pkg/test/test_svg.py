# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

import defusedxml.ElementTree as DET
import pytest

from sobolev_extender.boundary import CantorMap, CircleMap, IdentityMap
from sobolev_extender.disk import assemble_disk_extension
from sobolev_extender.extension import build_extension
from sobolev_extender.svg import (
    SVGWriter,
    disk_polygons,
    mesh_polygons,
    write_curve_svg,
    write_disk_svg,
    write_mesh_svg,
)

NS = {"svg": "http://www.w3.org/2000/svg"}


def _polygons(filename):
    root = DET.parse(filename).getroot()
    return [element.get("points") for element in root.iterfind(".//svg:polygon", NS)]


class TestWriter:
    def test_flipped_group(self, tmp_path):
        writer = SVGWriter()
        writer.add_polygons([[(0, 0), (1, 0), (0, 1)]], name="unit")
        target = tmp_path / "unit.svg"
        writer.write(str(target))
        root = DET.parse(str(target)).getroot()
        assert root.get("viewBox") == "-0.05 -1.05 1.1 1.1"
        flip = root.find("svg:g", NS)
        assert flip.get("transform") == "scale(1,-1)"
        assert flip.find("svg:g", NS).get("id") == "unit"
        assert _polygons(str(target)) == ["0,0 1,0 0,1"]

    def test_numbers_have_nine_digits(self, tmp_path):
        writer = SVGWriter()
        writer.add_polygons([[(0, 0), (1 / 3, 0), (0, 2 / 3)]])
        target = tmp_path / "thirds.svg"
        writer.write(str(target))
        assert _polygons(str(target)) == ["0,0 0.333333333,0 0,0.666666667"]


class TestMeshSvg:
    def test_one_polygon_per_piece(self, tmp_path):
        mesh = build_extension(CantorMap(0.3), 3)
        target = tmp_path / "image.svg"
        write_mesh_svg(mesh, str(target), image=True)
        assert len(_polygons(str(target))) == len(list(mesh.pieces()))
        assert len(mesh_polygons(mesh)) == len(list(mesh.pieces()))

    def test_identity_source_and_image_agree(self, tmp_path):
        mesh = build_extension(IdentityMap(), 3)
        write_mesh_svg(mesh, str(tmp_path / "source.svg"))
        write_mesh_svg(mesh, str(tmp_path / "image.svg"), image=True)
        assert _polygons(str(tmp_path / "source.svg")) == _polygons(
            str(tmp_path / "image.svg")
        )

    def test_curve(self, tmp_path):
        target = tmp_path / "curve.svg"
        write_curve_svg([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]], str(target))
        assert _polygons(str(target)) == ["0,0 1,0 1,1 0,1"]


class TestDiskSvg:
    @pytest.fixture(scope="class")
    def extension(self):
        return assemble_disk_extension(
            CircleMap.from_arcs([IdentityMap()] * 4), 2, grid=4, pairs=20
        )

    def test_polygon_count(self, extension, tmp_path):
        pieces = sum(len(list(mesh.pieces())) for mesh in extension.meshes)
        target = tmp_path / "disk.svg"
        write_disk_svg(extension, str(target), grid=4, image=True)
        assert len(_polygons(str(target))) == pieces + 16

    def test_identity_image_matches_source(self, extension):
        source = disk_polygons(extension, grid=4)
        image = disk_polygons(extension, grid=4, image=True)
        for first, second in zip(source, image):
            for a, b in zip(first, second):
                assert a == pytest.approx(b, abs=1e-9)
