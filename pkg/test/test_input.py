# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

import json
import math

import pytest

from sobolev_extender.boundary import (
    CantorMap,
    CircleMap,
    CompositeMap,
    IdentityMap,
    PiecewiseLinearMap,
    PowerMap,
)
from sobolev_extender.errors import ConfigError, InvalidParameter
from sobolev_extender.input import BoundaryInput


@pytest.fixture
def boundary_input():
    return BoundaryInput()


class TestSpecs:
    @pytest.mark.parametrize(
        "spec, kind",
        [
            ({"type": "identity"}, IdentityMap),
            ({"type": "cantor", "params": {"theta": 0.25}}, CantorMap),
            ({"type": "power", "params": {"gamma": "1.5"}}, PowerMap),
            (
                {
                    "type": "pwl",
                    "params": {"knots": [-1, 0, 1], "values": [-1, 0.2, 1]},
                },
                PiecewiseLinearMap,
            ),
            (
                {
                    "type": "compose",
                    "params": {
                        "maps": [
                            {"type": "identity"},
                            {"type": "power", "params": {"gamma": 2}},
                        ]
                    },
                },
                CompositeMap,
            ),
        ],
    )
    def test_map_types(self, boundary_input, spec, kind):
        assert isinstance(boundary_input.process_spec(spec), kind)

    def test_spec_round_trip(self, boundary_input):
        spec = '{"type": "cantor", "params": {"theta": 0.4}}'
        phi = boundary_input.process_spec(spec)
        assert boundary_input.process_spec(phi.to_spec()).theta == 0.4

    @pytest.mark.parametrize(
        "spec",
        [
            "not json",
            {"params": {}},
            {"type": "spline"},
            {"type": "cantor", "params": {}},
            {"type": "power", "params": {"gamma": "steep"}},
            {"type": "cantor", "params": 3},
            {"type": "cantor", "params": ["theta"]},
            {"type": "pwl", "params": "knots"},
            {"type": "compose", "params": 1.5},
        ],
    )
    def test_bad_specs(self, boundary_input, spec):
        with pytest.raises(ConfigError):
            boundary_input.process_spec(spec)

    def test_invalid_values_are_parameter_errors(self, boundary_input):
        with pytest.raises(InvalidParameter):
            boundary_input.process_spec({"type": "cantor", "params": {"theta": 2.0}})


class TestCircleSpecs:
    def test_rotation(self, boundary_input):
        circle = boundary_input.process_circle_spec(
            {"type": "rotation", "params": {"angle": 0.5}}
        )
        assert isinstance(circle, CircleMap)
        assert circle.eval(0.0) == pytest.approx(0.5)

    def test_bare_monotone_spec_on_every_arc(self, boundary_input):
        circle = boundary_input.process_circle_spec(
            {"type": "cantor", "params": {"theta": 0.3}}
        )
        assert len(circle.segments) == 4
        assert circle.eval(math.pi) == pytest.approx(math.pi)

    def test_arcs_with_image_breaks(self, boundary_input):
        breaks = [0.0, 1.0, 3.0, 4.0, 2 * math.pi]
        circle = boundary_input.process_circle_spec(
            {
                "type": "arcs",
                "params": {"maps": [{"type": "identity"}] * 4, "image_breaks": breaks},
            }
        )
        assert circle.eval(math.pi / 2) == pytest.approx(1.0)

    @pytest.mark.parametrize("params", [3, "angle", [0.5]])
    def test_non_object_params(self, boundary_input, params):
        with pytest.raises(ConfigError):
            boundary_input.process_circle_spec({"type": "rotation", "params": params})


class TestFiles:
    def test_json_file(self, boundary_input, tmp_path):
        spec_file = tmp_path / "phi.json"
        spec_file.write_text(json.dumps({"type": "power", "params": {"gamma": 2.0}}))
        assert boundary_input.process_file(str(spec_file)).gamma == 2.0

    def test_csv_file(self, boundary_input, tmp_path):
        table = tmp_path / "phi.csv"
        table.write_text("# knot,value\n-1,-1\n0,0.25\n\n1,1\n")
        phi = boundary_input.process_file(str(table))
        assert phi.eval(0.0) == pytest.approx(0.25)

    def test_missing_file(self, boundary_input, tmp_path):
        with pytest.raises(ConfigError):
            boundary_input.process_file(str(tmp_path / "missing.json"))

    def test_unsupported_extension(self, boundary_input, tmp_path):
        other = tmp_path / "phi.txt"
        other.write_text("identity")
        with pytest.raises(ConfigError):
            boundary_input.process_file(str(other))
