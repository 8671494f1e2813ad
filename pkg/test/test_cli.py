# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

import json

import defusedxml.ElementTree as DET
import pytest

from sobolev_extender import cli
from sobolev_extender.cli import main

NS = {"svg": "http://www.w3.org/2000/svg"}
CANTOR = '{"type": "cantor", "params": {"theta": 0.25}}'


def run(*args):
    return main(["sobolev-extender", *args])


def read_json(path):
    return json.loads(path.read_text())


def polygons(path):
    root = DET.parse(str(path)).getroot()
    return [element.get("points") for element in root.iterfind(".//svg:polygon", NS)]


class TestEnergy:
    def test_identity_energy(self, tmp_path):
        status = run(
            "energy", "-d", "4", "--p", "1", "--beta", "0.5", "-o", str(tmp_path)
        )
        assert status == 0
        energy = read_json(tmp_path / "energy.json")
        assert energy["total"] == pytest.approx(8 / 3, rel=1e-12)
        lines = (tmp_path / "energy.csv").read_text().splitlines()
        assert lines[0] == "j,cells,exact_sum,bound_term"
        assert len(lines) == 6
        manifest = read_json(tmp_path / "manifest.json")
        files = [artifact["file"] for artifact in manifest["artifacts"]]
        assert files == ["energy.csv", "energy.json"]
        assert manifest["status"] == 0
        assert manifest["config"]["depth"] == 4

    def test_runs_are_byte_identical(self, tmp_path):
        args = ("energy", "-b", CANTOR, "-d", "5", "--p", "1.5", "--beta", "0.3")
        names = ("energy.json", "energy.csv", "manifest.json")
        assert run(*args, "-o", str(tmp_path)) == 0
        first = {name: (tmp_path / name).read_bytes() for name in names}
        assert run(*args, "-o", str(tmp_path)) == 0
        assert first == {name: (tmp_path / name).read_bytes() for name in names}

    def test_invalid_parameter(self, tmp_path):
        status = run("energy", "--p", "3", "-o", str(tmp_path))
        assert status == 2
        error = read_json(tmp_path / "error.json")
        assert error["error"] == "invalid_parameter"
        assert read_json(tmp_path / "manifest.json")["status"] == 2

    def test_non_object_params(self, tmp_path):
        spec = '{"type": "cantor", "params": 3}'
        status = run("energy", "-b", spec, "-d", "3", "-o", str(tmp_path))
        assert status == 2
        assert read_json(tmp_path / "error.json")["error"] == "config_error"


class TestExtend:
    def test_identity_images_match(self, tmp_path):
        assert run("extend", "-d", "3", "-o", str(tmp_path)) == 0
        assert read_json(tmp_path / "mesh.json")["report"]["passed"]
        assert polygons(tmp_path / "source.svg") == polygons(tmp_path / "image.svg")

    def test_boundary_file(self, tmp_path):
        table = tmp_path / "phi.csv"
        table.write_text("-1,-1\n0,0.4\n1,1\n")
        out = tmp_path / "out"
        assert run("extend", "-b", str(table), "-d", "3", "-o", str(out)) == 0
        mesh = read_json(out / "mesh.json")
        assert mesh["boundary"]["type"] == "pwl"
        assert len(mesh["cells"]) == 15

    def test_disk(self, tmp_path):
        rotation = '{"type": "rotation", "params": {"angle": 0.3}}'
        status = run(
            "extend", "--domain", "disk", "-b", rotation, "-d", "2", "-o", str(tmp_path)
        )
        assert status == 0
        assert read_json(tmp_path / "disk.json")["passed"]
        assert (tmp_path / "image.svg").exists()


class TestSnowflake:
    def test_koch(self, tmp_path):
        status = run(
            "snowflake", "--p", "0.3333333333333333", "-g", "3", "--samples", "100",
            "-o", str(tmp_path),
        )
        assert status == 0
        summary = read_json(tmp_path / "snowflake.json")["summary"]
        assert summary["segments"] == 256
        assert summary["self_intersections"] == 0
        assert summary["perimeter"] == pytest.approx(4 * (4 / 3) ** 3)
        rows = (tmp_path / "holder_qs.csv").read_text().splitlines()
        assert len(rows) == 4
        assert len((tmp_path / "samples.csv").read_text().splitlines()) == 101
        assert len(polygons(tmp_path / "curve.svg")) == 1

    def test_invalid_snowflake_parameter(self, tmp_path):
        assert run("snowflake", "--p", "0.6", "-o", str(tmp_path)) == 2
        assert read_json(tmp_path / "error.json")["error"] == "invalid_parameter"


class TestBound:
    def test_config_file(self, tmp_path):
        ini = tmp_path / "bound.ini"
        ini.write_text(
            "[run]\ncommand = bound\ndepth = 5\nout = "
            + str(tmp_path / "out")
            + "\n[boundary]\nspec = "
            + CANTOR
            + "\n[energy]\np = 1.5\nbeta = 0.25\nconstant = 2.0\n"
        )
        assert run("-C", str(ini)) == 0
        bound = read_json(tmp_path / "out" / "bound.json")
        assert bound["violations"] == 0
        composition = bound["composition"]
        assert composition["bound"] == pytest.approx(2.0**1.5 * composition["energy"])
        assert (tmp_path / "out" / "series.csv").exists()

    def test_no_composition_for_small_alpha(self, tmp_path):
        status = run(
            "bound", "--p", "1.2", "--beta", "0.6", "-d", "4", "-o", str(tmp_path)
        )
        assert status == 0
        assert "composition" not in read_json(tmp_path / "bound.json")

    def test_missing_config(self, tmp_path):
        assert run("-C", str(tmp_path / "absent.ini"), "-o", str(tmp_path)) == 2
        assert read_json(tmp_path / "error.json")["error"] == "config_error"


class TestVerify:
    def test_small_run(self, tmp_path):
        status = run(
            "verify", "-d", "3", "-g", "3", "--samples", "100", "-s", "1",
            "-o", str(tmp_path),
        )
        assert status == 0
        assert read_json(tmp_path / "verify.json")["passed"]

    def test_failed_suite(self, tmp_path, monkeypatch):
        failing = {"tiling": {"passed": False}}
        monkeypatch.setattr(cli, "run_suites", lambda config: failing)
        assert run("verify", "-o", str(tmp_path)) == 3
        assert read_json(tmp_path / "error.json")["error"] == "property_suite_failed"
        assert read_json(tmp_path / "verify.json")["passed"] is False


class TestArguments:
    def test_version(self, capsys):
        with pytest.raises(SystemExit):
            run("-V")
        assert capsys.readouterr().out.strip() == "0.1.0"

    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            run("draw")
