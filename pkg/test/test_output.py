# Copyright (C) 2026 sobolev-extender contributors
# SPDX-License-Identifier: MIT

import hashlib
import json

import numpy as np
import pytest

from sobolev_extender.output import (
    ReportOutput,
    dump_json,
    format_number,
    write_json,
)
from sobolev_extender.store import MANIFEST, ArtifactStore


class TestFormatting:
    @pytest.mark.parametrize(
        "value, text",
        [(0.1, "0.1"), (1 / 3, "0.3333333333333333"), (7, "7"), (True, "true")],
    )
    def test_format_number(self, value, text):
        assert format_number(value) == text

    def test_numbers_read_back_exactly(self):
        value = 2.0 / 3.0
        assert float(format_number(value)) == value

    def test_dump_json_is_sorted_and_plain(self):
        text = dump_json({"b": np.float64(0.5), "a": (np.int64(1), 2)})
        assert text.index('"a"') < text.index('"b"')
        assert json.loads(text) == {"a": [1, 2], "b": 0.5}

    def test_write_json(self, tmp_path):
        target = tmp_path / "data.json"
        write_json({"x": [1.5]}, str(target))
        assert target.read_text().endswith("\n")
        assert json.loads(target.read_text()) == {"x": [1.5]}


class TestReportOutput:
    def test_csv(self, tmp_path):
        target = tmp_path / "table.csv"
        report = ReportOutput(str(target))
        report.set_headings(["j", "value"])
        report.generate_output([[0, 0.25], [1, 1 / 3]])
        assert target.read_text().splitlines() == [
            "j,value",
            "0,0.25",
            "1,0.3333333333333333",
        ]

    def test_console(self, capsys):
        report = ReportOutput()
        report.generate_output([[1, 2.5]])
        assert capsys.readouterr().out == "1,2.5\n"


class TestArtifactStore:
    def test_creates_location(self, tmp_path):
        location = tmp_path / "runs" / "one"
        store = ArtifactStore(str(location))
        assert location.is_dir()
        assert store.get_file("missing.json") is None

    def test_manifest(self, tmp_path):
        store = ArtifactStore(str(tmp_path))
        write_json({"value": 1}, store.path("result.json"))
        store.path("never_written.csv")
        store.write_manifest({"command": "energy"}, 0)
        manifest = json.loads((tmp_path / MANIFEST).read_text())
        expected = hashlib.sha256((tmp_path / "result.json").read_bytes()).hexdigest()
        assert manifest["artifacts"] == [{"file": "result.json", "sha256": expected}]
        assert manifest["config"] == {"command": "energy"}
        assert manifest["status"] == 0

    def test_path_registers_once(self, tmp_path):
        store = ArtifactStore(str(tmp_path))
        store.path("a.json")
        store.path("a.json")
        assert store.artifacts == ["a.json"]
