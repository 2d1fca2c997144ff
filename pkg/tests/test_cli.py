import json

import numpy as np
import pytest

from symflow.cli import main


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return str(p)


def loop_scenario(count=17):
    return {
        "kind": "maslov",
        "space": {"dim": 2, "J": [[[0, 1], [0, 0]], [[0, 0], [0, -1]]]},
        "splitting": "auto",
        "lambda": {
            "kind": "rotation",
            "base": [[1, 0], [0, 0]],
            "partner": [[0, 0], [1, 0]],
            "theta": list(np.linspace(0.0, 2.0 * np.pi, count)),
        },
        "mu": {"kind": "fixed", "frame": [[[1, 0], [1, 0]]]},
        "samples": count,
    }


class TestMaslovCommand:
    def test_loop_prints_plus_one(self, tmp_path, capsys):
        path = write(tmp_path, "loop.json", loop_scenario())
        assert main(["maslov", "compute", path]) == 0
        out = capsys.readouterr().out
        assert "Mas = 1" in out

    def test_writes_reports(self, tmp_path):
        path = write(tmp_path, "loop.json", loop_scenario())
        out_dir = tmp_path / "out"
        assert main(["maslov", path, "--out", str(out_dir)]) == 0
        report = json.loads((out_dir / "report.json").read_text())
        assert report["value"] == 1 and report["via_uv"] == 1
        csv = (out_dir / "crossings.csv").read_text().strip().splitlines()
        assert csv[0].startswith("s,") and csv[0].endswith("rank_P_Nminus,segment_id")
        # CSV row count equals the final refined sample count
        assert len(csv) - 1 == len(report["flow"]["nu_trace"])

    def test_determinism_byte_identical(self, tmp_path):
        path = write(tmp_path, "loop.json", loop_scenario())
        d1, d2 = tmp_path / "a", tmp_path / "b"
        assert main(["maslov", path, "--out", str(d1)]) == 0
        assert main(["maslov", path, "--out", str(d2)]) == 0
        assert (d1 / "crossings.csv").read_bytes() == (d2 / "crossings.csv").read_bytes()
        assert (d1 / "report.json").read_bytes() == (d2 / "report.json").read_bytes()

    def test_hypothesis_failure_exit_code(self, tmp_path):
        doc = loop_scenario()
        doc["mu"] = {"kind": "fixed", "frame": [[[1, 0], [0, 0]]]}  # not Lagrangian
        path = write(tmp_path, "bad.json", doc)
        assert main(["maslov", path]) == 3

    def test_refinement_failure_exit_code(self, tmp_path):
        path = write(tmp_path, "loop.json", loop_scenario())
        assert main(["maslov", path, "--refine-max", "0"]) == 4


class TestParseErrors:
    def test_malformed_json(self, tmp_path, capsys):
        p = tmp_path / "bad.json"
        p.write_text("{broken", encoding="utf-8")
        assert main(["maslov", str(p)]) == 2
        err = capsys.readouterr().err
        assert "line" in err and "column" in err

    def test_schema_violation(self, tmp_path):
        path = write(tmp_path, "bad.json", {"kind": "maslov", "space": {"dim": 2}})
        assert main(["maslov", path]) == 2

    def test_missing_file(self):
        assert main(["maslov", "/nonexistent/path.json"]) == 2


class TestGapCommand:
    def test_equal_frames(self, tmp_path, capsys):
        doc = {"kind": "gap",
               "pairs": [{"M": [[[1, 0], [0, 0]]], "N": [[[1, 0], [0, 0]]]}]}
        assert main(["gap", "compute", write(tmp_path, "pair.json", doc)]) == 0
        assert "gap = 0.000000" in capsys.readouterr().out

    def test_line_pair_value(self, tmp_path, capsys):
        doc = {"kind": "gap",
               "pairs": [{"M": [[[1, 0], [0, 0]]], "N": [[[1, 0], [1, 0]]]}]}
        assert main(["gap", write(tmp_path, "pair.json", doc)]) == 0
        assert "gap = 0.707107" in capsys.readouterr().out


class TestSfCommand:
    def test_loop(self, tmp_path, capsys):
        ss = list(np.linspace(0, 1, 17))
        doc = {
            "kind": "sf",
            "ell": {"kind": "positive-real-axis", "coorientation": "up"},
            "family": {
                "kind": "matrices",
                "samples": ss,
                "values": [[[[np.cos(2 * np.pi * s), np.sin(2 * np.pi * s)]]] for s in ss],
            },
        }
        assert main(["sf", write(tmp_path, "sf.json", doc)]) == 0
        assert "SF = 1" in capsys.readouterr().out

    def test_pencil_family(self, tmp_path, capsys):
        ss = list(np.linspace(0, 1, 17))
        eye = [[[1, 0]]]
        doc = {
            "kind": "sf",
            "family": {
                "kind": "pencils",
                "samples": ss,
                "E": [eye for _ in ss],
                "F": [[[[np.cos(2 * np.pi * s), np.sin(2 * np.pi * s)]]] for s in ss],
            },
        }
        assert main(["sf", write(tmp_path, "sfp.json", doc)]) == 0
        assert "SF = 1" in capsys.readouterr().out


class TestRelationsCommand:
    def test_spectrum_and_projection(self, tmp_path, capsys):
        doc = {
            "kind": "relations",
            "E": [[[1, 0], [0, 0]], [[0, 0], [0, 0]]],
            "F": [[[2, 0], [0, 0]], [[0, 0], [1, 0]]],
            "window": {"kind": "disk", "center": [2, 0], "radius": 0.5},
        }
        assert main(["relations", write(tmp_path, "rel.json", doc)]) == 0
        out = capsys.readouterr().out
        assert "infinite multiplicity 1" in out
        assert "projection rank = 1" in out


class TestCheckCommand:
    def test_full_suite_on_loop(self, tmp_path, capsys):
        path = write(tmp_path, "loop.json", loop_scenario())
        assert main(["check", path]) == 0
        out = capsys.readouterr().out
        assert "boxplus triple equality: pass" in out
        assert "flipping identity: pass" in out

    def test_dump_normalized_roundtrip(self, tmp_path, capsys):
        path = write(tmp_path, "loop.json", loop_scenario())
        norm = tmp_path / "norm.json"
        assert main(["check", path, "--dump-normalized", str(norm)]) == 0
        capsys.readouterr()
        assert main(["maslov", str(norm)]) == 0
        assert "Mas = 1" in capsys.readouterr().out

    def test_sf_check(self, tmp_path, capsys):
        ss = list(np.linspace(0, 1, 17))
        doc = {
            "kind": "sf",
            "family": {
                "kind": "matrices",
                "samples": ss,
                "values": [[[[np.cos(2 * np.pi * s), np.sin(2 * np.pi * s)]]] for s in ss],
            },
        }
        assert main(["check", write(tmp_path, "sf.json", doc)]) == 0
        out = capsys.readouterr().out
        assert "path additivity: pass" in out
        assert "co-orientation reversal negates: pass" in out
