"""CLI dispatch, exit codes, determinism of emitted artifacts."""

import json
from pathlib import Path

import pytest

from normform.cli import main


def write_cfg(tmp_path: Path, name: str, obj: dict) -> str:
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


FIELD3 = {"f": [-2, 0, 0, 1], "k": 1}


def run(argv) -> int:
    return main(argv)


class TestExitCodes:
    def test_missing_config_file(self, tmp_path, capsys):
        assert run(["theorem", "--config", str(tmp_path / "nope.json"),
                    "--out", str(tmp_path)]) == 2

    def test_invalid_json(self, tmp_path):
        p = tmp_path / "bad.json"
        p.write_text("{not json")
        assert run(["theorem", "--config", str(p), "--out", str(tmp_path)]) == 2

    def test_unknown_keys_rejected(self, tmp_path):
        cfg = write_cfg(tmp_path, "c.json",
                        {"field": FIELD3, "X": 10, "bogus_key": 1})
        assert run(["theorem", "--config", cfg, "--out", str(tmp_path)]) == 2

    def test_budget_exceeded(self, tmp_path):
        cfg = write_cfg(tmp_path, "c.json", {"field": FIELD3, "X": 99999})
        assert run(["theorem", "--config", cfg, "--out", str(tmp_path),
                    "--budget", "1000"]) == 3

    def test_selftest(self):
        assert run(["lattice", "--selftest"]) == 0


class TestSubcommands:
    def test_theorem_artifacts(self, tmp_path, capsys):
        cfg = write_cfg(tmp_path, "c.json",
                        {"field": FIELD3, "X": 15, "p_cut": 300, "seed": 2})
        out = tmp_path / "out"
        assert run(["theorem", "--config", cfg, "--out", str(out)]) == 0
        data = json.loads((out / "theorem.json").read_text())
        assert data["observed"] > 0 and data["version"]
        assert "runtime_s" not in data  # volatile data stays off disk
        stdout = json.loads(capsys.readouterr().out)
        assert "runtime_s" in stdout
        assert (out / "theorem.csv").read_text().startswith("slab,")

    def test_sseries(self, tmp_path):
        cfg = write_cfg(tmp_path, "c.json", {"field": FIELD3, "p_cut": 200})
        out = tmp_path / "out"
        assert run(["sseries", "--config", cfg, "--out", str(out)]) == 0
        data = json.loads((out / "sseries.json").read_text())
        assert data["value"] > 0 and data["tail_bound"] > 0

    def test_lattice(self, tmp_path):
        cfg = write_cfg(tmp_path, "c.json",
                        {"field": {"f": [-2, 0, 0, 0, 1], "k": 1},
                         "v": [3, -2, 5, 1]})
        out = tmp_path / "out"
        assert run(["lattice", "--config", cfg, "--out", str(out)]) == 0
        data = json.loads((out / "lattice.json").read_text())
        assert data["agree"] is True

    def test_census(self, tmp_path):
        cfg = write_cfg(tmp_path, "c.json",
                        {"field": {"f": [-2, 0, 0, 0, 0, 0, 0, 1], "k": 2},
                         "census": "fp_wedge", "primes": [3, 5]})
        out = tmp_path / "out"
        assert run(["census", "--config", cfg, "--out", str(out)]) == 0
        data = json.loads((out / "census.json").read_text())
        assert [r["count"] for r in data["rows"]] == [3, 5]

    def test_typei(self, tmp_path):
        cfg = write_cfg(tmp_path, "c.json",
                        {"field": FIELD3, "X": 30, "d_lo": 16, "d_hi": 32})
        out = tmp_path / "out"
        assert run(["typei", "--config", cfg, "--out", str(out)]) == 0

    def test_integral(self, tmp_path):
        cfg = write_cfg(tmp_path, "c.json",
                        {"intervals": [[2.5, 3.5]], "target_sum": 3.0})
        out = tmp_path / "out"
        assert run(["integral", "--config", cfg, "--out", str(out)]) == 0
        data = json.loads((out / "integral.json").read_text())
        assert abs(data["value"] - 1 / 3) < 1e-12

    def test_buchstab(self, tmp_path):
        cfg = write_cfg(tmp_path, "c.json",
                        {"range": [100, 200], "z1": 5, "z2": 13})
        out = tmp_path / "out"
        assert run(["buchstab", "--config", cfg, "--out", str(out)]) == 0
        data = json.loads((out / "buchstab.json").read_text())
        assert data["residual"] == 0

    def test_norms(self, tmp_path):
        cfg = write_cfg(tmp_path, "c.json", {"field": FIELD3, "X": 4})
        out = tmp_path / "out"
        assert run(["norms", "--config", cfg, "--out", str(out)]) == 0
        csv_text = (out / "norms.csv").read_text()
        assert csv_text.splitlines()[0] == "x1,x2,norm"


class TestDeterminism:
    @pytest.mark.parametrize("command,cfg", [
        ("theorem", {"field": FIELD3, "X": 20, "p_cut": 300, "seed": 7}),
        ("sseries", {"field": FIELD3, "p_cut": 200}),
        ("census", {"field": {"f": [-2, 0, 0, 0, 0, 0, 0, 1], "k": 2},
                    "census": "skew", "B": 10, "samples": 50,
                    "kappas": [0.5], "seed": 3}),
        ("typei", {"field": FIELD3, "X": 25, "d_lo": 16, "d_hi": 32}),
        ("integral", {"intervals": [[0.4, 0.5], [0.3, 0.7]],
                      "target_sum": 1.0}),
        ("buchstab", {"range": [50, 150], "z1": 3, "z2": 11}),
        ("norms", {"field": FIELD3, "X": 4}),
        ("lattice", {"field": {"f": [-2, 0, 0, 0, 1], "k": 1},
                     "v": [1, 2, 3, 4]}),
    ])
    def test_byte_identical_reruns(self, tmp_path, command, cfg):
        cpath = write_cfg(tmp_path, "c.json", cfg)
        outs = []
        for tag in ("a", "b"):
            out = tmp_path / tag
            assert run([command, "--config", cpath, "--out", str(out),
                        "--seed", "7", "--threads", "1"]) == 0
            blobs = {p.name: p.read_bytes() for p in sorted(out.iterdir())}
            outs.append(blobs)
        assert outs[0] == outs[1]
