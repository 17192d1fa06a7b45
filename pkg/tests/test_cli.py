"""End-to-end CLI behavior and exit codes."""

import json

import pytest

from cliquechrom.cli import main


def run(args):
    return main([str(a) for a in args])


class TestGenAndChromatic:
    def test_gen_then_exact(self, tmp_path, capsys):
        graph = tmp_path / "g.edges"
        assert run(["gen", "--n", 8, "--p", 0.4, "--seed", 3, "--out", graph]) == 0
        assert run(["chromatic", "--graph", graph]) == 0
        value = int(capsys.readouterr().out.strip().splitlines()[-1])
        assert value >= 1

    def test_chromatic_budget_exit_code(self, tmp_path):
        graph = tmp_path / "g.edges"
        run(["gen", "--n", 12, "--p", 0.5, "--seed", 1, "--out", graph])
        assert run(["chromatic", "--graph", graph, "--budget", 3]) == 2

    def test_invalid_input_exit_code(self, tmp_path):
        bad = tmp_path / "bad.edges"
        bad.write_text("2 1\n1 1\n")
        assert run(["chromatic", "--graph", bad]) == 1


class TestValidate:
    def test_valid_and_invalid(self, tmp_path):
        graph = tmp_path / "g.edges"
        graph.write_text("3 3\n1 2\n1 3\n2 3\n")
        good = tmp_path / "good.colors"
        good.write_text("1 1\n2 1\n3 2\n")
        bad = tmp_path / "bad.colors"
        bad.write_text("1 1\n2 1\n3 1\n")
        assert run(["validate", "--graph", graph, "--coloring", good]) == 0
        assert run(["validate", "--graph", graph, "--coloring", bad]) == 1


class TestColor:
    @pytest.mark.parametrize("variant", ["A", "B"])
    def test_color_report_and_file(self, tmp_path, variant):
        out = tmp_path / "c.colors"
        report = tmp_path / "r.json"
        code = run(
            ["color", "--n", 150, "--p", 0.25, "--seed", 2, "--variant", variant,
             "--out", out, "--report", report]
        )
        assert code == 0
        doc = json.loads(report.read_text())
        assert doc["valid"] is True
        assert doc["palette_final"] <= doc["s"] + doc["z"] + 1 or variant == "B"
        assert len(out.read_text().splitlines()) == 150

    def test_colored_output_validates(self, tmp_path):
        graph = tmp_path / "g.edges"
        run(["gen", "--n", 120, "--p", 0.3, "--seed", 9, "--out", graph])
        colors = tmp_path / "c.colors"
        assert run(
            ["color", "--graph", graph, "--assume-p", 0.3, "--out", colors]
        ) == 0
        assert run(["validate", "--graph", graph, "--coloring", colors]) == 0


class TestCertify:
    def test_certificate_on_coarse_coloring(self, tmp_path):
        graph = tmp_path / "g.edges"
        run(["gen", "--n", 200, "--p", 0.3, "--seed", 4, "--out", graph])
        colors = tmp_path / "c.colors"
        colors.write_text("".join(f"{v} {1 + v % 2}\n" for v in range(1, 201)))
        report = tmp_path / "cert.json"
        code = run(
            ["certify", "--graph", graph, "--coloring", colors, "--assume-p", 0.3,
             "--relax", 0.25, "--report", report]
        )
        assert code == 0
        doc = json.loads(report.read_text())
        assert doc["found"] is True and doc["validated"] is True


class TestParams:
    def test_json_shape(self, tmp_path):
        report = tmp_path / "params.json"
        assert run(["params", "--n", 1e4, "--p", 0.2, "--report", report]) == 0
        doc = json.loads(report.read_text())
        # rho = log(5)/log(1e4) = 0.1747, so k = ceil(1/rho + 1/2) = 7
        assert doc["schedule"]["m"] == 1 and doc["schedule"]["k"] == 7
        assert "counting_margin" in doc["inequalities"]["flags"]

    def test_rho_flag(self, tmp_path, capsys):
        assert run(["params", "--n", 1000, "--rho", 0.35]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["schedule"]["k"] == 3


class TestSweepCompare:
    def test_sweep_then_compare(self, tmp_path, capsys):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "version": 1, "n": [40, 60], "p": [0.3], "trials": 2, "master_seed": 11,
        }))
        out = tmp_path / "records.csv"
        report = tmp_path / "sweep.json"
        assert run(["sweep", "--config", cfg, "--out", out, "--report", report]) == 0
        assert len(out.read_text().splitlines()) == 5  # header + 4 records
        doc = json.loads(report.read_text())
        assert len(doc["trials"]) == 4 and "wall_time" in doc["trials"][0]
        capsys.readouterr()
        assert run(["compare", "--records", out]) == 0
        table = capsys.readouterr().out
        assert table.splitlines()[0].startswith("n\tp\tproc")

    def test_sweep_rerun_byte_identical(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({
            "version": 1, "n": [50], "p": [0.2], "trials": 3, "master_seed": 5,
        }))
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(["sweep", "--config", cfg, "--out", a])
        run(["sweep", "--config", cfg, "--out", b])
        assert a.read_bytes() == b.read_bytes()

    def test_bad_config_is_invalid_input(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"version": 1, "n": [], "p": [0.2]}))
        assert run(["sweep", "--config", cfg, "--out", str(tmp_path / "x.csv")]) == 1
