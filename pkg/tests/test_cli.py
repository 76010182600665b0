import csv
import json
import math

import pytest

from symtherm import cli, fileio, svgplot
from symtherm.curie_weiss import ModelParams, potential_curve
from symtherm.entropy import block_entropy
from symtherm.oracle import decompose_gibbs


def run_cli(capsys, *argv):
    code = cli.run(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCombo:
    def test_dim(self, capsys):
        code, out, _ = run_cli(capsys, "combo", "dim", "--shape", "2,1")
        assert code == 0 and out.strip() == "2"

    def test_logdim(self, capsys):
        code, out, _ = run_cli(capsys, "combo", "logdim", "--shape", "60,40")
        assert code == 0
        assert float(out) == pytest.approx(
            math.log(math.comb(100, 40) - math.comb(100, 39)), rel=1e-12
        )

    def test_kostka(self, capsys):
        code, out, _ = run_cli(
            capsys, "combo", "kostka", "--shape", "2,1", "--content", "1,1,1"
        )
        assert code == 0 and out.strip() == "2"

    def test_schur(self, capsys):
        code, out, _ = run_cli(capsys, "combo", "schur", "--shape", "2,2", "--d", "2")
        assert code == 0 and out.strip() == "1"

    def test_partitions(self, capsys):
        code, out, _ = run_cli(capsys, "combo", "partitions", "--n", "4", "--d", "4")
        assert code == 0
        assert out.splitlines() == ["4", "3,1", "2,2", "2,1,1", "1,1,1,1"]

    def test_count(self, capsys):
        code, out, _ = run_cli(capsys, "combo", "count", "--n", "4", "--d", "4")
        assert code == 0 and out.strip() == "5"

    def test_sector_dim(self, capsys):
        code, out, _ = run_cli(capsys, "combo", "sector-dim", "--shape", "2,2")
        assert code == 0 and out.strip() == "6"

    def test_missing_option_is_validation_error(self, capsys):
        code, _, err = run_cli(capsys, "combo", "dim")
        assert code == 2 and "--shape" in err

    def test_bad_shape_is_validation_error(self, capsys):
        code, _, err = run_cli(capsys, "combo", "dim", "--shape", "1,2")
        assert code == 2 and "bad shape" in err


class TestUsageErrors:
    def test_unknown_flag(self, capsys):
        code, _, err = run_cli(capsys, "combo", "dim", "--bogus", "1")
        assert code == 2
        assert "usage" in err

    def test_help_exits_zero(self, capsys):
        assert run_cli(capsys, "--help")[0] == 0

    def test_unknown_subcommand(self, capsys):
        assert run_cli(capsys, "frobnicate")[0] == 2


class TestEntropyCommand:
    def test_oracle_blocks_round_trip(self, capsys, tmp_path):
        params = ModelParams(n=4, omega=0.5, alpha=1.0, beta=2.0)
        blocks = decompose_gibbs(4, params)
        path = tmp_path / "blocks.json"
        fileio.dump_blocks(path, blocks)
        reloaded = fileio.load_blocks(path)
        assert [b.p for b in reloaded] == [b.p for b in blocks]
        assert [b.dim for b in reloaded] == [b.dim for b in blocks]

        code, out, _ = run_cli(
            capsys, "entropy", "--blocks", str(path), "--num-irreps", "3"
        )
        assert code == 0
        doc = json.loads(out)
        expected = block_entropy(blocks)
        assert doc["total"] == pytest.approx(expected.total, abs=1e-14)
        assert doc["dim_term"] == pytest.approx(expected.dim_term, abs=1e-14)
        assert doc["bounds"]["ok"] is True

    def test_huge_dimensions_survive_string_encoding(self, tmp_path):
        doc = [
            {
                "lambda": [500, 500],
                "p": 1.0,
                "dim": str(math.comb(1000, 500) - math.comb(1000, 499)),
                "deg": "1",
                "spectrum": [1.0],
            }
        ]
        path = tmp_path / "big.json"
        path.write_text(json.dumps(doc))
        blocks = fileio.load_blocks(path)
        assert blocks[0].dim > 10**297
        total = block_entropy(blocks).total
        assert total == pytest.approx(math.log(blocks[0].dim), rel=1e-12)

    def test_missing_file_is_io_error(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "entropy", "--blocks", str(tmp_path / "nope.json"))
        assert code == 1 and "nope.json" in err

    def test_malformed_block_is_validation_error(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps([{"lambda": [2]}]))
        code, _, err = run_cli(capsys, "entropy", "--blocks", str(path))
        assert code == 2 and "malformed block" in err


class TestPotentialCommand:
    def run_small(self, capsys, tmp_path, *extra):
        out_csv = tmp_path / "pot.csv"
        code, _, _ = run_cli(
            capsys,
            "potential",
            "--n",
            "20",
            "--alpha",
            "1",
            "--omega",
            "0.5",
            "--beta",
            "2",
            "--method",
            "all",
            "--no-cache",
            "--out",
            str(out_csv),
            *extra,
        )
        assert code == 0
        return out_csv

    def test_csv_layout_and_round_trip(self, capsys, tmp_path):
        out_csv = self.run_small(capsys, tmp_path)
        with open(out_csv, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert list(rows[0].keys()) == list(fileio.POTENTIAL_COLUMNS)
        assert len(rows) == 11  # attainable grid of n=20
        params = ModelParams(n=20, omega=0.5, alpha=1.0, beta=2.0)
        exact = potential_curve(params, "exact")
        for row, pt in zip(rows, exact.points):
            assert float(row["l"]) == pt.l
            assert float(row["f_exact"]) == pt.f  # exact to the last digit
        assert float(rows[0]["s"]) == pytest.approx(math.log(2), abs=1e-15)

    def test_single_method_leaves_other_columns_empty(self, capsys, tmp_path):
        out_csv = tmp_path / "single.csv"
        code, _, _ = run_cli(
            capsys,
            "potential",
            "--n",
            "12",
            "--alpha",
            "0",
            "--omega",
            "0.5",
            "--beta",
            "2",
            "--method",
            "analytic",
            "--no-cache",
            "--out",
            str(out_csv),
        )
        assert code == 0
        with open(out_csv, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert all(r["f_exact"] == "" and r["e_numeric"] == "" for r in rows)
        assert all(r["f_analytic"] != "" for r in rows)

    def test_byte_determinism(self, capsys, tmp_path):
        first = self.run_small(capsys, tmp_path).read_bytes()
        second = self.run_small(capsys, tmp_path).read_bytes()
        assert first == second

    def test_svg_has_three_polylines_and_legend(self, capsys, tmp_path):
        svg_path = tmp_path / "pot.svg"
        self.run_small(capsys, tmp_path, "--svg", str(svg_path))
        text = svg_path.read_text()
        assert text.count("<polyline") == 3
        for label in ("exact", "asymptotic", "analytic"):
            assert label in text

    def test_stdout_csv_when_no_output_path(self, capsys):
        code, out, _ = run_cli(
            capsys,
            "potential",
            "--n",
            "8",
            "--alpha",
            "1",
            "--omega",
            "0.5",
            "--beta",
            "2",
            "--method",
            "analytic",
            "--no-cache",
        )
        assert code == 0
        assert out.startswith("l,f_exact")

    def test_config_file_with_flag_precedence(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(
            json.dumps({"n": 12, "alpha": 1.0, "omega": 0.5, "beta": 2.0, "method": "analytic"})
        )
        out_csv = tmp_path / "cfg.csv"
        code, _, _ = run_cli(
            capsys,
            "potential",
            "--config",
            str(cfg),
            "--n",
            "8",  # flag beats config
            "--no-cache",
            "--out",
            str(out_csv),
        )
        assert code == 0
        with open(out_csv, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 5  # n=8 grid, not n=12

    def test_empty_window_rejected(self, capsys):
        code, _, err = run_cli(
            capsys,
            "potential",
            "--n",
            "8",
            "--alpha",
            "1",
            "--omega",
            "0.5",
            "--beta",
            "2",
            "--l-min",
            "0.6",
            "--no-cache",
        )
        assert code == 2 and "no attainable" in err


class TestPhaseCommand:
    def test_csv_and_heatmap(self, capsys, tmp_path):
        out_csv = tmp_path / "phase.csv"
        out_svg = tmp_path / "phase.svg"
        code, _, _ = run_cli(
            capsys,
            "phase",
            "--n",
            "20",
            "--omega",
            "0.5",
            "--beta-min",
            "0.5",
            "--beta-max",
            "2.5",
            "--beta-count",
            "2",
            "--alpha-min",
            "-1",
            "--alpha-max",
            "1",
            "--alpha-count",
            "2",
            "--method",
            "analytic",
            "--no-cache",
            "--out",
            str(out_csv),
            "--svg",
            str(out_svg),
        )
        assert code == 0
        with open(out_csv, newline="") as fh:
            rows = list(csv.DictReader(fh))
        assert list(rows[0].keys()) == list(fileio.PHASE_COLUMNS)
        assert len(rows) == 4
        assert [(float(r["beta"]), float(r["alpha"])) for r in rows] == [
            (0.5, -1.0),
            (0.5, 1.0),
            (2.5, -1.0),
            (2.5, 1.0),
        ]
        assert out_svg.read_text().count("<rect") == 4


class TestOracleCommand:
    def test_pass_lines(self, capsys):
        code, out, _ = run_cli(
            capsys, "oracle", "--n", "5", "--alpha", "1", "--omega", "0.5", "--beta", "2"
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 4
        assert all(line.startswith("PASS") for line in lines)
        names = [line.split()[1] for line in lines]
        assert names == [
            "spectrum_equivalence",
            "free_energy_equivalence",
            "entropy_equivalence",
            "bound_satisfaction",
        ]


class TestCacheCommand:
    def test_inspect_and_clear(self, capsys, tmp_path):
        cache_dir = tmp_path / "cache"
        code, _, _ = run_cli(
            capsys,
            "potential",
            "--n",
            "10",
            "--alpha",
            "1",
            "--omega",
            "0.5",
            "--beta",
            "2",
            "--method",
            "exact",
            "--cache-dir",
            str(cache_dir),
            "--out",
            str(tmp_path / "out.csv"),
        )
        assert code == 0
        code, out, err = run_cli(capsys, "cache", "inspect", "--cache-dir", str(cache_dir))
        assert code == 0
        assert len(out.strip().splitlines()) == 6  # sectors of n=10
        assert "n=10" in out
        code, out, _ = run_cli(capsys, "cache", "clear", "--cache-dir", str(cache_dir))
        assert code == 0 and out.strip() == "removed 6"
        code, out, _ = run_cli(capsys, "cache", "inspect", "--cache-dir", str(cache_dir))
        assert code == 0 and out.strip() == ""

    def test_env_var_controls_default_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("SYMTHERM_CACHE_DIR", str(tmp_path / "envcache"))
        code, _, _ = run_cli(
            capsys,
            "potential",
            "--n",
            "8",
            "--alpha",
            "1",
            "--omega",
            "0.5",
            "--beta",
            "2",
            "--method",
            "exact",
            "--out",
            str(tmp_path / "o.csv"),
        )
        assert code == 0
        assert len(list((tmp_path / "envcache").glob("*.json"))) == 5


class TestSvgRendering:
    def test_two_point_curve_single_polyline(self, tmp_path):
        path = tmp_path / "two.svg"
        svgplot.render_curves_svg(path, [("exact", [0.0, 0.5], [1.0, 2.0])], "l", "f")
        text = path.read_text()
        assert text.count("<polyline") == 1
        pts = text.split('points="')[1].split('"')[0]
        assert len(pts.split()) == 2

    def test_deterministic_bytes(self, tmp_path):
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        series = [("s", [0.0, 0.1, 0.2], [3.0, 1.0, 2.0])]
        svgplot.render_curves_svg(a, series, "x", "y")
        svgplot.render_curves_svg(b, series, "x", "y")
        assert a.read_bytes() == b.read_bytes()

    def test_empty_series_rejected(self, tmp_path):
        with pytest.raises(ValueError, match="non-empty"):
            svgplot.render_curves_svg(tmp_path / "no.svg", [], "x", "y")

    def test_heatmap_axes_labelled(self, tmp_path):
        path = tmp_path / "h.svg"
        svgplot.render_heatmap_svg(
            path, [0.5, 1.0], [0.0, 1.0], [[0.1, 0.2], [0.3, 0.4]], "beta", "alpha"
        )
        text = path.read_text()
        assert text.count("<rect") == 4
        assert ">beta<" in text and ">alpha<" in text


class TestCsvWriter:
    def test_header_only_for_empty_curve(self, tmp_path):
        path = tmp_path / "empty.csv"
        fileio.write_csv(path, fileio.POTENTIAL_COLUMNS, [])
        assert path.read_text() == ",".join(fileio.POTENTIAL_COLUMNS) + "\r\n"

    def test_seventeen_digit_round_trip(self, tmp_path):
        values = [math.pi, 1 / 3, 0.1, -2.5e-17, 123456.789]
        path = tmp_path / "rt.csv"
        fileio.write_csv(path, ["v"], [[v] for v in values])
        body = path.read_text().splitlines()[1:]
        assert [float(s) for s in body] == values
