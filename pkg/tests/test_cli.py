"""Command-line interface tests, run in-process through ``cli.main``.

Ground truth: every numerical figure the CLI prints must equal the value the
library computes for the same inputs, because the CLI is a thin wrapper.  The
exit-code contract is part of the scripting interface: 0 success, 2 usage or
contract violation (argparse errors included), 3 numerical failure, and 1 from
``rmt-check`` when at least one law check fails.

Known values:
- denoise --method svht defaults mu to (4/sqrt(3)) * sqrt(n) * sigma.
- eym truncation at rank 0 writes an all-zero matrix of the input shape.
- tune --family svlet with K=1 prints the closed-form coefficient
  a1 = 1 - n*m*sigma^2 / sum(y_i^2).
- tune --family svst prints a `# best` line, a `lam,sure` header, and exactly
  100 data rows; the atn trace has 2000 rows (100 thresholds x 20 exponents).
- bench sweep CSVs are byte-identical across reruns and thread counts once the
  `# timestamp=` comment line is dropped.
"""

import json
import re
from pathlib import Path

import numpy as np
import pytest

import svshrink
from svshrink import (
    ContractError,
    DenoiseProblem,
    Svht,
    Svst,
    SVHT_COEFF,
    apply,
    eym_truncate,
    read_matrix,
    solve_svlet,
    sure,
    svd,
    write_matrix,
)
from svshrink import cli


def make_input(path, seed=0, n=8, m=6, rank=2):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((n, rank)) @ rng.standard_normal((rank, m))
    Y = 3.0 * X + 0.5 * rng.standard_normal((n, m))
    write_matrix(path, Y)
    return Y


def run_cli(argv, capsys):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_without_timestamp(path):
    lines = Path(path).read_bytes().split(b"\n")
    return b"\n".join(line for line in lines if not line.startswith(b"# timestamp"))


def write_config(path, text):
    Path(path).write_text(text)
    return str(path)


SWEEP_CONFIG = """\
# small deterministic benchmark regime
run = sweep
n = 12
m = 10
ranks = 1,3
snrs = 1.0 4.0
methods = svlet(C=10,K=2) eym-oracle
trials = 2
"""


class TestParserContract:
    """argparse-level failures exit with SystemExit(2)."""

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["--version"])
        assert excinfo.value.code == 0
        assert capsys.readouterr().out.strip() == f"svshrink {svshrink.__version__}"

    def test_missing_subcommand(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            cli.main([])
        assert excinfo.value.code == 2

    def test_bench_requires_seed(self, tmp_path, capsys):
        config = write_config(tmp_path / "bench.cfg", SWEEP_CONFIG)
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["bench", "--config", config])
        assert excinfo.value.code == 2

    def test_unknown_denoise_method(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path)
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["denoise", path, "--sigma", "0.5", "--method", "bogus"])
        assert excinfo.value.code == 2

    def test_unknown_tune_family(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path)
        with pytest.raises(SystemExit) as excinfo:
            cli.main(["tune", path, "--sigma", "0.5", "--family", "bogus"])
        assert excinfo.value.code == 2


class TestDenoise:
    def test_svlet_matches_library(self, tmp_path, capsys):
        """The printed SURE value and the written matrix reproduce the library
        call bit for bit (matrix CSV round-trips are exact)."""
        path = str(tmp_path / "obs.csv")
        Y = make_input(path, seed=3)
        out_path = str(tmp_path / "xhat.csv")
        code, out, err = run_cli(
            ["denoise", path, "--sigma", "0.5", "--method", "svlet", "--output", out_path],
            capsys,
        )
        assert code == 0 and err == ""
        payload = json.loads(out)
        assert payload["method"] == "svlet"
        assert payload["params"] == {"C": 10.0, "K": 2}
        assert payload["seconds"] >= 0.0

        problem = DenoiseProblem(Y=Y, sigma=0.5)
        factors = svd(Y)
        solved = solve_svlet(problem, factors, K=2, C=10.0)
        assert payload["sure"] == solved.report.sure
        expected = (factors.U * apply(solved.rule, factors.S)) @ factors.V.T
        np.testing.assert_array_equal(read_matrix(out_path), expected)

    def test_default_output_path(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path)
        code, out, _ = run_cli(
            ["denoise", path, "--sigma", "0.5", "--method", "svst", "--lam", "1.0"], capsys
        )
        assert code == 0
        produced = tmp_path / "obs.denoised.csv"
        assert produced.exists()
        assert read_matrix(str(produced)).shape == (8, 6)

    def test_svst_fixed_lambda_sure(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        Y = make_input(path, seed=5)
        code, out, _ = run_cli(
            ["denoise", path, "--sigma", "0.5", "--method", "svst", "--lam", "1.25"], capsys
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["params"] == {"lam": 1.25}
        problem = DenoiseProblem(Y=Y, sigma=0.5)
        expected = sure(problem, svd(Y), Svst(lam=1.25)).sure
        assert payload["sure"] == expected

    def test_eym_rank_zero_writes_zero_matrix(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path)
        out_path = str(tmp_path / "zero.csv")
        code, out, _ = run_cli(
            [
                "denoise", path, "--sigma", "0.5", "--method", "eym",
                "--rank", "0", "--output", out_path,
            ],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["params"] == {"rank": 0}
        assert payload["sure"] is None
        np.testing.assert_array_equal(read_matrix(out_path), np.zeros((8, 6)))

    def test_eym_requires_rank(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path)
        code, out, err = run_cli(["denoise", path, "--sigma", "0.5", "--method", "eym"], capsys)
        assert code == 2
        assert err.startswith("error:")
        assert "--rank is required" in err

    def test_svht_default_threshold(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        Y = make_input(path, seed=7)
        out_path = str(tmp_path / "xhat.csv")
        code, out, _ = run_cli(
            ["denoise", path, "--sigma", "0.5", "--method", "svht", "--output", out_path],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        mu = SVHT_COEFF * np.sqrt(8.0) * 0.5
        np.testing.assert_allclose(payload["params"]["mu"], mu, rtol=1e-15)
        factors = svd(Y)
        expected = (factors.U * apply(Svht(mu=mu), factors.S)) @ factors.V.T
        np.testing.assert_array_equal(read_matrix(out_path), expected)

    def test_svht_explicit_threshold(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path)
        code, out, _ = run_cli(
            ["denoise", path, "--sigma", "0.5", "--method", "svht", "--mu", "3.5"], capsys
        )
        assert code == 0
        assert json.loads(out)["params"] == {"mu": 3.5}

    def test_opt_shrink_reports_aspect_ratio(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path)
        code, out, _ = run_cli(
            ["denoise", path, "--sigma", "0.5", "--method", "opt-shrink"], capsys
        )
        assert code == 0
        payload = json.loads(out)
        np.testing.assert_allclose(payload["params"]["beta"], 6.0 / 8.0, rtol=1e-15)
        assert payload["sure"] is None

    def test_svlt_defaults_steepness(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path)
        code, out, _ = run_cli(
            [
                "denoise", path, "--sigma", "0.5", "--method", "svlt",
                "--p2", "2", "--p3", "0.5",
            ],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["params"] == {"p1": 100.0, "p2": 2.0, "p3": 0.5}

    def test_zero_sigma_rejected(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path)
        code, out, err = run_cli(
            ["denoise", path, "--sigma", "0.0", "--method", "svlet"], capsys
        )
        assert code == 2
        assert err.startswith("error:")
        assert "sigma" in err

    def test_atn_needs_both_parameters(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path)
        code, out, err = run_cli(
            ["denoise", path, "--sigma", "0.5", "--method", "atn", "--tau", "1.0"], capsys
        )
        assert code == 2
        assert "atn needs both --tau and --gamma" in err

    def test_missing_input_file(self, tmp_path, capsys):
        code, out, err = run_cli(
            ["denoise", str(tmp_path / "nope.csv"), "--sigma", "0.5", "--method", "svlet"],
            capsys,
        )
        assert code == 2
        assert err.startswith("error:")


class TestTune:
    def test_svlet_k1_closed_form(self, tmp_path, capsys):
        """K=1 admits the exact solution a1 = 1 - n*m*sigma^2 / sum(y^2)."""
        path = str(tmp_path / "obs.csv")
        Y = make_input(path, seed=11)
        code, out, _ = run_cli(
            ["tune", path, "--sigma", "0.5", "--family", "svlet", "--K", "1"], capsys
        )
        assert code == 0
        payload = json.loads(out)
        total = float(np.sum(svd(Y).S ** 2))
        expected = 1.0 - 8 * 6 * 0.25 / total
        assert len(payload["a"]) == 1
        np.testing.assert_allclose(payload["a"][0], expected, rtol=1e-10)

    def test_svlet_json_fields(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        Y = make_input(path, seed=12)
        code, out, _ = run_cli(["tune", path, "--sigma", "0.5", "--family", "svlet"], capsys)
        assert code == 0
        payload = json.loads(out)
        assert sorted(payload) == ["a", "condition_estimate", "ridge_used", "sure"]
        assert len(payload["a"]) == 2
        assert payload["condition_estimate"] >= 1.0
        assert payload["ridge_used"] == 0.0
        solved = solve_svlet(DenoiseProblem(Y=Y, sigma=0.5), svd(Y), K=2, C=10.0)
        assert payload["sure"] == solved.report.sure

    def test_svst_trace_layout(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path, seed=13)
        code, out, _ = run_cli(["tune", path, "--sigma", "0.5", "--family", "svst"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("# best lam=")
        assert lines[1] == "lam,sure"
        assert len(lines) == 102
        for line in lines[2:]:
            lam, value = line.split(",")
            float(lam), float(value)

    def test_svst_best_line_matches_argmin(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path, seed=14)
        code, out, _ = run_cli(["tune", path, "--sigma", "0.5", "--family", "svst"], capsys)
        assert code == 0
        lines = out.splitlines()
        rows = [tuple(float(part) for part in line.split(",")) for line in lines[2:]]
        best_lam, best_sure = min(rows, key=lambda row: (row[1], row[0]))
        match = re.fullmatch(r"# best lam=(\S+) sure=(\S+)", lines[0])
        assert match is not None
        assert float(match.group(1)) == best_lam
        assert float(match.group(2)) == best_sure

    def test_atn_trace_layout(self, tmp_path, capsys):
        path = str(tmp_path / "obs.csv")
        make_input(path, seed=15)
        code, out, _ = run_cli(["tune", path, "--sigma", "0.5", "--family", "atn"], capsys)
        assert code == 0
        lines = out.splitlines()
        assert lines[0].startswith("# best tau=")
        assert lines[1] == "tau,gamma,sure"
        assert len(lines) == 2 + 100 * 20


class TestBenchCommand:
    def test_sweep_writes_csv_and_summary(self, tmp_path, capsys):
        config = write_config(tmp_path / "bench.cfg", SWEEP_CONFIG)
        outdir = tmp_path / "out"
        code, out, _ = run_cli(
            ["bench", "--config", config, "--seed", "11", "--output-dir", str(outdir)],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        assert payload == {"written": [str(outdir / "sweep.csv")]}
        text = (outdir / "sweep.csv").read_text()
        header = next(line for line in text.splitlines() if not line.startswith("#"))
        assert header == "method,n,m,r,snr,trials,nmse,nmse_stderr,median_time_s,status"
        data = [line for line in text.splitlines() if line and not line.startswith("#")]
        assert len(data) == 1 + 2 * 2 * 2

    def test_rerun_identical_modulo_timestamp(self, tmp_path, capsys):
        config = write_config(tmp_path / "bench.cfg", SWEEP_CONFIG)
        for name in ("a", "b"):
            code, _, _ = run_cli(
                [
                    "bench", "--config", config, "--seed", "11",
                    "--output-dir", str(tmp_path / name),
                ],
                capsys,
            )
            assert code == 0
        first = csv_without_timestamp(tmp_path / "a" / "sweep.csv")
        second = csv_without_timestamp(tmp_path / "b" / "sweep.csv")
        assert first == second

    def test_threads_do_not_change_bytes(self, tmp_path, capsys):
        config = write_config(tmp_path / "bench.cfg", SWEEP_CONFIG)
        for name, threads in (("serial", "1"), ("pooled", "3")):
            code, _, _ = run_cli(
                [
                    "bench", "--config", config, "--seed", "11",
                    "--threads", threads, "--output-dir", str(tmp_path / name),
                ],
                capsys,
            )
            assert code == 0
        serial = csv_without_timestamp(tmp_path / "serial" / "sweep.csv")
        pooled = csv_without_timestamp(tmp_path / "pooled" / "sweep.csv")
        assert serial == pooled

    def test_requires_config_or_preset(self, tmp_path, capsys):
        code, out, err = run_cli(["bench", "--seed", "11"], capsys)
        assert code == 2
        assert "bench needs --config FILE or --preset paper" in err

    def test_empty_methods_rejected(self, tmp_path, capsys):
        config = write_config(
            tmp_path / "bench.cfg", "run = sweep\nn = 12\nm = 10\nranks = 1\nmethods =\n"
        )
        code, out, err = run_cli(["bench", "--config", config, "--seed", "11"], capsys)
        assert code == 2
        assert err.startswith("error:")

    def test_seed_key_rejected(self, tmp_path, capsys):
        config = write_config(tmp_path / "bench.cfg", "run = sweep\nseed = 4\n")
        code, out, err = run_cli(["bench", "--config", config, "--seed", "11"], capsys)
        assert code == 2
        assert "seed must be given via --seed" in err

    def test_unknown_key_rejected(self, tmp_path, capsys):
        config = write_config(tmp_path / "bench.cfg", "run = sweep\nwidgets = 4\n")
        code, out, err = run_cli(["bench", "--config", config, "--seed", "11"], capsys)
        assert code == 2
        assert "unknown key 'widgets'" in err

    def test_duplicate_key_rejected(self, tmp_path, capsys):
        config = write_config(tmp_path / "bench.cfg", "run = sweep\nn = 12\nn = 14\n")
        code, out, err = run_cli(["bench", "--config", config, "--seed", "11"], capsys)
        assert code == 2
        assert "duplicate key 'n'" in err

    def test_rank_range_syntax(self, tmp_path):
        config = write_config(
            tmp_path / "bench.cfg", "run = sweep\nranks = 2..4\nC = 7.5\nK = 3\nmethods = svlet\n"
        )
        parsed = cli.load_config(config)
        assert parsed.ranks == (2, 3, 4)
        grid = parsed.grid(seed=11)
        assert [spec.label for spec in grid.methods] == ["svlet(C=7.5,K=3)"]

    def test_comments_and_blanks_ignored(self, tmp_path):
        config = write_config(
            tmp_path / "bench.cfg",
            "# full-line comment\n\nrun = timing  # trailing comment\nn = 12\n",
        )
        parsed = cli.load_config(config)
        assert parsed.run == "timing"
        assert parsed.n == 12

    def test_sensitivity_summary(self, tmp_path, capsys):
        config = write_config(
            tmp_path / "bench.cfg",
            "run = sensitivity\nn = 12\nm = 10\nranks = 1\nsnrs = 1.0\n"
            "trials = 2\nc_values = 5 10\nk_values = 1 2\n",
        )
        outdir = tmp_path / "out"
        code, out, _ = run_cli(
            ["bench", "--config", config, "--seed", "11", "--output-dir", str(outdir)],
            capsys,
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["written"] == [str(outdir / "sensitivity.csv")]
        assert payload["best_C"] in (5.0, 10.0)
        assert payload["best_K"] in (1, 2)
        assert payload["best_nmse"] > 0.0
        data = [
            line
            for line in (outdir / "sensitivity.csv").read_text().splitlines()
            if line and not line.startswith("#")
        ]
        assert len(data) == 1 + 4

    def test_timing_run_layout(self, tmp_path, capsys):
        config = write_config(
            tmp_path / "bench.cfg",
            "run = timing\nn = 12\nm = 10\nranks = 3\nsnrs = 1.0\ntrials = 2\n"
            "methods = svlet(C=10,K=2) eym-oracle\nout = times.csv\n",
        )
        outdir = tmp_path / "out"
        code, out, _ = run_cli(
            ["bench", "--config", config, "--seed", "11", "--output-dir", str(outdir)],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["written"] == [str(outdir / "times.csv")]
        lines = (outdir / "times.csv").read_text().splitlines()
        assert lines[0] == "# seed=11"
        assert lines[1] == f"# version={svshrink.__version__}"
        assert lines[2] == "method,median_time_s,ratio_vs_svlet"
        assert len(lines) == 5
        assert lines[3].startswith('"svlet(C=10,K=2)",')
        assert lines[3].endswith(",1.0")
        assert lines[4].startswith("eym-oracle,")

    def test_config_output_dir_honored_and_overridden(self, tmp_path, capsys):
        nested = tmp_path / "from-config"
        config = write_config(
            tmp_path / "bench.cfg", SWEEP_CONFIG + f"output_dir = {nested}\n"
        )
        code, out, _ = run_cli(["bench", "--config", config, "--seed", "11"], capsys)
        assert code == 0
        assert json.loads(out)["written"] == [str(nested / "sweep.csv")]

        forced = tmp_path / "from-flag"
        code, out, _ = run_cli(
            ["bench", "--config", config, "--seed", "11", "--output-dir", str(forced)],
            capsys,
        )
        assert code == 0
        assert json.loads(out)["written"] == [str(forced / "sweep.csv")]


class TestRmtCheck:
    def test_all_laws_pass_at_known_seed(self, capsys):
        """n=400, trials=10, seed=20260818 passes all six law checks."""
        code, out, err = run_cli(
            ["rmt-check", "--n", "400", "--trials", "10", "--seed", "20260818"], capsys
        )
        assert code == 0 and err == ""
        lines = out.splitlines()
        assert len(lines) == 6
        pattern = re.compile(
            r"PASS [a-z0-9.\-]+: statistic=\S+ target=\S+ tolerance=\S+ \((abs|rel)\)"
        )
        for line in lines:
            assert pattern.fullmatch(line), line

    def test_deterministic_output(self, capsys):
        argv = ["rmt-check", "--n", "150", "--trials", "4", "--seed", "9"]
        first_code, first_out, _ = run_cli(argv, capsys)
        second_code, second_out, _ = run_cli(argv, capsys)
        assert first_code == second_code
        assert first_code in (0, 1)
        assert first_out == second_out

    def test_zero_trials_rejected(self, capsys):
        code, out, err = run_cli(
            ["rmt-check", "--n", "100", "--trials", "0", "--seed", "9"], capsys
        )
        assert code == 2
        assert err.startswith("error:")
