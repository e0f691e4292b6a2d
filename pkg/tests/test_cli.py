import io
import sys

import pytest

from sbmtest.cli import EXIT_ACCEPT, EXIT_ERROR, EXIT_REJECT, main


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def null_pair(tmp_path, capsys):
    g_path = tmp_path / "g.txt"
    h_path = tmp_path / "h.txt"
    code, _, _ = run_cli(["sample", "--n", "300", "--a", "30", "--b", "10",
                          "--seed", "1", "--out", str(g_path)], capsys)
    assert code == EXIT_ACCEPT
    code, _, _ = run_cli(["sample", "--n", "300", "--a", "30", "--b", "10",
                          "--seed", "2", "--out", str(h_path)], capsys)
    assert code == EXIT_ACCEPT
    labels = tmp_path / "labels.txt"
    labels.write_text("".join(
        f"{i} {1 if i < 150 else -1}\n" for i in range(300)))
    return g_path, h_path, labels


class TestSample:
    def test_stdout_edges(self, capsys):
        code, out, _ = run_cli(["sample", "--n", "20", "--a", "20", "--b", "20",
                                "--seed", "0"], capsys)
        assert code == EXIT_ACCEPT
        lines = [l for l in out.splitlines() if not l.startswith("#")]
        assert len(lines) == 20 * 19 // 2

    def test_deterministic(self, tmp_path, capsys):
        a = tmp_path / "a.txt"
        b = tmp_path / "b.txt"
        for path in (a, b):
            run_cli(["sample", "--n", "100", "--a", "12", "--b", "3",
                     "--seed", "7", "--out", str(path)], capsys)
        assert a.read_bytes() == b.read_bytes()


class TestSingleTests:
    def test_gof_accept_and_reject(self, null_pair, capsys):
        g_path, _, labels = null_pair
        code, out, _ = run_cli(["gof", "--edges", str(g_path), "--labels",
                                str(labels), "--a", "30", "--b", "10"], capsys)
        assert code == EXIT_ACCEPT
        assert "statistic=" in out and "reject=false" in out

    def test_gof_estimates_params_when_missing(self, null_pair, capsys):
        g_path, _, labels = null_pair
        code, out, _ = run_cli(["gof", "--edges", str(g_path),
                                "--labels", str(labels)], capsys)
        assert code in (EXIT_ACCEPT, EXIT_REJECT)
        assert "params_estimated=True" in out

    def test_naive_gof_runs(self, null_pair, capsys):
        g_path, _, labels = null_pair
        code, out, _ = run_cli(["naive-gof", "--edges", str(g_path), "--labels",
                                str(labels), "--s", "50"], capsys)
        assert code == EXIT_ACCEPT

    def test_tst_null_accepts(self, null_pair, capsys):
        g_path, h_path, _ = null_pair
        code, out, _ = run_cli(["tst", "--edges-g", str(g_path), "--edges-h",
                                str(h_path), "--a", "30", "--b", "10",
                                "--seed", "3"], capsys)
        assert code == EXIT_ACCEPT

    def test_naive_tst_null_accepts(self, null_pair, capsys):
        g_path, h_path, _ = null_pair
        code, _, _ = run_cli(["naive-tst", "--edges-g", str(g_path),
                              "--edges-h", str(h_path), "--s", "100"], capsys)
        assert code == EXIT_ACCEPT

    def test_missing_file_is_error(self, capsys):
        code, _, err = run_cli(["gof", "--edges", "/nonexistent", "--labels",
                                "/nonexistent"], capsys)
        assert code == EXIT_ERROR
        assert "error:" in err


class TestBatchCommands:
    def test_bounds_row(self, capsys):
        code, out, _ = run_cli(["bounds", "--n", "1000", "--a", "15",
                                "--b", "5", "--s", "100"], capsys)
        assert code == EXIT_ACCEPT
        lines = out.strip().splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("n,a,b,s,nu,bc,")
        assert len(lines[1].split(",")) == len(lines[0].split(","))

    def test_sweep_deterministic(self, tmp_path, capsys):
        spec = tmp_path / "grid.toml"
        spec.write_text(
            'n = 120\ntrials = 3\nschemes = ["gof"]\n'
            "s_values = [20]\nalpha_values = [6.0]\n")
        out1 = tmp_path / "o1"
        out2 = tmp_path / "o2"
        for out in (out1, out2):
            code, _, _ = run_cli(["sweep", "--spec", str(spec), "--out",
                                  str(out), "--seed", "5"], capsys)
            assert code == EXIT_ACCEPT
        assert (out1 / "gof.csv").read_bytes() == (out2 / "gof.csv").read_bytes()

    def test_dataset_pipeline(self, null_pair, capsys):
        g_path, _, labels = null_pair
        code, out, _ = run_cli(["dataset", "--edges", str(g_path), "--labels",
                                str(labels), "--s", "60", "--rho", "0.9",
                                "--trials", "2", "--seed", "4"], capsys)
        assert code == EXIT_ACCEPT
        assert "nodes_lcc=" in out
        assert "tst_risk=" in out

    def test_gmrf_small(self, capsys):
        code, out, _ = run_cli(["gmrf", "--n", "60", "--s", "20", "--t", "40",
                                "--trials", "12", "--a", "20", "--b", "4",
                                "--seed", "6"], capsys)
        assert code == EXIT_ACCEPT
        assert "cv_risk_proposed=" in out
        assert "cv_risk_naive=" in out

    def test_usage_error_exit_code(self, capsys):
        code, _, _ = run_cli(["sweep"], capsys)
        assert code == EXIT_ERROR
