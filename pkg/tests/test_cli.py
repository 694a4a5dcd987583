"""Command-line interface: exit codes, schemas, golden-file determinism."""

import json
import os
import pathlib
import subprocess
import sys

import pytest

GOLDEN = pathlib.Path(__file__).parent / "golden"


def run_cli(*args, env_extra=None):
    env = dict(os.environ)
    env.pop("DEFORMALG_SEED", None)
    if env_extra:
        env.update(env_extra)
    cmd = [sys.executable, "-m", "deformalg", *args]
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


class TestExitCodes:
    def test_help(self):
        cp = run_cli("--help")
        assert cp.returncode == 0
        assert "verify" in cp.stdout and "gup-scan" in cp.stdout

    def test_verify_all_pass(self):
        cp = run_cli("verify", "--case", "classical", "--dim", "32")
        assert cp.returncode == 0, cp.stderr
        payload = json.loads(cp.stdout)
        assert payload["pass"] is True
        assert all(c["pass"] for c in payload["checks"])

    def test_verify_includes_qpower_check(self):
        cp = run_cli("verify", "--case", "arik-coon", "--q", "0.7", "--dim", "32")
        assert cp.returncode == 0, cp.stderr
        payload = json.loads(cp.stdout)
        names = [c["name"] for c in payload["checks"]]
        assert "xp_commutator_qpower" in names
        check = payload["checks"][names.index("xp_commutator_qpower")]
        assert check["pass"] and check["max_abs_residual"] <= 1e-10

    def test_parameter_error_exits_two(self):
        cp = run_cli("verify", "--case", "arik-coon", "--q", "-1")
        assert cp.returncode == 2
        assert "error" in cp.stderr

    def test_missing_subcommand_exits_two(self):
        cp = run_cli()
        assert cp.returncode == 2

    def test_symbolic_failure_exits_one(self):
        cp = run_cli("symbolic", "--case", "classical", "--check", "a*ad == ad*a")
        assert cp.returncode == 1
        payload = json.loads(cp.stdout)
        assert payload["pass"] is False

    def test_symbolic_parse_error_exits_two(self):
        cp = run_cli("symbolic", "--case", "classical", "--check", "a*ad == ad*")
        assert cp.returncode == 2
        assert "position" in cp.stderr

    def test_symbolic_unknown_builtin_exits_two(self):
        cp = run_cli("symbolic", "--case", "classical", "--check", "no_such_builtin")
        assert cp.returncode == 2

    def test_table_range_violation(self):
        cp = run_cli("table", "--case", "classical", "--levels", "30", "--dim", "32")
        assert cp.returncode == 2

    def test_scan_range_violation(self):
        cp = run_cli("gup-scan", "--case", "classical", "--n-from", "0", "--n-to", "29")
        assert cp.returncode == 2


class TestTable:
    def test_classical_hamiltonian_column(self):
        cp = run_cli("table", "--case", "classical", "--levels", "3")
        assert cp.returncode == 0
        lines = cp.stdout.strip().split("\n")
        assert lines[0] == "n,K_n,K_np1,H_n,delta_n"
        h_column = [float(line.split(",")[3]) for line in lines[1:]]
        assert h_column == [0.5, 1.5, 2.5]

    def test_quadratic_spectrum_row(self):
        cp = run_cli("table", "--case", "nonlinear", "--alpha", "1", "--beta", "2", "--levels", "3")
        row = cp.stdout.strip().split("\n")[3].split(",")
        assert float(row[3]) == 11.5

    def test_geometric_row(self):
        cp = run_cli("table", "--case", "arik-coon", "--q", "2", "--levels", "3")
        row = cp.stdout.strip().split("\n")[3].split(",")
        assert float(row[1]) == 3.0 and float(row[4]) == 4.0


class TestScan:
    def test_classical_products(self):
        cp = run_cli("gup-scan", "--case", "classical", "--n-from", "0", "--n-to", "2")
        lines = cp.stdout.strip().split("\n")
        assert lines[0].startswith("case,q,alpha,beta,gamma,n,delta_x,delta_p,product")
        products = [float(line.split(",")[8]) for line in lines[1:]]
        assert products == pytest.approx([0.25, 0.75, 1.25], abs=1e-12)

    def test_geometric_robertson_column(self):
        cp = run_cli(
            "gup-scan", "--case", "arik-coon", "--q", "0.5", "--n-from", "2", "--n-to", "2"
        )
        row = cp.stdout.strip().split("\n")[1].split(",")
        assert float(row[9]) == pytest.approx(0.0625, abs=1e-12)

    def test_margin_robertson_nonnegative(self):
        cp = run_cli(
            "gup-scan", "--case", "macfarlane-biedenharn", "--q", "1.5",
            "--n-from", "0", "--n-to", "10",
        )
        for line in cp.stdout.strip().split("\n")[1:]:
            assert float(line.split(",")[12]) >= -1e-12

    def test_q_scan_grid(self):
        cp = run_cli(
            "gup-scan", "--case", "arik-coon",
            "--q", "0.5", "--q-from", "0.25", "--q-to", "0.75", "--q-steps", "3",
        )
        assert cp.returncode == 0
        qs = [float(line.split(",")[1]) for line in cp.stdout.strip().split("\n")[1:]]
        assert qs == pytest.approx([0.25, 0.5, 0.75])

    def test_q_scan_on_caseless_q_rejected(self):
        cp = run_cli(
            "gup-scan", "--case", "classical", "--q-from", "0.25", "--q-to", "0.75"
        )
        assert cp.returncode == 2


class TestDeterminism:
    @pytest.mark.parametrize(
        "golden_name,args",
        [
            ("verify_classical.json", ["verify", "--case", "classical"]),
            (
                "table_nonlinear.csv",
                ["table", "--case", "nonlinear", "--alpha", "1", "--beta", "2", "--levels", "5"],
            ),
            (
                "gup_scan_arik_coon.csv",
                ["gup-scan", "--case", "arik-coon", "--q", "0.5", "--n-from", "0", "--n-to", "4"],
            ),
            (
                "symbolic_lh_x.json",
                ["symbolic", "--case", "nonlinear", "--alpha", "1", "--beta", "2", "--check", "lh_x"],
            ),
        ],
    )
    def test_golden_byte_equality(self, tmp_path, golden_name, args):
        out = tmp_path / golden_name
        cp = run_cli(*args, "--out", str(out))
        assert cp.returncode == 0, cp.stderr
        produced = out.read_bytes()
        assert produced == (GOLDEN / golden_name).read_bytes()
        # a second run is byte-identical
        out2 = tmp_path / ("again_" + golden_name)
        run_cli(*args, "--out", str(out2))
        assert out2.read_bytes() == produced
        assert b"\r" not in produced

    def test_stdout_matches_file_output(self, tmp_path):
        out = tmp_path / "t.csv"
        run_cli("table", "--case", "classical", "--levels", "4", "--out", str(out))
        cp = run_cli("table", "--case", "classical", "--levels", "4")
        assert cp.stdout.encode() == out.read_bytes()


class TestSeedHandling:
    def test_env_overrides_flag(self):
        with_flag = run_cli("verify", "--case", "classical", "--seed", "3")
        with_env = run_cli(
            "verify", "--case", "classical", "--seed", "3", env_extra={"DEFORMALG_SEED": "7"}
        )
        assert json.loads(with_flag.stdout)["seed"] == 3
        assert json.loads(with_env.stdout)["seed"] == 7

    def test_bad_env_seed(self):
        cp = run_cli("verify", "--case", "classical", env_extra={"DEFORMALG_SEED": "x"})
        assert cp.returncode == 2
