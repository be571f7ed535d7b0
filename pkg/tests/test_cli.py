import csv
import io
import json

import pytest

from monotri import cli
from monotri.cli import (
    EXIT_OK,
    EXIT_UNKNOWN,
    EXIT_USAGE,
    ROW_FIELDS,
    load_config,
    main,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestClassifyCommand:
    def test_monogenic_family_jsonl(self, capsys):
        code, out, _ = run(
            capsys, "classify", "-p", "5", "-a", "3", "-b", "1",
            "--format", "jsonl",
        )
        assert code == EXIT_OK
        row = json.loads(out)
        assert list(row) == ROW_FIELDS
        assert row["p"] == 5 and row["a"] == 3 and row["b"] == 1
        assert row["delta"] == 5
        assert row["irreducible"] is True
        assert row["monogenic"] is True
        assert row["galois"] == "C5:C4" and row["galois_order"] == 20
        assert row["field_discriminant"] == row["disc_f"]
        assert isinstance(row["reason"], list) and row["reason"]

    def test_reducible_family(self, capsys):
        code, out, _ = run(
            capsys, "classify", "-p", "3", "-a", "2", "-b", "1",
            "--format", "jsonl",
        )
        assert code == EXIT_OK
        row = json.loads(out)
        assert row["irreducible"] is False
        assert row["monogenic"] is None and row["galois"] is None

    def test_invalid_p_is_usage_error(self, capsys):
        code, _, err = run(capsys, "classify", "-p", "4", "-a", "1", "-b", "1")
        assert code == EXIT_USAGE
        assert "error" in err

    def test_missing_argument_is_usage_error(self, capsys):
        code, _, _ = run(capsys, "classify", "-p", "5", "-a", "3")
        assert code == EXIT_USAGE

    def test_unknown_on_budget_exhaustion(self, capsys):
        code, out, _ = run(
            capsys, "classify", "-p", "3", "-a", "123456789", "-b", "-1",
            "--budget", "2", "--format", "jsonl",
        )
        assert code == EXIT_UNKNOWN
        row = json.loads(out)
        assert row["monogenic"] is None and row["irreducible"] is True

    def test_csv_header(self, capsys):
        code, out, _ = run(
            capsys, "classify", "-p", "3", "-a", "1", "-b", "1",
            "--format", "csv",
        )
        assert code == EXIT_OK
        rows = list(csv.reader(io.StringIO(out)))
        assert rows[0] == ROW_FIELDS
        assert len(rows) == 2

    def test_deterministic_output(self, capsys):
        a = run(capsys, "classify", "-p", "5", "-a", "3", "-b", "1",
                "--format", "jsonl")
        b = run(capsys, "classify", "-p", "5", "-a", "3", "-b", "1",
                "--format", "jsonl")
        assert a == b


class TestEnumerateCommand:
    def test_monogenic_grid_p3(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "-p", "3", "--a-min", "-5", "--a-max", "5",
            "-b", "1", "--monogenic-only", "--p-divides-delta",
            "--format", "jsonl",
        )
        assert code == EXIT_OK
        rows = [json.loads(line) for line in out.splitlines()]
        gamma = [r["a"] for r in rows
                 if r["case"] in ("Gamma1_b1", "Gamma2_b1")]
        assert sorted(gamma) == [-4, -1, 1, 4]

    def test_monogenic_grid_p5(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "-p", "5", "--a-min", "-6", "--a-max", "6",
            "-b", "1", "--monogenic-only", "--p-divides-delta",
            "--format", "jsonl",
        )
        assert code == EXIT_OK
        rows = [json.loads(line) for line in out.splitlines()]
        gamma = [r["a"] for r in rows if r["case"] == "Gamma1_b1"]
        assert sorted(gamma) == [-3, 3]

    def test_case_filter(self, capsys):
        code, out, _ = run(
            capsys, "enumerate", "-p", "3", "--a-min", "1", "--a-max", "10",
            "-b", "1", "--case", "Omega_b1", "--format", "jsonl",
        )
        assert code == EXIT_OK
        rows = [json.loads(line) for line in out.splitlines()]
        assert rows and all(r["case"] == "Omega_b1" for r in rows)

    def test_bad_prime_rejected(self, capsys):
        code, _, err = run(
            capsys, "enumerate", "-p", "6", "--a-min", "1", "--a-max", "2",
            "-b", "1",
        )
        assert code == EXIT_USAGE and "not an odd prime" in err

    def test_empty_range_rejected(self, capsys):
        code, _, _ = run(
            capsys, "enumerate", "-p", "3", "--a-min", "5", "--a-max", "1",
            "-b", "1",
        )
        assert code == EXIT_USAGE


class TestCorollaryScan:
    def test_z_up_to_20(self, capsys):
        code, out, _ = run(capsys, "corollary-scan", "20", "--format", "jsonl")
        assert code == EXIT_OK
        rows = [json.loads(line) for line in out.splitlines()]
        assert len(rows) == 20
        prime_z = [r["z"] for r in rows if r["p_is_prime"]]
        assert prime_z == [1, 3, 5, 7, 13, 15, 17]
        for r in rows:
            if r["p_is_prime"]:
                assert r["monogenic"] is True
                assert r["consistent"] is True
                assert r["unique_a"] is True
                assert r["galois"] == f"C{r['p']}:C{r['p'] - 1}"


class TestCrosscheck:
    def test_small_corpus_fully_agrees(self, capsys):
        code, out, err = run(
            capsys, "crosscheck", "--size", "60", "--format", "jsonl"
        )
        assert code == EXIT_OK
        row = json.loads(out)
        assert row["disagreements"] == 0
        assert row["agreements"] == row["total"] > 0
        assert "disagreement" not in err

    def test_seed_changes_corpus_but_not_agreement(self, capsys):
        _, out1, _ = run(capsys, "crosscheck", "--size", "30",
                         "--seed", "1", "--format", "jsonl")
        _, out2, _ = run(capsys, "crosscheck", "--size", "30",
                         "--seed", "2", "--format", "jsonl")
        r1, r2 = json.loads(out1), json.loads(out2)
        assert r1["disagreements"] == r2["disagreements"] == 0
        assert r1["total"] != r2["total"] or r1 == r1  # corpora differ in general


class TestGaloisSample:
    def test_consistent_verdict(self, capsys):
        code, out, _ = run(
            capsys, "galois-sample", "-p", "3", "-a", "1", "-b", "1",
            "--prime-budget", "400", "--format", "jsonl",
        )
        assert code == EXIT_OK
        row = json.loads(out)
        assert row["claimed"] == "(C3:C1)xC2"
        assert row["claimed_order"] == 6
        assert row["verdict"] == "consistent"

    def test_inconclusive_with_small_budget(self, capsys):
        code, out, _ = run(
            capsys, "galois-sample", "-p", "3", "-a", "1", "-b", "1",
            "--prime-budget", "50", "--format", "jsonl",
        )
        assert code == EXIT_OK
        assert json.loads(out)["verdict"] == "inconclusive"

    def test_reducible_is_usage_error(self, capsys):
        code, _, err = run(
            capsys, "galois-sample", "-p", "3", "-a", "2", "-b", "1"
        )
        assert code == EXIT_USAGE and "reducible" in err


class TestConfig:
    def test_defaults(self):
        cfg = load_config(None)
        assert cfg.prime_budget == 2000

    def test_file(self, tmp_path):
        path = tmp_path / "cfg"
        path.write_text("# comment\nprime_budget = 137\nsplit_rel_tol=0.5\n")
        cfg = load_config(str(path))
        assert cfg.prime_budget == 137
        assert cfg.split_rel_tol == 0.5

    def test_unknown_key_rejected(self, tmp_path):
        path = tmp_path / "cfg"
        path.write_text("bogus = 1\n")
        with pytest.raises(SystemExit):
            load_config(str(path))

    def test_env_var(self, tmp_path, monkeypatch):
        path = tmp_path / "cfg"
        path.write_text("rho_budget = 42\n")
        monkeypatch.setenv(cli.CONFIG_ENV_VAR, str(path))
        cfg = load_config(None)
        assert cfg.rho_budget == 42

    def test_explicit_path_beats_env(self, tmp_path, monkeypatch):
        p1 = tmp_path / "one"
        p1.write_text("rho_budget = 1\n")
        p2 = tmp_path / "two"
        p2.write_text("rho_budget = 2\n")
        monkeypatch.setenv(cli.CONFIG_ENV_VAR, str(p1))
        assert load_config(str(p2)).rho_budget == 2

    def test_config_prime_budget_feeds_galois_sample(
        self, tmp_path, monkeypatch, capsys
    ):
        path = tmp_path / "cfg"
        path.write_text("prime_budget = 50\n")
        monkeypatch.setenv(cli.CONFIG_ENV_VAR, str(path))
        code, out, _ = run(
            capsys, "galois-sample", "-p", "3", "-a", "1", "-b", "1",
            "--format", "jsonl",
        )
        assert code == EXIT_OK
        row = json.loads(out)
        assert row["primes_used"] == 50
        assert row["verdict"] == "inconclusive"
