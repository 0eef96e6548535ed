"""CLI surface tests: exact outputs, exit codes, formats, cache handling."""

import io
import json
import sys

import pytest

from midylab import cli, midy
from midylab.order import order_mod


def run_cli(argv):
    """Run main() with stdout captured; returns (exit_code, stdout_text)."""
    captured = io.StringIO()
    old = sys.stdout
    sys.stdout = captured
    try:
        code = cli.main(argv)
    finally:
        sys.stdout = old
    return code, captured.getvalue()


class TestOrderCommand:
    def test_known_value(self):
        code, out = run_cli(["order", "--base", "10", "13"])
        assert code == 0
        assert out == "6\n"

    def test_json(self):
        code, out = run_cli(["order", "--base", "10", "13", "--format", "json"])
        assert code == 0
        assert json.loads(out) == {"base": 10, "n": 13, "order": 6}

    def test_domain_error_exit_code(self):
        code, _ = run_cli(["order", "--base", "10", "14"])
        assert code == 1


class TestExpandCommand:
    def test_digit_string(self):
        code, out = run_cli(["expand", "--base", "10", "1", "13"])
        assert code == 0
        assert out == "076923\n"

    def test_blocks(self):
        code, out = run_cli(["expand", "--base", "10", "1", "13", "--blocks", "3"])
        assert out.splitlines() == ["076923", "07 + 69 + 23 = 99"]

    def test_base_eight(self):
        code, out = run_cli(["expand", "--base", "8", "1", "75", "--blocks", "4"])
        assert out.splitlines()[0] == "00664720155164033235"
        assert out.splitlines()[1].endswith("= 65534")

    def test_large_base_bracketed(self):
        code, out = run_cli(["expand", "--base", "16", "1", "13"])
        assert code == 0
        # 1/13 in base 16 repeats 13b: 0.13b13b...
        assert out == "[1,3,11]\n"

    def test_json_payload(self):
        code, out = run_cli(
            ["expand", "--base", "8", "1", "75", "--blocks", "4", "--format", "json"]
        )
        payload = json.loads(out)
        assert payload["order"] == 20
        assert payload["sum"] == 65534
        assert payload["blocks"] == [int("00664", 8), int("72015", 8), int("51640", 8), int("33235", 8)]

    def test_zero_blocks_is_domain_error(self):
        code, _ = run_cli(["expand", "--base", "10", "1", "13", "--blocks", "0"])
        assert code == 1


class TestMidyCheckCommand:
    def test_all_methods_report_failure(self):
        code, out = run_cli(["midy-check", "--base", "8", "75", "5", "--method", "all"])
        assert code == 0
        lines = out.splitlines()
        assert len(lines) == 3
        assert all("fails" in line for line in lines)
        assert lines[0].startswith("ppl2:")
        assert lines[1].startswith("ppl3:")
        assert lines[2].startswith("direct:")

    def test_json_round_trip(self):
        code, out = run_cli(
            ["midy-check", "--base", "8", "75", "5", "--method", "all", "--format", "json"]
        )
        rows = [json.loads(line) for line in out.splitlines()]
        assert [r["method"] for r in rows] == ["ppl2", "ppl3", "direct"]
        assert all(r["holds"] is False for r in rows)
        # re-running the referenced operation reproduces the values
        for row in rows:
            again = {
                "ppl2": midy.midy_check_ppl2,
                "ppl3": midy.midy_check_ppl3,
                "direct": midy.midy_check_direct,
            }[row["method"]](row["base"], row["n"], row["d"])
            assert again.holds == row["holds"]

    def test_precondition_exit(self):
        code, _ = run_cli(["midy-check", "--base", "10", "13", "4"])
        assert code == 1


class TestMidySetCommand:
    def test_exact_json_shape(self):
        code, out = run_cli(["midy-set", "--base", "8", "75", "--format", "json"])
        assert code == 0
        assert out == '{"base":8,"n":75,"order":20,"midy_set":[4,20]}\n'

    def test_json_round_trip(self):
        _, out = run_cli(["midy-set", "--base", "10", "91", "--format", "json"])
        row = json.loads(out)
        again = midy.midy_set(row["base"], row["n"])
        assert list(again.members) == row["midy_set"]
        assert again.order == row["order"]

    def test_human(self):
        code, out = run_cli(["midy-set", "--base", "10", "13"])
        assert out.splitlines() == ["order: 6", "members: 2 3 6"]


class TestJenkinsCommand:
    def test_both_routes(self):
        code, out = run_cli(
            ["jenkins", "--base", "10", "--d", "3", "--prime", "7:1", "--prime", "13:1"]
        )
        assert code == 0
        assert out.splitlines() == ["formula: holds", "gcd: holds"]

    def test_gcd_certificate(self):
        _, out = run_cli(
            [
                "jenkins", "--base", "10", "--d", "2",
                "--prime", "11:1", "--prime", "101:1",
                "--route", "gcd", "--format", "json",
            ]
        )
        row = json.loads(out)
        assert row["holds"] is False
        assert row["certificate"] == {"g": 11}

    def test_bad_prime_spec_usage_error(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["jenkins", "--base", "10", "--d", "3", "--prime", "7"])
        assert info.value.code == 2

    def test_hypothesis_violation_domain_error(self):
        code, _ = run_cli(["jenkins", "--base", "10", "--d", "3", "--prime", "11:1"])
        assert code == 1


class TestPrimesCommand:
    def test_progression(self):
        code, out = run_cli(
            ["primes", "--base", "10", "--q", "3", "--v", "1", "--count", "2"]
        )
        assert code == 0
        assert out.splitlines() == ["7 (1 mod 3)", "19 (1 mod 9)"]

    def test_json(self):
        _, out = run_cli(
            ["primes", "--base", "10", "--q", "2", "--v", "1", "--count", "2",
             "--format", "json"]
        )
        row = json.loads(out)
        assert row["primes"] == [7, 17]
        assert row["moduli"] == [2, 8]

    def test_search_exhaustion_exit_code(self):
        code, _ = run_cli(
            ["primes", "--base", "10", "--q", "3", "--v", "4", "--count", "1",
             "--bound", "50"]
        )
        assert code == 3


class TestScanCommand:
    def test_csv_shape(self):
        code, out = run_cli(["scan", "--base", "10", "--from", "2", "--to", "13"])
        lines = out.splitlines()
        assert lines[0] == "n,base,order,midy_set"
        assert lines[1] == "3,10,1,"
        assert "13,10,6,2;3;6" in lines

    def test_rows_ascending_and_reverifiable(self):
        _, out = run_cli(
            ["scan", "--base", "8", "--from", "2", "--to", "80", "--format", "json"]
        )
        rows = [json.loads(line) for line in out.splitlines()]
        ns = [r["n"] for r in rows]
        assert ns == sorted(ns)
        for r in rows:
            s = midy.midy_set(r["base"], r["n"])
            assert list(s.members) == r["midy_set"]
            assert s.order == r["order"]
            assert order_mod(r["base"], r["n"]) == r["order"]
            members = set(r["midy_set"])
            for item in r["excluded"]:
                assert item["d"] not in members
                assert item["certificate"] is not None

    def test_jobs_do_not_change_output(self):
        _, seq = run_cli(["scan", "--base", "10", "--from", "2", "--to", "120"])
        _, par = run_cli(
            ["scan", "--base", "10", "--from", "2", "--to", "120", "--jobs", "4"]
        )
        assert seq == par

    def test_bad_range(self):
        code, _ = run_cli(["scan", "--base", "10", "--from", "9", "--to", "4"])
        assert code == 1


class TestCache:
    def test_round_trip_and_validation(self, tmp_path):
        path = tmp_path / "cache.txt"
        path.write_text(
            "75=3^1*5^2\n"  # valid
            "10=2^1*7^1\n"  # wrong product: ignored
            "12=4^1*3^1\n"  # 4 is not prime: ignored
            "8=2^1*2^2\n"  # repeated prime: ignored
            "junk\n"  # unparseable: ignored
        )
        cache = cli.FactorCache(str(path))
        assert set(cache.entries) == {75}
        assert cache.factor(75).factors == ((3, 1), (5, 2))
        assert cache.factor(12).factors == ((2, 2), (3, 1))
        cache.flush()
        text = path.read_text().splitlines()
        assert "12=2^2*3^1" in text
        # appended entries load back and repeated flushes add nothing
        again = cli.FactorCache(str(path))
        assert set(again.entries) == {12, 75}
        again.flush()
        assert path.read_text().splitlines() == text

    def test_scan_uses_cache_env(self, tmp_path, monkeypatch):
        path = tmp_path / "envcache.txt"
        monkeypatch.setenv(cli.CACHE_ENV_VAR, str(path))
        code, first = run_cli(["scan", "--base", "10", "--from", "2", "--to", "30"])
        assert code == 0
        assert path.exists()
        cached_lines = path.read_text().splitlines()
        assert all("=" in line for line in cached_lines)
        # a second scan reuses the file and produces identical output
        code, second = run_cli(["scan", "--base", "10", "--from", "2", "--to", "30"])
        assert second == first
        assert path.read_text().splitlines() == cached_lines


class TestUsageErrors:
    def test_unknown_command(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["frobnicate"])
        assert info.value.code == 2

    def test_base_out_of_range(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["order", "--base", "63", "13"])
        assert info.value.code == 2

    def test_missing_required(self):
        with pytest.raises(SystemExit) as info:
            cli.main(["order", "13"])
        assert info.value.code == 2
