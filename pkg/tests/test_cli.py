import json
import subprocess
import sys

import pytest

from powersums.cli import dispatch, main


def run(*argv):
    result, code = dispatch(list(argv))
    return result, code


def test_powersum_fast():
    result, code = run("powersum", "--m", "42", "--k", "42", "--mod", "42", "--method", "fast")
    assert code == 0 and result.result == 1


def test_powersum_naive():
    result, code = run("powersum", "--m", "4", "--k", "5", "--mod", "5", "--method", "naive")
    assert code == 0 and result.result == 4


def test_powersum_fast_needs_matching_modulus():
    assert run("powersum", "--m", "4", "--k", "5", "--mod", "7")[1] == 1


def test_nq_profile_empty():
    result, code = run("nq", "profile", "--q", "52495396602")
    assert code == 0
    assert result.result["empty"] is True and result.result["witness"] == 5


def test_nq_member_with_oracle():
    result, code = run("nq", "member", "--q", "2", "--n", "3", "--oracle")
    assert code == 0
    assert result.result == {"member": False, "failing_condition": "ii_forbidden_prime", "witness": 3, "oracle": False}


def test_density_bounds_json(capsys):
    code = main(["density", "bounds", "--q", "47058", "--primes", "50", "--tail-cutoff", "100000", "--json"])
    assert code == 0
    data = json.loads(capsys.readouterr().out)
    assert data["result"]["primitive_moduli"][:3] == ["10", "35", "235"]
    assert data["result"]["union_exact"] == {
        "num": "48357225625417447595522734010896225250266313",
        "den": "403167008827681283131141033075588326251331565",
    }
    assert "timing_ms" not in data


def test_text_output(capsys):
    assert main(["special-set", "--limit", "2000"]) == 0
    out = capsys.readouterr().out
    assert "result: [1, 2, 6, 42, 1806]" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["nq", "profile", "--q", "10"],
        ["density", "bounds", "--q", "52495396602"],
        ["density", "bounds", "--q", "8490421583559688410706771261086"],
        ["nq", "enumerate", "--q", "2", "--limit", "1000", "--sieve-limit", "100"],
        ["powersum", "--m", "2", "--k", "10000001", "--mod", "7", "--method", "naive"],
    ],
)
def test_domain_errors_exit_1(argv, capsys):
    assert main(argv) == 1
    assert "psum: error" in capsys.readouterr().err


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["frobnicate"],
        ["nq", "profile"],
        ["nq", "profile", "--q", "-4"],
        ["powersum", "--m", "1.5", "--k", "2", "--mod", "2"],
        ["density", "bounds", "--q", "2", "--tail-method", "magic"],
    ],
)
def test_usage_errors_exit_2(argv, capsys):
    assert main(argv) == 2
    assert "usage" in capsys.readouterr().err


def test_json_is_deterministic(capsys):
    argv = ["density", "moduli", "--q", "47058", "--primes", "20", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first


def test_json_byte_identical_across_processes():
    argv = [sys.executable, "-m", "powersums.cli", "pseudoperfect", "search", "--limit", "50000", "--json"]
    outs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["result"] == ["2", "6", "42", "1806", "47058"]


def test_timing_flag(capsys):
    main(["closure", "primes", "--limit", "100", "--json", "--timing"])
    assert "timing_ms" in json.loads(capsys.readouterr().out)


def test_env_then_flag_precedence(monkeypatch):
    result, _ = run("density", "bounds", "--q", "2", "--tail-cutoff", "100000")
    assert result.provenance["config"]["prime_count"] == 50
    monkeypatch.setenv("PSUM_PRIME_COUNT", "20")
    result, _ = run("density", "bounds", "--q", "2", "--tail-cutoff", "100000")
    assert result.provenance["config"]["prime_count"] == 20
    assert result.result["prime_cutoff_index"] == 20
    result, _ = run("density", "bounds", "--q", "2", "--primes", "30", "--tail-cutoff", "100000")
    assert result.provenance["config"]["prime_count"] == 30


def test_env_budget_applies(monkeypatch):
    monkeypatch.setenv("PSUM_SEARCH_BUDGET", "100")
    assert run("pseudoperfect", "search", "--limit", "1000")[1] == 1
    assert run("pseudoperfect", "search", "--limit", "1000", "--search-budget", "1000")[1] == 0


def test_bad_env_is_usage_error(monkeypatch):
    monkeypatch.setenv("PSUM_TAIL_CUTOFF", "lots")
    assert run("density", "bounds", "--q", "2")[1] == 2


def test_other_commands():
    assert run("pseudoperfect", "check", "--n", "42")[0].result["is_primary"] is True
    assert run("closure", "squarefree", "--limit", "2000")[0].result == [1, 2, 6, 42, 1806]
    assert run("nq", "enumerate", "--q", "1", "--limit", "10")[0].result == [1, 3, 5, 7, 9]
    r = run("density", "empirical", "--q", "1", "--limit", "1000")[0]
    assert r.result["density"] == {"num": "1", "den": "2"}
    r = run("density", "theoretical-lower", "--q", "2")[0]
    assert r.parameters["y"] == 286


def test_selftest_subset():
    result, code = run("selftest", "--only", "3", "--only", "7")
    assert code == 0
    assert [r["criterion"] for r in result.result] == [3, 7]
    assert all(r["passed"] for r in result.result)


def test_version(capsys):
    assert main(["--version"]) == 0
    assert "psum" in capsys.readouterr().out
