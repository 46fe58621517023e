import csv
import io
import json
import re
from fractions import Fraction

import pytest

from rslist.galois import field_create
from rslist.harness import cli
from rslist.harness.experiments import (
    CensusConfig,
    census_bad_fraction,
    certify_explicit_code,
    explicit_code,
    johnson_crossing,
    johnson_rows,
    johnson_table,
)
from rslist.harness.suites import CHECKS, SUITES, run_suite
from rslist.rscode import RSCode, code_to_json

F8 = field_create(2, 3)


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_code(tmp_path, code, name="code.json"):
    p = tmp_path / name
    p.write_text(json.dumps(code_to_json(code)))
    return str(p)


# -------------------------------------------------------------- experiments
@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_explicit_codes_certify(n):
    rep = certify_explicit_code(2, n, cross_checks=3 if n >= 4 else 0, seed=1)
    assert rep.passed and rep.basis_ok and rep.field_degree == 2 ** n
    assert rep.to_json()["certificate"]["verdict"] == "pass"


def test_explicit_code_degree_cap():
    with pytest.raises(ValueError):
        explicit_code(3, 4)


def test_census_within_union_bound_across_seeds():
    F = field_create(2, 20)
    for seed in range(10):
        rep = census_bad_fraction(CensusConfig(5, 2, F, 3, seed=seed))
        assert rep.within_bound and rep.failures == 0
        assert rep.union_bound == Fraction(165, 2 ** 18)


def test_census_failures_shrink_with_field_size():
    small = census_bad_fraction(CensusConfig(6, 3, field_create(2, 4), 40, seed=1))
    large = census_bad_fraction(CensusConfig(6, 3, field_create(2, 10), 40, seed=1))
    assert small.failure_fraction > large.failure_fraction
    assert large.within_bound


def test_census_cross_check_consistency():
    rep = census_bad_fraction(CensusConfig(5, 2, F8, 4, seed=0, cross_check=2))
    assert rep.cross_checked == 2 and rep.cross_check_inconsistencies == 0


def test_census_config_errors():
    with pytest.raises(ValueError):
        CensusConfig(3, 3, F8, 1)
    with pytest.raises(ValueError):
        CensusConfig(9, 2, F8, 1)
    with pytest.raises(ValueError):
        CensusConfig(5, 2, F8, 0)


def test_johnson_crossings():
    assert johnson_crossing(2) == Fraction(1, 4)
    assert johnson_crossing(3) == Fraction(1, 9)
    with pytest.raises(ValueError):
        johnson_crossing(1)
    rows = {(r["n"], r["k"]): r for r in johnson_rows([4, 8, 9], None, 2)}
    assert rows[(4, 1)]["comparison"] == "equal"
    assert rows[(4, 2)]["beats_johnson"] and not rows[(8, 1)]["beats_johnson"]
    rows = {(r["n"], r["k"]): r for r in johnson_rows([9], None, 3)}
    assert rows[(9, 1)]["comparison"] == "equal"


def test_johnson_table_csv():
    text = johnson_table(range(2, 6))
    rows = list(csv.DictReader(io.StringIO(text)))
    assert len(rows) == 1 + 2 + 3 + 4
    assert rows[0]["johnson_radius"] == "1 - sqrt(1/2)"


# --------------------------------------------------------------- suites
def test_suite_registry():
    assert sorted(CHECKS) == list(range(1, 13))
    assert sorted(c for name, cs in SUITES.items() if name != "all" for c in cs) == list(range(1, 13))
    with pytest.raises(ValueError, match="lemma-det1"):
        run_suite("nope")


def test_check_line_format():
    r = CHECKS[8]()
    assert re.fullmatch(r"PASS criterion +8 .+ \(\d+\.\d\ds, limit 1s\)", r.line())


# ------------------------------------------------------------------ cli
def test_cli_field(capsys):
    code, out, _ = run(capsys, "field", "--p", "2", "--m", "4")
    assert code == 0 and json.loads(out)["order"] == 16
    code, _, err = run(capsys, "field", "--p", "4", "--m", "1")
    assert code == 2 and "error" in err


def test_cli_tower(capsys):
    code, out, _ = run(capsys, "tower", "--k", "2", "--n", "3")
    d = json.loads(out)
    assert code == 0 and d["degree"] == 8 and d["monomial_basis"]
    assert len(d["code"]["alpha"]) == 3


def test_cli_certify(capsys, tmp_path):
    good = write_code(tmp_path, explicit_code(2, 4), "good.json")
    code, out, _ = run(capsys, "certify", "--code", good)
    assert code == 0 and json.loads(out)["verdict"] == "pass"
    bad = write_code(tmp_path, RSCode([1, 2, 3, 4, 5, 6], 3, F8), "bad.json")
    code, out, _ = run(capsys, "certify", "--code", bad)
    assert code == 1 and json.loads(out)["verdict"] == "fail"
    code, out, _ = run(capsys, "certify", "--code", good, "--randomized", "--trials", "5")
    assert code == 0 and json.loads(out)["complete"] is False
    code, _, _ = run(capsys, "certify", "--code", str(tmp_path / "missing.json"))
    assert code == 2


def test_cli_bruteforce(capsys, tmp_path):
    path = write_code(tmp_path, RSCode([1, 2, 3, 4, 5, 6], 3, F8))
    code, out, _ = run(capsys, "bruteforce", "--code", path, "--radius", "2", "--list", "2")
    d = json.loads(out)
    assert code == 1 and not d["decodable"] and len(d["witness"]["codewords"]) == 3
    code, out, _ = run(capsys, "bruteforce", "--code", path, "--radius", "1", "--list", "1")
    assert code == 0


def test_cli_nonsingular(capsys, tmp_path):
    p = tmp_path / "sys.json"
    p.write_text(json.dumps({"n": 6, "sets": [[1, 2, 4], [1, 3, 5], [2, 3, 6], [4, 5, 6]]}))
    code, out, _ = run(capsys, "nonsingular", "--system", str(p), "--k", "2", "--t", "4")
    d = json.loads(out)
    assert code == 0 and d["method"] == "exact" and d["verdict"] == "nonsingular"
    code, out, _ = run(capsys, "nonsingular", "--system", str(p), "--k", "2", "--t", "4", "--randomized")
    assert code == 0 and json.loads(out)["method"] == "randomized"
    code, _, _ = run(capsys, "nonsingular", "--system", str(p), "--k", "2", "--t", "3")
    assert code == 2


def test_cli_round_and_unimodularity(capsys):
    code, out, _ = run(capsys, "round", "--x", "1,1,1,1,1,1", "--k", "2")
    assert code == 0 and json.loads(out)["z"] == [0, 1, 0, 0, 1, 1]
    code, _, _ = run(capsys, "round", "--x", "1,1,1,0,0,0", "--k", "1")
    assert code == 2
    code, out, _ = run(capsys, "unimodularity")
    assert code == 0 and json.loads(out)["rank6_subsets"] == 162


def test_cli_census_and_johnson(capsys, tmp_path):
    code, out, _ = run(capsys, "census", "--n", "5", "--k", "2", "--samples", "2", "--seed", "4")
    assert code == 0 and json.loads(out)["union_bound"] == "165/262144"
    out_path = tmp_path / "j.csv"
    code, _, _ = run(capsys, "johnson", "--n-min", "4", "--n-max", "4", "--out", str(out_path))
    assert code == 0 and out_path.read_text().splitlines()[0].startswith("n,k,R,L")


def test_cli_is_deterministic(capsys):
    argv = ["census", "--n", "6", "--k", "3", "--m", "6", "--samples", "4", "--seed", "11"]
    first = run(capsys, *argv)
    second = run(capsys, *argv[:-2], "--seed", "11")
    assert first == second


def test_cli_suite(capsys):
    code, out, err = run(capsys, "suite", "rounding")
    assert code == 0 and json.loads(out)["passed"]
    assert err.count("PASS") == 2
    code, _, err = run(capsys, "suite", "bogus")
    assert code == 2 and "bogus" in err
