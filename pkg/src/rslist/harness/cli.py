"""Command line interface: ``python3 -m rslist <command> ...``.

Results go to stdout (or ``--out``) as JSON, except ``johnson`` which writes
CSV.  Exit status is 0 when the reported check holds, 1 when it does not, and
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import comb
from typing import Any, List, Optional

from ..galois.fields import element_to_json, field_create, field_from_json, field_to_json
from ..galois.tower import build_tower, verify_monomial_basis
from ..intmat import (
    build_twise,
    certificate_check_L2,
    certificate_spot_check,
    nonsingular_exact_small,
    nonsingular_randomized,
)
from ..listdecode import is_list_decodable, optimal_radius
from ..rounding import RoundingInstance, round_to_binary, rounding_valid, verify_unimodularity
from ..rscode import EvalVector, RSCode, code_from_json, code_to_json, words_to_json
from ..weights import SetSystem, check_conjecture_hypotheses
from .experiments import CensusConfig, census_bad_fraction, johnson_table
from .suites import SUITES, run_suite


def _load_json(path: str) -> Any:
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _emit(args, payload: Any) -> None:
    text = payload if isinstance(payload, str) else json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _int_list(s: str) -> List[int]:
    return [int(x) for x in s.split(",") if x.strip()]


# ------------------------------------------------------------------ commands
def cmd_field(args) -> int:
    modulus: Optional[Any] = None
    if args.modulus:
        modulus = int(args.modulus, 0) if "," not in args.modulus else _int_list(args.modulus)
    F = field_create(args.p, args.m, modulus)
    _emit(args, {"field": field_to_json(F), "order": F.order, "degree": F.degree})
    return 0


def cmd_tower(args) -> int:
    top, gens, levels = build_tower(args.k, args.n)
    ok = verify_monomial_basis(gens, args.k)
    out = {
        "field": field_to_json(top),
        "degree": top.degree,
        "generators": [element_to_json(top, g.value) for g in gens],
        "monomial_basis": ok,
        "code": code_to_json(RSCode(EvalVector(top, tuple(g.value for g in gens)), args.k)),
    }
    _emit(args, out)
    return 0 if ok else 1


def cmd_certify(args) -> int:
    code = code_from_json(_load_json(args.code))
    if args.randomized:
        rep = certificate_spot_check(code, args.trials, args.seed)
    else:
        rep = certificate_check_L2(code, fail_fast=not args.all)
    _emit(args, rep.to_json())
    return 0 if rep.passed else 1


def cmd_bruteforce(args) -> int:
    code = code_from_json(_load_json(args.code))
    v = is_list_decodable(code, args.radius, args.list, threads=args.threads)
    out = {"decodable": v.decodable, "radius": args.radius, "list": args.list,
           "subsets_checked": v.subsets_checked}
    if v.witness is not None:
        y, words = v.witness
        out["witness"] = {"center": words_to_json(code.field, [y])[0],
                          "codewords": words_to_json(code.field, words)}
    _emit(args, out)
    return 0 if v.decodable else 1


def cmd_nonsingular(args) -> int:
    S = SetSystem.from_json(_load_json(args.system))
    if S.t != args.t:
        raise ValueError(f"system has {S.t} sets, --t says {args.t}")
    out = {"t": S.t, "k": args.k, "hypotheses": check_conjecture_hypotheses(S, args.k)}
    M = build_twise(args.k, S.sets, n=S.n)
    out["shape"] = list(M.shape)
    if comb(S.t, 2) * args.k <= 12 and not args.randomized:
        ok = nonsingular_exact_small(M)
        out.update({"method": "exact", "verdict": "nonsingular" if ok else "singular"})
    else:
        v = nonsingular_randomized(M, field_create(2, 64), args.trials, args.seed)
        ok = v.nonsingular
        out.update({"method": "randomized", **v.to_json()})
    _emit(args, out)
    return 0 if ok else 1


def cmd_round(args) -> int:
    inst = RoundingInstance(tuple(_int_list(args.x)), args.k)
    res = round_to_binary(inst)
    out = res.to_json()
    out["valid"] = rounding_valid(inst, res.z)
    _emit(args, out)
    return 0 if out["valid"] else 1


def cmd_unimodularity(args) -> int:
    rep = verify_unimodularity()
    _emit(args, rep.to_json())
    return 0 if rep.ok else 1


def cmd_census(args) -> int:
    F = field_from_json(_load_json(args.field)) if args.field else field_create(2, args.m)
    rep = census_bad_fraction(CensusConfig(args.n, args.k, F, args.samples, args.seed, args.cross_check))
    out = rep.to_json()
    out["radius"] = (2 * (args.n - args.k)) // 3
    out["divisible"] = optimal_radius(args.n, args.k, 2).divisible
    _emit(args, out)
    return 0 if rep.within_bound and rep.cross_check_inconsistencies == 0 else 1


def cmd_johnson(args) -> int:
    ks = _int_list(args.k) if args.k else None
    _emit(args, johnson_table(range(args.n_min, args.n_max + 1), ks, args.L))
    return 0


def cmd_suite(args) -> int:
    results = run_suite(args.name, seed=args.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    _emit(args, {"suite": args.name, "passed": ok, "checks": [r.to_json() for r in results]})
    return 0 if ok else 1


# -------------------------------------------------------------------- parser
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rslist", description="List-decoding experiments for Reed-Solomon codes.")
    p.add_argument("--seed", type=int, default=0, help="base seed for every random choice")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--out", default=None, help="write output here instead of stdout")
    # repeated on each subcommand so the flags may follow it
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common.add_argument("--out", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("field", parents=[common], help="describe GF(p^m)")
    s.add_argument("--p", type=int, required=True)
    s.add_argument("--m", type=int, default=1)
    s.add_argument("--modulus", help="bitmask (e.g. 0x13) or low-first coefficients 1,1,0,0,1")
    s.set_defaults(func=cmd_field)

    s = sub.add_parser("tower", parents=[common], help="build GF(2^{k^n}) and its explicit code")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.set_defaults(func=cmd_tower)

    s = sub.add_parser("certify", parents=[common], help="L = 2 determinant certificate for a code")
    s.add_argument("--code", required=True, help="code JSON file, or - for stdin")
    mode = s.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="evaluate the whole family (default)")
    mode.add_argument("--randomized", action="store_true", help="evaluate a random sample of the family")
    s.add_argument("--trials", type=int, default=100)
    s.add_argument("--all", action="store_true", help="keep evaluating after the first vanishing determinant")
    s.set_defaults(func=cmd_certify)

    s = sub.add_parser("bruteforce", parents=[common], help="exhaustive list-decodability check")
    s.add_argument("--code", required=True)
    s.add_argument("--radius", type=int, required=True)
    s.add_argument("--list", type=int, required=True)
    s.set_defaults(func=cmd_bruteforce)

    s = sub.add_parser("nonsingular", parents=[common], help="nonsingularity of a t-wise intersection matrix")
    s.add_argument("--system", required=True, help='JSON {"n": ..., "sets": [[1-based elements], ...]}')
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--t", type=int, required=True)
    s.add_argument("--randomized", action="store_true", help="force randomized rank tests")
    s.add_argument("--trials", type=int, default=3)
    s.set_defaults(func=cmd_nonsingular)

    s = sub.add_parser("round", parents=[common], help="round edge counts on K_4 to a binary vector")
    s.add_argument("--x", required=True, help="six counts in edge order 12,13,23,14,24,34")
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_round)

    s = sub.add_parser("unimodularity", parents=[common], help="check the rank-6 subsystems")
    s.set_defaults(func=cmd_unimodularity)

    s = sub.add_parser("census", parents=[common], help="certificate failures of random codes")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--m", type=int, default=20, help="field GF(2^m) (default 20)")
    s.add_argument("--field", help="field JSON file instead of --m")
    s.add_argument("--samples", type=int, default=1000)
    s.add_argument("--cross-check", type=int, default=0, help="brute-force this many samples too")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("johnson", parents=[common], help="CSV of optimal radius against Johnson")
    s.add_argument("--n-min", type=int, default=2)
    s.add_argument("--n-max", type=int, default=12)
    s.add_argument("--k", help="comma-separated dimensions (default: all 1 <= k < n)")
    s.add_argument("--L", type=int, default=2)
    s.set_defaults(func=cmd_johnson)

    s = sub.add_parser("suite", parents=[common], help="run an acceptance suite")
    s.add_argument("name", help="one of: " + ", ".join(SUITES))
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
