"""End-to-end reproduction checks grouped into named suites.

Each check returns a CheckResult whose ``details`` are deterministic given
the seed; elapsed time is kept on the object but left out of the JSON.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Dict, List

from ..cycles import b4_columns_independent, cycle_basis_matrix, edge_order, has_common_vertex, is_in_cycle_space
from ..galois.fields import field_create
from ..galois.gf2 import bits_to_int, gf2_rank
from ..intmat import (
    build_twise,
    certificate_check_L2,
    det_3wise_symbolic,
    enumerate_S,
    nonsingular_exact_small,
    nonsingular_randomized,
    predicted_support_3wise,
)
from ..listdecode import is_list_decodable, singleton_violation_witness
from ..rounding import random_instance, round_to_binary, rounding_valid, verify_unimodularity
from ..rscode import RSCode, hamming_distance
from ..util import derive_seed
from ..weights import (
    AtomProfile,
    SetSystem,
    atoms,
    check_conjecture_hypotheses,
    enumerate_binary_profiles,
    nonempty_subsets,
    random_qualifying_profile,
    realize_profile,
    weight,
    weight_from_atoms,
)
from .experiments import (
    CensusConfig,
    census_bad_fraction,
    certify_explicit_code,
    johnson_crossing,
    johnson_rows,
    random_eval_vector,
)

B4_DISPLAYED = [
    [1, 0, 0, 1, 1, 0],
    [0, 1, 0, 1, 0, 1],
    [0, 0, 1, 0, 1, 1],
]


@dataclass
class CheckResult:
    criterion: int
    name: str
    passed: bool
    details: Dict[str, Any] = dc_field(default_factory=dict)
    elapsed: float = 0.0
    time_limit: float = 0.0

    @property
    def within_time(self) -> bool:
        return self.elapsed <= self.time_limit

    def line(self) -> str:
        status = "PASS" if self.passed and self.within_time else "FAIL"
        return f"{status} criterion {self.criterion:2d} {self.name} ({self.elapsed:.2f}s, limit {self.time_limit:.0f}s)"

    def to_json(self) -> Dict[str, Any]:
        return {"criterion": self.criterion, "name": self.name, "passed": self.passed, "details": self.details}


def _timed(criterion: int, name: str, limit: float, fn: Callable[[], Dict[str, Any]]) -> CheckResult:
    t0 = time.perf_counter()
    details = fn()
    elapsed = time.perf_counter() - t0
    return CheckResult(criterion, name, bool(details.pop("passed")), details, elapsed, limit)


# ---------------------------------------------------------------- criteria
def check_b4_golden(seed: int = 0) -> CheckResult:
    def run():
        b3 = cycle_basis_matrix(3)
        b4 = cycle_basis_matrix(4)
        return {"passed": b3 == [[1, 1, 1]] and b4 == B4_DISPLAYED,
                "B3": b3, "B4": b4, "edges": [f"{i}{j}" for i, j in edge_order(4)]}
    return _timed(1, "B_4 / B_3 golden matrices", 1, run)


def check_fact_independence(seed: int = 0) -> CheckResult:
    def run():
        edges = edge_order(4).edges
        mism = 0
        indep = 0
        for tri in combinations(edges, 3):
            a = b4_columns_independent(tri)
            indep += a
            mism += a != (not has_common_vertex(tri))
        # the cycle space of K_t has dimension C(t-1, 2)
        dims = {t: gf2_rank([bits_to_int(r) for r in cycle_basis_matrix(t)]) for t in range(3, 8)}
        dims_ok = all(d == (t - 1) * (t - 2) // 2 for t, d in dims.items())
        tri_ok = all(is_in_cycle_space([int(set(e) <= set(T)) for e in edge_order(5)], 5)
                     for T in combinations(range(1, 6), 3))
        return {"passed": mism == 0 and dims_ok and tri_ok, "triples": 20, "independent": indep,
                "mismatches": mism, "cycle_space_dims": dims}
    return _timed(2, "B_4 column triples: independent iff no common vertex", 1, run)


def check_lemma_det1(seed: int = 0, max_s: int = 3, ground: int = 8) -> CheckResult:
    def run():
        mism = 0
        count = 0
        for tr in enumerate_S(ground, max_s):
            d = det_3wise_symbolic(tr.s, *tr.sets, n=ground)
            count += 1
            pred = predicted_support_3wise(tr.s, tr.a12, tr.a13, tr.a23, ground)
            ok = (d.support() == pred and all(abs(c) == 1 for c in d.terms.values())
                  and d.total_degree == tr.s * (tr.s - 1))
            mism += not ok
        return {"passed": mism == 0, "triples": count, "mismatches": mism}
    return _timed(3, "3-wise determinant support and +-1 coefficients", 120, run)


def check_certificate_consistency(seed: int = 0, samples: int = 50) -> CheckResult:
    def run():
        out: Dict[str, Any] = {}
        bad = 0
        for m in (3, 4):
            F = field_create(2, m)
            rng = random.Random(derive_seed(seed, "cert-vs-brute", m))
            stats = {"samples": 0, "certificate_pass": 0, "decodable": 0}
            for _ in range(samples):
                code = RSCode(random_eval_vector(F, 5, rng), 2)
                cert = certificate_check_L2(code).passed
                dec = is_list_decodable(code, 2, 2).decodable
                stats["samples"] += 1
                stats["certificate_pass"] += cert
                stats["decodable"] += dec
                bad += cert and not dec
            out[f"q={F.order}"] = stats
        # a parameter set where violations exist, so the necessity direction is exercised
        F = field_create(2, 3)
        rng = random.Random(derive_seed(seed, "cert-vs-brute-k3"))
        k3 = {"samples": 0, "violations": 0, "certificate_fail": 0}
        for _ in range(5):
            code = RSCode(random_eval_vector(F, 6, rng), 3)
            cert = certificate_check_L2(code).passed
            dec = is_list_decodable(code, 2, 2).decodable
            k3["samples"] += 1
            k3["violations"] += not dec
            k3["certificate_fail"] += not cert
            bad += cert and not dec
        out["n=6,k=3,q=8"] = k3
        out["inconsistencies"] = bad
        out["passed"] = bad == 0
        return out
    return _timed(4, "certificate vs brute force at n=5, k=2", 600, run)


def check_singleton_witness(seed: int = 0, instances: int = 100) -> CheckResult:
    def run():
        rng = random.Random(derive_seed(seed, "singleton"))
        fails = 0
        done = 0
        while done < instances:
            L = rng.randint(1, 3)
            q = rng.randint(2, 4)
            n = rng.randint(2, 6)
            rn = rng.randint(0, n)
            a = min(rn + rn // L, n)
            threshold = L * q ** (n - a)
            if threshold >= q ** n:
                continue
            size = rng.randint(threshold + 1, min(q ** n, threshold + 50))
            space = q ** n
            picks = rng.sample(range(space), size)
            words = [tuple((x // q ** i) % q for i in range(n)) for x in picks]
            y, chosen = singleton_violation_witness(words, n, rn, L, q)
            ok = (len(set(chosen)) == L + 1 and set(chosen) <= set(words)
                  and all(hamming_distance(y, c) <= rn for c in chosen))
            fails += not ok
            done += 1
        return {"passed": fails == 0, "instances": done, "failures": fails}
    return _timed(5, "generalized Singleton witness", 60, run)


def check_fourwise(seed: int = 0, samples: int = 200) -> CheckResult:
    def run():
        out: Dict[str, Any] = {}
        # k = 1: every 0/1 atom profile; the matrix is constant, so its GF(2) rank decides
        profs = enumerate_binary_profiles(4, 1)
        G2 = field_create(2, 1)
        k1_fail = 0
        for p in profs:
            S = realize_profile(4, p)
            M = build_twise(1, S.sets, n=S.n)
            rows = [bits_to_int(r) for r in M.evaluate(G2, [0] * M.nvars)]
            k1_fail += gf2_rank(rows) != 6 or not nonsingular_exact_small(M)
        out["k=1"] = {"profiles": len(profs), "failures": k1_fail}
        rng = random.Random(derive_seed(seed, "fourwise", 2))
        k2_fail = 0
        for _ in range(samples):
            S = realize_profile(4, random_qualifying_profile(4, 2, rng))
            assert check_conjecture_hypotheses(S, 2)
            k2_fail += not nonsingular_exact_small(build_twise(2, S.sets, n=S.n))
        out["k=2"] = {"systems": samples, "failures": k2_fail, "method": "exact"}
        F = field_create(2, 64)
        rng = random.Random(derive_seed(seed, "fourwise", 3))
        k3_fail = 0
        worst = Fraction(0)
        for i in range(samples):
            S = realize_profile(4, random_qualifying_profile(4, 3, rng))
            assert check_conjecture_hypotheses(S, 3)
            v = nonsingular_randomized(build_twise(3, S.sets, n=S.n), F, 3, derive_seed(seed, "k3", i))
            k3_fail += not v.nonsingular
            worst = max(worst, Fraction(3 * v.degree_bound, F.order))
        out["k=3"] = {"systems": samples, "failures": k3_fail, "method": "randomized",
                      "false_negative_budget": f"3*{int(worst * F.order / 3)}/2^64"}
        out["passed"] = k1_fail == 0 and k2_fail == 0 and k3_fail == 0
        return out
    return _timed(6, "4-wise intersection matrices are nonsingular", 900, run)


def check_rounding(seed: int = 0, instances: int = 500) -> CheckResult:
    def run():
        rng = random.Random(derive_seed(seed, "rounding"))
        fails = 0
        most = 0
        for _ in range(instances):
            inst = random_instance(rng.randint(1, 6), rng)
            res = round_to_binary(inst)
            most = max(most, res.iterations)
            fails += not rounding_valid(inst, res.z) or res.iterations > 6
        return {"passed": fails == 0, "instances": instances, "failures": fails, "max_iterations": most}
    return _timed(7, "rounding to a binary vector", 60, run)


def check_unimodularity(seed: int = 0) -> CheckResult:
    def run():
        rep = verify_unimodularity()
        d = rep.to_json()
        d["passed"] = rep.ok and rep.candidates == 252
        return d
    return _timed(8, "rank-6 subsystems have determinant +-1", 1, run)


def check_explicit(seed: int = 0) -> CheckResult:
    def run():
        reports = {}
        ok = True
        for n in (2, 4, 5):
            rep = certify_explicit_code(2, n, cross_checks=5 if n == 5 else 0, seed=seed)
            reports[f"k=2,n={n}"] = rep.to_json()
            ok &= rep.passed
        return {"passed": ok, **reports}
    return _timed(9, "explicit tower codes pass the certificate", 600, run)


def check_census(seed: int = 0, samples: int = 1000) -> CheckResult:
    def run():
        rep = census_bad_fraction(CensusConfig(5, 2, field_create(2, 20), samples, seed))
        d = rep.to_json()
        d["passed"] = rep.within_bound
        return d
    return _timed(10, "census failure fraction within the union bound", 600, run)


def check_johnson(seed: int = 0) -> CheckResult:
    def run():
        out: Dict[str, Any] = {}
        ok = True
        for L, n in ((2, 12), (3, 18)):
            cross = johnson_crossing(L)
            rows = johnson_rows(range(2, n + 1), None, L)
            for row in rows:
                R = Fraction(row["R"])
                expect = "equal" if R == cross else ("greater" if R > cross else "less")
                ok &= row["comparison"] == expect and row["beats_johnson"] == (R > cross)
            at = [r for r in rows if Fraction(r["R"]) == cross]
            ok &= bool(at) and all(r["johnson_radius"] == r["optimal_radius"] for r in at)
            out[f"L={L}"] = {"crossing": str(cross), "rows": len(rows),
                             "radius_at_crossing": at[0]["optimal_radius"] if at else None}
        out["passed"] = ok
        return out
    return _timed(11, "Johnson crossings at R = 1/4 and R = 1/9", 1, run)


# the three displayed atom identities for four sets, as coefficient maps
def _f(*js: int) -> frozenset:
    return frozenset(js)


WT_IDENTITIES = {
    (1, 2): {_f(1, 2): 1, _f(1, 2, 3): 1, _f(1, 2, 4): 1, _f(1, 2, 3, 4): 1},
    (1, 2, 3): {_f(1, 2): 1, _f(1, 3): 1, _f(2, 3): 1, _f(1, 2, 4): 1, _f(1, 3, 4): 1,
                _f(2, 3, 4): 1, _f(1, 2, 3): 2, _f(1, 2, 3, 4): 2},
    (1, 2, 3, 4): {**{_f(*S): 1 for S in combinations(range(1, 5), 2)},
                   **{_f(*T): 2 for T in combinations(range(1, 5), 3)},
                   _f(1, 2, 3, 4): 3},
}


def check_weights(seed: int = 0, systems: int = 1000) -> CheckResult:
    def run():
        rng = random.Random(derive_seed(seed, "weights"))
        mism = 0
        for _ in range(systems):
            t = rng.randint(2, 5)
            n = rng.randint(1, 12)
            S = SetSystem(n, tuple(frozenset(x for x in range(n) if rng.random() < rng.random())
                                   for _ in range(t)))
            P = atoms(S)
            for J in nonempty_subsets(t):
                mism += weight(S, J) != weight_from_atoms(P, J)
        # the identities as linear forms: the coefficient of x_U is the weight of a single atom U
        ident_mism = 0
        for J, coeffs in WT_IDENTITIES.items():
            for U in nonempty_subsets(4):
                if weight_from_atoms(AtomProfile(4, {U: 1}), J) != coeffs.get(U, 0):
                    ident_mism += 1
        for _ in range(200):
            counts = {U: rng.randint(0, 3) for U in nonempty_subsets(4)}
            P = AtomProfile(4, counts)
            S = realize_profile(4, counts)
            for J, coeffs in WT_IDENTITIES.items():
                rhs = sum(c * counts[U] for U, c in coeffs.items())
                ident_mism += weight_from_atoms(P, J) != rhs or weight(S, J) != rhs
        return {"passed": mism == 0 and ident_mism == 0, "systems": systems,
                "mismatches": mism, "identity_mismatches": ident_mism}
    return _timed(12, "weight calculus and atom identities", 10, run)


CHECKS: Dict[int, Callable[..., CheckResult]] = {
    1: check_b4_golden,
    2: check_fact_independence,
    3: check_lemma_det1,
    4: check_certificate_consistency,
    5: check_singleton_witness,
    6: check_fourwise,
    7: check_rounding,
    8: check_unimodularity,
    9: check_explicit,
    10: check_census,
    11: check_johnson,
    12: check_weights,
}

SUITES: Dict[str, List[int]] = {
    "facts": [1, 2, 12],
    "lemma-det1": [3],
    "certificate": [4, 5],
    "fourwise": [6],
    "rounding": [7, 8],
    "towers": [9],
    "census": [10, 11],
}
SUITES["all"] = sorted(c for ids in SUITES.values() for c in ids)


def run_suite(name: str, seed: int = 0) -> List[CheckResult]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; valid suites: {', '.join(SUITES)}")
    return [CHECKS[c](seed=seed) for c in SUITES[name]]
