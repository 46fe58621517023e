"""Experiments: the explicit tower construction, random-code censuses and Johnson tables."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from ..galois.fields import FieldSpec, field_create
from ..galois.tower import build_tower, verify_monomial_basis
from ..intmat import certificate_check_L2, count_S
from ..listdecode import asymptotic_johnson_radius, exists_common_center, is_list_decodable
from ..rscode import EvalVector, RSCode
from ..util import derive_seed

TOWER_DEGREE_CAP = 32


@dataclass
class ExplicitReport:
    k: int
    n: int
    field_degree: int
    moduli: List[List[int]]
    basis_ok: bool
    certificate: Dict[str, Any]
    cross_checks: List[bool] = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.basis_ok and self.certificate["verdict"] == "pass" and all(self.cross_checks)

    def to_json(self) -> Dict[str, Any]:
        return {
            "k": self.k,
            "n": self.n,
            "field_degree": self.field_degree,
            "moduli": self.moduli,
            "monomial_basis": self.basis_ok,
            "certificate": self.certificate,
            "cross_checks_without_center": sum(self.cross_checks),
            "cross_checks": len(self.cross_checks),
            "passed": self.passed,
        }


def explicit_code(k: int, n: int) -> RSCode:
    """The [n, k] code whose evaluation points are the tower generators."""
    if k ** n > TOWER_DEGREE_CAP:
        raise ValueError(f"k^n = {k ** n} exceeds the tower degree cap {TOWER_DEGREE_CAP}")
    top, gens, _ = build_tower(k, n)
    return RSCode(EvalVector(top, tuple(g.value for g in gens)), k)


def certify_explicit_code(k: int, n: int, cross_checks: int = 0, seed: int = 0) -> ExplicitReport:
    """Build GF(2^{k^n}), check the monomial basis, and run the L = 2 certificate.

    With ``cross_checks`` > 0 that many random triples of distinct codewords
    are also searched for a common center at the certified radius.
    """
    code = explicit_code(k, n)
    F = code.field
    basis_ok = verify_monomial_basis(list(code.alpha.points), k, field=F)
    rep = certificate_check_L2(code)
    checks = []
    rng = random.Random(derive_seed(seed, "explicit", k, n))
    while len(checks) < cross_checks:
        words = {code.encode_coeffs([F.random_element(rng) for _ in range(k)]) for _ in range(3)}
        if len(words) == 3:
            checks.append(exists_common_center(sorted(words), rep.radius) is None)
    return ExplicitReport(k, n, F.degree, [list(m) for m in F.moduli], basis_ok, rep.to_json(), checks)


# ------------------------------------------------------------------- census
def random_eval_vector(field: FieldSpec, n: int, rng: random.Random) -> EvalVector:
    """Uniform ordered n-tuple of distinct elements, by sequential rejection."""
    if field.order < n:
        raise ValueError(f"q = {field.order} < n = {n}: no distinct evaluation vector")
    pts: List[int] = []
    seen = set()
    while len(pts) < n:
        x = field.random_element(rng)
        if x not in seen:
            seen.add(x)
            pts.append(x)
    return EvalVector(field, tuple(pts))


@dataclass
class CensusReport:
    n: int
    k: int
    q: int
    total: int
    failures: int
    family_size: int
    degree_bound: int
    cross_checked: int = 0
    cross_check_inconsistencies: int = 0

    @property
    def failure_fraction(self) -> Fraction:
        return Fraction(self.failures, self.total)

    @property
    def union_bound(self) -> Fraction:
        """|F_S| times the determinant degree over q: a bound on the bad fraction."""
        return Fraction(self.family_size * self.degree_bound, self.q)

    @property
    def within_bound(self) -> bool:
        return self.failure_fraction <= self.union_bound

    def to_json(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "k": self.k,
            "q": self.q,
            "samples": self.total,
            "certificate_failures": self.failures,
            "failure_fraction": str(self.failure_fraction),
            "family_size": self.family_size,
            "degree_bound": self.degree_bound,
            "union_bound": str(self.union_bound),
            "within_bound": self.within_bound,
            "cross_checked": self.cross_checked,
            "cross_check_inconsistencies": self.cross_check_inconsistencies,
        }


@dataclass
class CensusConfig:
    n: int
    k: int
    field: FieldSpec
    samples: int
    seed: int = 0
    cross_check: int = 0

    def __post_init__(self):
        if not self.n > self.k >= 1:
            raise ValueError("need n > k >= 1")
        if self.samples < 1:
            raise ValueError("need at least one sample")
        if self.field.order < self.n:
            raise ValueError("q < n")


def census_bad_fraction(cfg: CensusConfig) -> CensusReport:
    """Certificate failures among random evaluation vectors, against the union bound.

    Each determinant in F_S has degree at most k(k-1), so at most
    |F_S| k(k-1) / q of the vectors can fail.  The first ``cross_check``
    samples are also decided by brute force at the certified radius.
    """
    rng = random.Random(derive_seed(cfg.seed, "census", cfg.n, cfg.k, cfg.field.order))
    failures = 0
    checked = 0
    bad = 0
    radius = (2 * (cfg.n - cfg.k)) // 3
    for i in range(cfg.samples):
        code = RSCode(random_eval_vector(cfg.field, cfg.n, rng), cfg.k)
        passed = certificate_check_L2(code).passed
        failures += not passed
        if i < cfg.cross_check:
            checked += 1
            decodable = is_list_decodable(code, radius, 2).decodable
            if passed and not decodable:
                bad += 1
    return CensusReport(cfg.n, cfg.k, cfg.field.order, cfg.samples, failures,
                        count_S(cfg.n, cfg.k), cfg.k * (cfg.k - 1), checked, bad)


# ------------------------------------------------------------------ Johnson
JOHNSON_COLUMNS = ["n", "k", "R", "L", "johnson_radius", "johnson_radius_float",
                   "optimal_radius", "comparison", "beats_johnson"]


def johnson_rows(n_range: Sequence[int], k_range: Optional[Sequence[int]], L: int) -> List[Dict[str, Any]]:
    """The optimal radius L/(L+1)(1-R) against 1 - sqrt(R), compared exactly."""
    if L < 1:
        raise ValueError("L must be positive")
    rows = []
    for n in n_range:
        ks = [k for k in (k_range or range(1, n)) if 1 <= k < n]
        for k in ks:
            R = Fraction(k, n)
            opt = Fraction(L, L + 1) * (1 - R)
            jr = asymptotic_johnson_radius(R)
            cmp = jr.compare(opt)
            rows.append({
                "n": n, "k": k, "R": str(R), "L": L,
                "johnson_radius": str(jr),
                "johnson_radius_float": f"{float(jr):.6f}",
                "optimal_radius": str(opt),
                "comparison": {1: "greater", 0: "equal", -1: "less"}[cmp],
                "beats_johnson": cmp > 0,
            })
    return rows


def johnson_table(n_range: Sequence[int], k_range: Optional[Sequence[int]] = None, L: int = 2) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=JOHNSON_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in johnson_rows(n_range, k_range, L):
        w.writerow(row)
    return buf.getvalue()


def johnson_crossing(L: int) -> Fraction:
    """The rate where L/(L+1)(1-R) = 1 - sqrt(R) inside (0, 1): sqrt(R) = 1/L."""
    if L < 2:
        raise ValueError("no crossing inside (0, 1) for L < 2")
    return Fraction(1, L * L)


def default_field(q_exp: int) -> FieldSpec:
    return field_create(2, q_exp)
