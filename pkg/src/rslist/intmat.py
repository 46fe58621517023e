"""Intersection matrices, the L = 2 certificate family, and nonsingularity tests.

Ground elements (and thus variables x_a) are 0-based; set indices and graph
vertices are 1-based.  Column blocks follow the edge order of cycles.py, so a
3-wise matrix has blocks for I_1 & I_2, I_1 & I_3, I_2 & I_3 and its kernel
vectors read (g_12, g_31, g_23).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from math import comb
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from .cycles import basis_row_pairs, cycle_basis_matrix, edge_order
from .galois.fields import FieldSpec, prime_field
from .galois.linalg import field_det, field_matvec, field_rank
from .galois.multipoly import ZZ, Ring, SparseMultiPoly
from .galois.varmatrix import EXACT_DET_MAX, VarMatrix, make_entry, multipoly_det
from .rscode import Codeword, RSCode, agreement_set
from .util import derive_seed

Subset = FrozenSet[int]


def _vandermonde_row(a: int, s: int, col0: int, width: int) -> List[Any]:
    row: List[Any] = [0] * width
    for j in range(s):
        row[col0 + j] = make_entry(a, j)
    return row


def _nvars(sets: Sequence[Subset], n: Optional[int]) -> int:
    top = max((max(s) for s in sets if s), default=-1) + 1
    if n is None:
        return max(top, 1)
    if top > n:
        raise ValueError("set element outside the ground set")
    return n


# ----------------------------------------------------------- 3-wise matrices
def build_3wise(s: int, I1, I2, I3, n: Optional[int] = None) -> VarMatrix:
    """M_{s,(I_1,I_2,I_3)}: three identity blocks over V_s(I_1&I_2), V_s(I_1&I_3), V_s(I_2&I_3)."""
    if s < 1:
        raise ValueError("s must be positive")
    sets = [frozenset(I1), frozenset(I2), frozenset(I3)]
    nv = _nvars(sets, n)
    blocks = [sets[0] & sets[1], sets[0] & sets[2], sets[1] & sets[2]]
    width = 3 * s
    rows: List[List[Any]] = []
    row_labels: List[Any] = []
    for r in range(s):
        rows.append([1 if j % s == r else 0 for j in range(width)])
        row_labels.append(("I", r))
    edges = [(1, 2), (1, 3), (2, 3)]
    for b, (blk, e) in enumerate(zip(blocks, edges)):
        for a in sorted(blk):
            rows.append(_vandermonde_row(a, s, b * s, width))
            row_labels.append(("V", e, a))
    col_labels = [(e, j) for e in edges for j in range(s)]
    return VarMatrix(rows, nv, row_labels, col_labels, {"kind": "3wise", "s": s})


@dataclass(frozen=True)
class Triple:
    """A canonical member of S: disjoint pairwise intersections with sizes summing to 2s."""

    s: int
    a12: Subset
    a13: Subset
    a23: Subset

    @property
    def sets(self) -> Tuple[Subset, Subset, Subset]:
        return (self.a12 | self.a13, self.a12 | self.a23, self.a13 | self.a23)

    @property
    def pattern(self) -> Tuple[int, int, int, int]:
        return (self.s, len(self.a12), len(self.a13), len(self.a23))

    def to_json(self) -> Dict[str, Any]:
        return {
            "s": self.s,
            "I": [sorted(x + 1 for x in I) for I in self.sets],
            "intersections": {
                "12": sorted(x + 1 for x in self.a12),
                "13": sorted(x + 1 for x in self.a13),
                "23": sorted(x + 1 for x in self.a23),
            },
        }


def _size_patterns(k: int, n: int) -> List[Tuple[int, int, int, int]]:
    out = []
    for s in range(1, k + 1):
        if 2 * s > n:
            break
        for x in range(s + 1):
            for y in range(s + 1):
                z = 2 * s - x - y
                if 0 <= z <= s:
                    out.append((s, x, y, z))
    return out


@lru_cache(maxsize=64)
def _enumerate_S(n: int, k: int) -> Tuple[Triple, ...]:
    out = []
    ground = range(n)
    for s, x, y, z in _size_patterns(k, n):
        for A in combinations(ground, x):
            restA = [e for e in ground if e not in A]
            for B in combinations(restA, y):
                restB = [e for e in restA if e not in B]
                for C in combinations(restB, z):
                    out.append(Triple(s, frozenset(A), frozenset(B), frozenset(C)))
    return tuple(out)


def enumerate_S(n: int, k: int) -> List[Triple]:
    """Every structurally distinct triple of S for an [n, k] code.

    Only the pairwise intersections enter the matrix, so triples are listed
    as disjoint (I_1&I_2, I_1&I_3, I_2&I_3) with sizes at most s summing to
    2s, 1 <= s <= k; representatives are I_1 = a12|a13, I_2 = a12|a23,
    I_3 = a13|a23.
    """
    if n < 1 or k < 1:
        raise ValueError("need n, k >= 1")
    return list(_enumerate_S(n, k))


def count_S(n: int, k: int) -> int:
    total = 0
    for s, x, y, z in _size_patterns(k, n):
        total += comb(n, x) * comb(n - x, y) * comb(n - x - y, z)
    return total


def _check_canonical(s: int, sets: Sequence[Subset]) -> Tuple[Subset, Subset, Subset]:
    I1, I2, I3 = sets
    if I1 & I2 & I3:
        raise ValueError("the triple intersection must be empty")
    a12, a13, a23 = I1 & I2, I1 & I3, I2 & I3
    if len(a12) + len(a13) + len(a23) != 2 * s:
        raise ValueError("pairwise intersection sizes must sum to 2s")
    if max(len(a12), len(a13), len(a23)) > s:
        raise ValueError("each pairwise intersection must have size at most s")
    return a12, a13, a23


@lru_cache(maxsize=None)
def _pattern_det(s: int, x: int, y: int, z: int) -> SparseMultiPoly:
    I1 = frozenset(range(0, x + y))
    I2 = frozenset(range(0, x)) | frozenset(range(x + y, x + y + z))
    I3 = frozenset(range(x, x + y + z))
    return multipoly_det(build_3wise(s, I1, I2, I3, n=max(2 * s, 1)))


def det_3wise_symbolic(s: int, I1, I2, I3, n: Optional[int] = None) -> SparseMultiPoly:
    """det M_{s,(I_1,I_2,I_3)} over ZZ for a canonical triple.

    The determinant depends only on the sizes of the intersections up to an
    order-preserving renaming of variables, so one determinant per size
    pattern is expanded and then relabelled.
    """
    sets = [frozenset(I1), frozenset(I2), frozenset(I3)]
    a12, a13, a23 = _check_canonical(s, sets)
    nv = _nvars(sets, n)
    base = _pattern_det(s, len(a12), len(a13), len(a23))
    rename = sorted(a12) + sorted(a13) + sorted(a23)
    terms = {}
    for e, c in base.terms.items():
        ex = [0] * nv
        for i, p in enumerate(e):
            if p:
                ex[rename[i]] = p
        terms[tuple(ex)] = c
    return SparseMultiPoly(ZZ, nv, terms)


def predicted_support_3wise(s: int, a12: Subset, a13: Subset, a23: Subset, nvars: int) -> FrozenSet[Tuple[int, ...]]:
    """Exponent vectors with distinct exponents inside each intersection and every
    value 0..s-1 used exactly twice overall."""
    blocks = [sorted(a12), sorted(a13), sorted(a23)]
    out = set()

    def rec(b: int, used: List[int], ex: List[int]):
        if b == 3:
            if all(u == 2 for u in used):
                out.add(tuple(ex))
            return
        for vals in permutations(range(s), len(blocks[b])):
            if any(used[v] >= 2 for v in vals):
                continue
            for v in vals:
                used[v] += 1
            for a, v in zip(blocks[b], vals):
                ex[a] = v
            rec(b + 1, used, ex)
            for v in vals:
                used[v] -= 1
            for a in blocks[b]:
                ex[a] = 0

    rec(0, [0] * s, [0] * nvars)
    return frozenset(out)


# --------------------------------------------------------------- certificate
@dataclass
class CertificateReport:
    passed: bool
    n: int
    k: int
    radius: int
    divisible: bool
    vacuous: bool
    determinants_evaluated: int
    family_size: int
    complete: bool = True
    failing: Optional[Triple] = None
    method: str = "symbolic"

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_json(self) -> Dict[str, Any]:
        out = {
            "verdict": self.verdict,
            "n": self.n,
            "k": self.k,
            "radius": self.radius,
            "divisible": self.divisible,
            "vacuous": self.vacuous,
            "determinants_evaluated": self.determinants_evaluated,
            "family_size": self.family_size,
            "complete": self.complete,
            "method": self.method,
        }
        if self.failing is not None:
            out["failing"] = self.failing.to_json()
        return out


def evaluate_triple(code: RSCode, tr: Triple, method: str = "symbolic") -> int:
    """det M_{s,(I_1,I_2,I_3)}(alpha) in the code's field."""
    F = code.field
    alpha = list(code.alpha.points)
    if method == "symbolic":
        return det_3wise_symbolic(tr.s, *tr.sets, n=code.n).evaluate(F, alpha)
    if method == "numeric":
        M = build_3wise(tr.s, *tr.sets, n=code.n).evaluate(F, alpha)
        return field_det(F, M)
    raise ValueError(f"unknown method {method!r}")


def certificate_check_L2(code: RSCode, method: str = "symbolic", fail_fast: bool = True) -> CertificateReport:
    """Evaluate every determinant of the family F_S at the evaluation vector.

    A pass proves the code is (r, 2) list-decodable for the integer radius
    floor(2(n-k)/3): a violation would make one of these determinants vanish.
    A fail is only a vanishing determinant, not a proof of a violation.
    When that radius is 0 the code is trivially decodable and ``vacuous`` is
    set, but the family is still evaluated.
    """
    n, k = code.n, code.k
    if len(set(code.alpha.points)) != n:
        raise ValueError("evaluation points must be distinct")
    radius = (2 * (n - k)) // 3
    triples = _enumerate_S(n, k)
    evaluated = 0
    failing = None
    for tr in triples:
        evaluated += 1
        if evaluate_triple(code, tr, method) == 0:
            if failing is None:
                failing = tr
            if fail_fast:
                break
    return CertificateReport(
        passed=failing is None,
        n=n, k=k, radius=radius,
        divisible=(2 * (n - k)) % 3 == 0,
        vacuous=radius == 0,
        determinants_evaluated=evaluated,
        family_size=len(triples),
        failing=failing,
        method=method,
    )


def certificate_spot_check(code: RSCode, trials: int, seed: int) -> CertificateReport:
    """Evaluate ``trials`` randomly chosen members of F_S; never a full certificate."""
    triples = _enumerate_S(code.n, code.k)
    rng = random.Random(derive_seed(seed, "spot-check"))
    failing = None
    evaluated = 0
    for _ in range(trials):
        if not triples:
            break
        tr = triples[rng.randrange(len(triples))]
        evaluated += 1
        if evaluate_triple(code, tr) == 0:
            failing = tr
            break
    n, k = code.n, code.k
    radius = (2 * (n - k)) // 3
    return CertificateReport(
        passed=failing is None, n=n, k=k, radius=radius,
        divisible=(2 * (n - k)) % 3 == 0, vacuous=radius == 0,
        determinants_evaluated=evaluated, family_size=len(triples),
        complete=False, failing=failing, method="randomized",
    )


def kernel_3wise(code: RSCode, words: Sequence[Codeword]) -> List[List[int]]:
    """(g_12, g_31, g_23) = (f_1 - f_2, f_3 - f_1, f_2 - f_3) as length-k vectors."""
    F = code.field
    f = [_message(code, w).coefficient_vector(code.k) for w in words]
    def diff(a, b):
        return [F.sub(x, y) for x, y in zip(a, b)]
    return [diff(f[0], f[1]), diff(f[2], f[0]), diff(f[1], f[2])]


# ----------------------------------------------------------- t-wise matrices
def build_twise(k: int, sets: Sequence, n: Optional[int] = None) -> VarMatrix:
    """M_{k,(I_1,...,I_t)}: B_t (x) I_k over diag(V_k(I_i & I_j)) in edge order."""
    t = len(sets)
    if t < 3:
        raise ValueError("t-wise matrices need t >= 3")
    if k < 1:
        raise ValueError("k must be positive")
    sets = [frozenset(s) for s in sets]
    nv = _nvars(sets, n)
    edges = edge_order(t).edges
    B = cycle_basis_matrix(t)
    width = len(edges) * k
    rows: List[List[Any]] = []
    row_labels: List[Any] = []
    for (i, j), brow in zip(basis_row_pairs(t), B):
        for a in range(k):
            rows.append([brow[c // k] if c % k == a else 0 for c in range(width)])
            row_labels.append(("B", (i, j, t), a))
    for b, (i, j) in enumerate(edges):
        for x in sorted(sets[i - 1] & sets[j - 1]):
            rows.append(_vandermonde_row(x, k, b * k, width))
            row_labels.append(("V", (i, j), x))
    col_labels = [(e, a) for e in edges for a in range(k)]
    return VarMatrix(rows, nv, row_labels, col_labels, {"kind": "twise", "t": t, "k": k, "form": "rep1"})


def reorder_rep2(M: VarMatrix, k: int, t: int = 4) -> VarMatrix:
    """Regroup columns by Vandermonde power: blocks C_0, ..., C_{k-1}, over I_k (x) B_4."""
    meta = M.meta
    if meta.get("kind") != "twise" or meta.get("t") != t or meta.get("k") != k or meta.get("form") != "rep1":
        raise ValueError("reorder_rep2 expects a matrix produced by build_twise with matching t and k")
    if t != 4:
        raise ValueError("the second representation is defined for t = 4")
    ne = len(edge_order(t))
    nb = comb(t - 1, 2)
    cols = [e * k + i for i in range(k) for e in range(ne)]
    top = [r * k + i for i in range(k) for r in range(nb)]
    rows = top + list(range(nb * k, M.nrows))
    return M.permuted(rows, cols, {"kind": "twise", "t": t, "k": k, "form": "rep2"})


def _message(code: RSCode, w: Any):
    if isinstance(w, Codeword) and w.message is not None:
        return w.message
    vals = w.values if isinstance(w, Codeword) else tuple(w)
    return code.interpolate(vals)


def kernel_witness(code: RSCode, words: Sequence[Any], sets: Sequence) -> List[List[int]]:
    """The vector (f_i + f_j) in edge order, checked to lie in the kernel of M(alpha)."""
    F = code.field
    if F.p != 2:
        raise ValueError("kernel witnesses are defined in characteristic 2")
    t = len(words)
    vals = [w.values if isinstance(w, Codeword) else tuple(w) for w in words]
    if len(set(vals)) != t:
        raise ValueError("codewords must be distinct")
    if len(sets) != t:
        raise ValueError("one set per codeword")
    sets = [frozenset(s) for s in sets]
    for i, j in combinations(range(t), 2):
        if not (sets[i] & sets[j]) <= agreement_set([vals[i], vals[j]]):
            raise ValueError(f"I_{i + 1} & I_{j + 1} is not inside the agreement set")
    f = [_message(code, w).coefficient_vector(code.k) for w in words]
    vec: List[List[int]] = []
    for i, j in edge_order(t).edges:
        vec.append([F.add(a, b) for a, b in zip(f[i - 1], f[j - 1])])
    M = build_twise(code.k, sets, n=code.n).evaluate(F, list(code.alpha.points))
    flat = [x for blk in vec for x in blk]
    if any(field_matvec(F, M, flat)) or not any(flat):
        raise RuntimeError("kernel witness failed verification")
    return vec


# ----------------------------------------------------------- nonsingularity
@dataclass
class ExactRank:
    full_column_rank: bool
    rank: int
    pivot_rows: List[int]


def exact_column_rank(M: VarMatrix, ring: Ring) -> ExactRank:
    """Column rank over the fraction field of ring[x] by fraction-free elimination.

    Pivots with fewest terms (constants first) are preferred.  The pivot rows
    index a maximal square submatrix with nonzero determinant.
    """
    nr, nc = M.shape
    A = [[M.entry_poly(i, j, ring) for j in range(nc)] for i in range(nr)]
    alive = list(range(nr))
    prev = SparseMultiPoly.constant(ring, M.nvars, 1)
    pivots: List[int] = []
    rank = 0
    for c in range(nc):
        cand = [i for i in alive if not A[i][c].is_zero()]
        if not cand:
            continue
        p = min(cand, key=lambda i: (A[i][c].total_degree, len(A[i][c]), i))
        alive.remove(p)
        pivots.append(p)
        piv = A[p][c]
        for i in alive:
            if A[i][c].is_zero():
                for j in range(c + 1, nc):
                    if not A[i][j].is_zero():
                        A[i][j] = (A[i][j] * piv).exact_div(prev)
                continue
            aic = A[i][c]
            for j in range(c + 1, nc):
                num = A[i][j] * piv - aic * A[p][j]
                A[i][j] = num.exact_div(prev) if not num.is_zero() else num
            A[i][c] = SparseMultiPoly(ring, M.nvars, {})
        prev = piv
        rank += 1
    return ExactRank(rank == nc, rank, sorted(pivots))


def nonsingular_exact_small(M: VarMatrix, characteristic: int = 2) -> bool:
    """Whether some square submatrix of full column size has a nonzero determinant.

    Decided exactly by column rank over GF(p)(x_1, ..., x_n); capped at 12 columns.
    """
    if M.ncols > EXACT_DET_MAX:
        raise ValueError(f"{M.ncols} columns exceed the exact cap {EXACT_DET_MAX}")
    if M.nrows < M.ncols:
        return False
    return exact_column_rank(M, prime_field(characteristic)).full_column_rank


def nonsingular_by_minors(M: VarMatrix, characteristic: int = 2) -> Optional[Tuple[int, ...]]:
    """Reference oracle: first row subset whose symbolic minor is nonzero, or None."""
    ring = prime_field(characteristic)
    nr, nc = M.shape
    for rows in combinations(range(nr), nc):
        if not multipoly_det(M.submatrix(rows, range(nc)), ring).is_zero():
            return rows
    return None


def minor_degree_bound(M: VarMatrix) -> int:
    """Upper bound on the total degree of any maximal minor: sum of per-column max exponents."""
    return sum(M.max_exponent_in_column(j) for j in range(M.ncols))


@dataclass
class RandomizedVerdict:
    nonsingular: bool
    trials_run: int
    ranks: List[int]
    degree_bound: int
    q: int

    @property
    def verdict(self) -> str:
        return "nonsingular" if self.nonsingular else "undetermined"

    @property
    def false_negative_bound(self) -> float:
        """Chance that a nonsingular matrix looks deficient at every trial run."""
        return (self.degree_bound / self.q) ** self.trials_run if self.trials_run else 1.0

    def to_json(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict,
            "trials_run": self.trials_run,
            "ranks": self.ranks,
            "degree_bound": self.degree_bound,
            "per_trial_error_bound": f"{self.degree_bound}/{self.q}",
        }


def nonsingular_randomized(M: VarMatrix, field: FieldSpec, trials: int, seed: int,
                           min_order: int = 2 ** 32) -> RandomizedVerdict:
    """Rank of M at random points; full column rank at any point proves nonsingularity."""
    if field.order < min_order:
        raise ValueError(f"field of order {field.order} is below the guard {min_order}")
    deg = minor_degree_bound(M)
    ranks = []
    for trial in range(trials):
        rng = random.Random(derive_seed(seed, "rank-trial", trial))
        point = [field.random_element(rng) for _ in range(M.nvars)]
        r = field_rank(field, M.evaluate(field, point))
        ranks.append(r)
        if r == M.ncols:
            return RandomizedVerdict(True, trial + 1, ranks, deg, field.order)
    return RandomizedVerdict(False, trials, ranks, deg, field.order)
