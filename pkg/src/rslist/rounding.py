"""Iterative rounding of edge-atom counts on K_4 to a binary vector.

Given x_S >= 0 on the six edges of K_4 with sum 3k, x_S <= k and every
triangle sum at most 2k, find binary z with three ones such that every
equation E_J (edges, triangles and [4]) rounds x/k to a neighbouring integer.
All arithmetic is exact.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .cycles import edge_order
from .galois.linalg import fraction_nullspace, fraction_rank, integer_det

EDGES = edge_order(4).edges
TRIANGLES = tuple(combinations(range(1, 5), 3))


def _label(J: Sequence[int]) -> str:
    return "".join(str(j) for j in J)


def _equations() -> Tuple[Tuple[str, Tuple[int, ...]], ...]:
    eqs = []
    for e in EDGES:
        eqs.append((_label(e), tuple(int(f == e) for f in EDGES)))
    for tri in TRIANGLES:
        eqs.append((_label(tri), tuple(int(set(f) <= set(tri)) for f in EDGES)))
    eqs.append(("1234", (1,) * 6))
    return tuple(eqs)


EQUATIONS = _equations()
FULL = len(EQUATIONS) - 1


@dataclass(frozen=True)
class RoundingInstance:
    x: Tuple[int, ...]
    k: int

    def __post_init__(self):
        x = tuple(int(v) for v in self.x)
        object.__setattr__(self, "x", x)
        if len(x) != 6:
            raise ValueError("need six edge counts")
        if self.k < 1:
            raise ValueError("k must be positive")
        if any(v < 0 for v in x):
            raise ValueError("edge counts must be nonnegative")
        if sum(x) != 3 * self.k:
            raise ValueError(f"edge counts must sum to 3k = {3 * self.k}")
        if any(v > self.k for v in x):
            raise ValueError("every edge count must be at most k")
        for name, row in EQUATIONS[6:10]:
            if _dot(row, x) > 2 * self.k:
                raise ValueError(f"triangle {name} exceeds 2k")

    def weight(self, j: int) -> int:
        return _dot(EQUATIONS[j][1], self.x)


@dataclass
class RoundingStep:
    satisfied: List[str]
    beta: List[Fraction]
    epsilon: Fraction

    def to_json(self) -> Dict:
        return {"satisfied": self.satisfied, "beta": [str(b) for b in self.beta], "epsilon": str(self.epsilon)}


@dataclass
class RoundingResult:
    z: Tuple[int, ...]
    trace: List[RoundingStep] = dc_field(default_factory=list)
    final_satisfied: List[str] = dc_field(default_factory=list)

    @property
    def iterations(self) -> int:
        return len(self.trace)

    def to_json(self) -> Dict:
        return {
            "z": list(self.z),
            "edges": [_label(e) for e in EDGES],
            "trace": [s.to_json() for s in self.trace],
            "final_satisfied": self.final_satisfied,
        }


def _dot(row: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(row, v))


def _is_int(v: Fraction) -> bool:
    return v.denominator == 1


def _step_to_integer(value: Fraction, slope: Fraction) -> Fraction:
    """Smallest eps > 0 with value + eps*slope integral (slope != 0, value fractional)."""
    if slope > 0:
        return (math.ceil(value) - value) / slope
    return (value - math.floor(value)) / (-slope)


def round_to_binary(inst: RoundingInstance) -> RoundingResult:
    """Move z = x/k along directions fixing the satisfied equations until rank 6.

    beta is the first nullspace vector of the satisfied equations; eps is the
    least step making a further equation integral, and every equation that
    becomes integral is folded in together.  The unit equations E_S are part
    of the system, so a coordinate reaches 0 or 1 exactly when it becomes
    satisfied and z never leaves the unit cube.
    """
    z = [Fraction(v, inst.k) for v in inst.x]
    rows = [row for _, row in EQUATIONS]
    values = lambda: [_dot(r, z) for r in rows]  # noqa: E731
    sat = [j for j, v in enumerate(values()) if _is_int(v)]
    trace: List[RoundingStep] = []
    while fraction_rank([rows[j] for j in sat]) < 6:
        if len(trace) >= 6:
            raise RuntimeError("rank failed to grow; bookkeeping bug")
        null = fraction_nullspace([rows[j] for j in sat], 6)
        if not null:
            raise RuntimeError("no direction annihilates the satisfied equations")
        beta = null[0]
        vals = values()
        eps = None
        for j in range(len(rows)):
            if j in sat:
                continue
            slope = _dot(rows[j], beta)
            if slope:
                e = _step_to_integer(vals[j], slope)
                eps = e if eps is None or e < eps else eps
        if eps is None:
            raise RuntimeError("direction moves no unsatisfied equation")
        trace.append(RoundingStep([EQUATIONS[j][0] for j in sat], list(beta), eps))
        z = [a + eps * b for a, b in zip(z, beta)]
        if any(v < 0 or v > 1 for v in z):
            raise AssertionError("z left the unit cube")
        if _dot(rows[FULL], z) != 3:
            raise AssertionError("the all-ones equation drifted")
        sat = [j for j, v in enumerate(values()) if _is_int(v)]
    if any(not _is_int(v) for v in z):
        raise AssertionError("terminal z is not integral")
    return RoundingResult(tuple(int(v) for v in z), trace, [EQUATIONS[j][0] for j in sat])


def rounding_valid(inst: RoundingInstance, z: Sequence[int]) -> bool:
    """Binary, three ones, and E_J(z) in {floor(wt/k), ceil(wt/k)} for all 11 J."""
    if any(v not in (0, 1) for v in z) or sum(z) != 3:
        return False
    for j, (_, row) in enumerate(EQUATIONS):
        w = Fraction(inst.weight(j), inst.k)
        if _dot(row, z) not in (math.floor(w), math.ceil(w)):
            return False
    return True


def random_instance(k: int, rng: random.Random, max_tries: int = 10000) -> RoundingInstance:
    """A random valid instance, by rejection from random compositions of 3k."""
    for _ in range(max_tries):
        cuts = sorted(rng.randint(0, 3 * k) for _ in range(5))
        x = [b - a for a, b in zip([0] + cuts, cuts + [3 * k])]
        try:
            return RoundingInstance(tuple(x), k)
        except ValueError:
            continue
    raise RuntimeError("could not sample a valid instance")


@dataclass(frozen=True)
class UnimodularityReport:
    ok: bool
    candidates: int
    full_rank: int
    determinants: Tuple[int, ...]

    def to_json(self) -> Dict:
        return {"unimodular": self.ok, "candidates": self.candidates, "rank6_subsets": self.full_rank,
                "distinct_abs_determinants": sorted(set(self.determinants))}


def verify_unimodularity() -> UnimodularityReport:
    """Every rank-6 choice of E_[4] plus five other equations has determinant +-1."""
    others = range(FULL)
    cand = 0
    dets = []
    for sub in combinations(others, 5):
        cand += 1
        A = [list(EQUATIONS[j][1]) for j in sub] + [list(EQUATIONS[FULL][1])]
        d = integer_det(A)
        if d:
            dets.append(abs(d))
    return UnimodularityReport(all(d == 1 for d in dets), cand, len(dets), tuple(dets))
