"""Reed-Solomon codes given by an evaluation vector.

Coordinates are 0-indexed in the API and 1-indexed in JSON files.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

from .galois.fields import (
    FieldElement,
    FieldSpec,
    element_from_json,
    element_to_json,
    field_from_json,
    field_to_json,
)
from .galois.linalg import field_matvec
from .galois.unipoly import UniPoly


@dataclass(frozen=True)
class EvalVector:
    """n pairwise distinct points of one field."""

    field: FieldSpec
    points: Tuple[int, ...]

    def __post_init__(self):
        pts = tuple(int(x.value) if isinstance(x, FieldElement) else int(x) for x in self.points)
        object.__setattr__(self, "points", pts)
        for x in pts:
            if not self.field.contains(x):
                raise ValueError(f"{x} is not an element of {self.field!r}")
        if len(set(pts)) != len(pts):
            raise ValueError("evaluation points must be pairwise distinct")
        if not pts:
            raise ValueError("evaluation vector must be nonempty")

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> int:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class Codeword:
    """A length-n vector over ``field``, optionally with its message polynomial."""

    field: FieldSpec
    values: Tuple[int, ...]
    message: Optional[UniPoly] = None

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> int:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Codeword):
            return self.field == other.field and self.values == other.values
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.values)


class RSCode:
    """The [n, k] Reed-Solomon code {(f(a_1), ..., f(a_n)) : deg f < k}.

    ``k == n`` (the whole space) is accepted so that tiny explicit
    constructions can be certified; the usual case is k < n.
    """

    def __init__(self, alpha: Union[EvalVector, Sequence[int]], k: int, field: Optional[FieldSpec] = None):
        if not isinstance(alpha, EvalVector):
            if field is None:
                if alpha and isinstance(alpha[0], FieldElement):
                    field = alpha[0].field
                else:
                    raise ValueError("field is required for raw int points")
            alpha = EvalVector(field, tuple(alpha))
        if not 1 <= k <= len(alpha):
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={len(alpha)}")
        self.alpha = alpha
        self.k = k
        self._powers: Optional[List[List[int]]] = None

    @property
    def field(self) -> FieldSpec:
        return self.alpha.field

    @property
    def n(self) -> int:
        return len(self.alpha)

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def rate(self) -> Fraction:
        return Fraction(self.k, self.n)

    @property
    def size(self) -> int:
        return self.q ** self.k

    def __repr__(self) -> str:
        return f"RSCode(n={self.n}, k={self.k}, field={self.field!r})"

    def generator_rows(self) -> List[List[int]]:
        """Row j is (a_1^j, ..., a_n^j); a codeword is sum_j f_j * row_j."""
        if self._powers is None:
            F = self.field
            rows = [[1] * self.n]
            for _ in range(1, self.k):
                rows.append([F.mul(x, a) for x, a in zip(rows[-1], self.alpha.points)])
            self._powers = rows
        return self._powers

    def encode_coeffs(self, coeffs: Sequence[int]) -> Tuple[int, ...]:
        F = self.field
        out = [0] * self.n
        for c, row in zip(coeffs, self.generator_rows()):
            if c:
                for i, x in enumerate(row):
                    out[i] = F.add(out[i], F.mul(c, x))
        return tuple(out)

    def messages(self) -> Iterator[Tuple[int, ...]]:
        """All coefficient vectors (f_0, ..., f_{k-1}) in lexicographic order."""
        return product(range(self.q), repeat=self.k)

    def codewords(self) -> Iterator[Tuple[int, ...]]:
        for m in self.messages():
            yield self.encode_coeffs(m)

    def interpolate(self, word: Sequence[int]) -> UniPoly:
        """Message polynomial of a codeword, by Lagrange interpolation on the first k points."""
        F = self.field
        xs = self.alpha.points[: self.k]
        ys = list(word[: self.k])
        result = UniPoly.zero(F)
        for i, (xi, yi) in enumerate(zip(xs, ys)):
            if yi == 0:
                continue
            others = [x for j, x in enumerate(xs) if j != i]
            basis = UniPoly.from_roots(F, others)
            denom = basis.evaluate(xi)
            result = result + basis.scale(F.div(yi, denom))
        if self.encode_coeffs(result.coefficient_vector(self.k)) != tuple(word):
            raise ValueError("word is not a codeword")
        return result


def encode(code: RSCode, f: UniPoly) -> Codeword:
    if f.field != code.field:
        raise ValueError("message polynomial over the wrong field")
    if f.degree >= code.k:
        raise ValueError(f"message degree {f.degree} must be < k = {code.k}")
    values = code.encode_coeffs(f.coeffs)
    return Codeword(code.field, values, f)


def _values(v: Any) -> Tuple[int, ...]:
    if isinstance(v, Codeword):
        return v.values
    return tuple(int(x.value) if isinstance(x, FieldElement) else x for x in v)


def hamming_distance(u: Any, v: Any) -> int:
    if isinstance(u, Codeword) and isinstance(v, Codeword) and u.field != v.field:
        raise ValueError("codewords over different fields")
    a, b = _values(u), _values(v)
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return sum(1 for x, y in zip(a, b) if x != y)


def agreement_set(vectors: Sequence[Any]) -> FrozenSet[int]:
    """Indices (0-based) where all vectors share one value."""
    if len(vectors) < 2:
        raise ValueError("agreement set needs at least two vectors")
    vals = [_values(v) for v in vectors]
    n = len(vals[0])
    if any(len(v) != n for v in vals):
        raise ValueError("length mismatch")
    return frozenset(i for i in range(n) if all(v[i] == vals[0][i] for v in vals))


def vandermonde(s: int, points: Sequence[int], field: FieldSpec) -> List[List[int]]:
    """Rows (1, x, ..., x^{s-1}) for each point."""
    if s < 1:
        raise ValueError("s must be positive")
    rows = []
    for x in points:
        x = int(x.value) if isinstance(x, FieldElement) else x
        row = [1]
        for _ in range(s - 1):
            row.append(field.mul(row[-1], x))
        rows.append(row)
    return rows


def vandermonde_kernel_check(s: int, I: Iterable[int], alpha: EvalVector, f: UniPoly) -> bool:
    """True iff V_s(alpha_i : i in I) f = 0, i.e. f vanishes on those points."""
    if f.degree >= s:
        raise ValueError(f"polynomial degree {f.degree} must be < s = {s}")
    pts = [alpha[i] for i in sorted(I)]
    if not pts:
        return True
    V = vandermonde(s, pts, alpha.field)
    return all(x == 0 for x in field_matvec(alpha.field, V, f.coefficient_vector(s)))


# -------------------------------------------------------------- JSON
def code_to_json(code: RSCode) -> Dict[str, Any]:
    F = code.field
    return {
        "field": field_to_json(F),
        "alpha": [element_to_json(F, a) for a in code.alpha.points],
        "k": code.k,
    }


def code_from_json(obj: Dict[str, Any]) -> RSCode:
    F = field_from_json(obj["field"])
    pts = tuple(element_from_json(F, a) for a in obj["alpha"])
    return RSCode(EvalVector(F, pts), int(obj["k"]))


def words_to_json(field: FieldSpec, words: Iterable[Sequence[int]]) -> List[List[Any]]:
    return [[element_to_json(field, x) for x in _values(w)] for w in words]
