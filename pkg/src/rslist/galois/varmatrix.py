"""Variable matrices whose entries are 0, 1 or a monomial x_i^j, and their determinants."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .fields import FieldSpec
from .multipoly import ZZ, Ring, SparseMultiPoly

EXACT_LAPLACE_MAX = 8
EXACT_DET_MAX = 12


@dataclass(frozen=True)
class Mono:
    """The monomial x_var^exp (variable index 0-based)."""

    var: int
    exp: int

    def __post_init__(self):
        if self.var < 0 or self.exp < 0:
            raise ValueError("monomial needs a nonnegative variable index and exponent")


Entry = Union[int, Mono]


def make_entry(var: int, exp: int) -> Entry:
    """x_var^exp, normalizing x^0 to the constant 1."""
    return 1 if exp == 0 else Mono(var, exp)


def entry_str(e: Entry) -> str:
    if isinstance(e, Mono):
        return f"x{e.var + 1}" if e.exp == 1 else f"x{e.var + 1}^{e.exp}"
    return str(e)


@dataclass
class VarMatrix:
    """A rows x cols grid of entries in ``nvars`` variables.

    ``meta`` records provenance (for example ``{"kind": "twise", "t": 4, "k": 2}``)
    and the optional labels name rows and columns.
    """

    entries: List[List[Entry]]
    nvars: int
    row_labels: Optional[List[Any]] = None
    col_labels: Optional[List[Any]] = None
    meta: Dict[str, Any] = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("matrix dimensions must be positive")
        width = len(self.entries[0])
        for row in self.entries:
            if len(row) != width:
                raise ValueError("ragged matrix")
            for e in row:
                if isinstance(e, Mono):
                    if e.var >= self.nvars:
                        raise ValueError("variable index out of range")
                elif e not in (0, 1):
                    raise ValueError(f"entry {e!r} must be 0, 1 or a monomial")

    @property
    def shape(self) -> Tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0])

    def __getitem__(self, ij: Tuple[int, int]) -> Entry:
        i, j = ij
        return self.entries[i][j]

    def column(self, j: int) -> List[Entry]:
        return [row[j] for row in self.entries]

    def max_exponent_in_column(self, j: int) -> int:
        return max((e.exp for e in self.column(j) if isinstance(e, Mono)), default=0)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "VarMatrix":
        return VarMatrix(
            [[self.entries[i][j] for j in cols] for i in rows],
            self.nvars,
            [self.row_labels[i] for i in rows] if self.row_labels else None,
            [self.col_labels[j] for j in cols] if self.col_labels else None,
            dict(self.meta),
        )

    def permuted(self, row_perm: Sequence[int], col_perm: Sequence[int], meta=None) -> "VarMatrix":
        """Matrix whose row r is old row row_perm[r] and column c is old column col_perm[c]."""
        if sorted(row_perm) != list(range(self.nrows)) or sorted(col_perm) != list(range(self.ncols)):
            raise ValueError("not a permutation")
        out = self.submatrix(row_perm, col_perm)
        if meta is not None:
            out.meta = meta
        return out

    def evaluate(self, fieldspec: FieldSpec, point: Sequence[int]) -> List[List[int]]:
        """The matrix over ``fieldspec`` with x_i set to point[i]."""
        if len(point) < self.nvars:
            raise ValueError("point has too few coordinates")
        cache: Dict[Tuple[int, int], int] = {}
        out = []
        for row in self.entries:
            r = []
            for e in row:
                if isinstance(e, Mono):
                    key = (e.var, e.exp)
                    v = cache.get(key)
                    if v is None:
                        v = fieldspec.pow(point[e.var], e.exp)
                        cache[key] = v
                    r.append(v)
                else:
                    r.append(e)
            out.append(r)
        return out

    def entry_poly(self, i: int, j: int, ring: Ring = ZZ) -> SparseMultiPoly:
        e = self.entries[i][j]
        if isinstance(e, Mono):
            return SparseMultiPoly.variable(ring, self.nvars, e.var, e.exp)
        return SparseMultiPoly.constant(ring, self.nvars, e)

    def render(self) -> str:
        """Fixed-width text layout; zeros print as '.'."""
        cells = [[("." if e == 0 else entry_str(e)) for e in row] for row in self.entries]
        w = max(len(c) for row in cells for c in row)
        return "\n".join(" ".join(c.rjust(w) for c in row) for row in cells)

    def to_json(self) -> Dict[str, Any]:
        def enc(e: Entry):
            if isinstance(e, Mono):
                return [e.var + 1, e.exp]
            return e

        return {
            "nvars": self.nvars,
            "entries": [[enc(e) for e in row] for row in self.entries],
            "meta": self.meta,
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, VarMatrix):
            return NotImplemented
        return self.nvars == other.nvars and self.entries == other.entries


def identity_varmatrix(n: int, nvars: int = 0) -> VarMatrix:
    return VarMatrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], nvars)


def multipoly_det(M: VarMatrix, ring: Ring = ZZ) -> SparseMultiPoly:
    """Exact symbolic determinant.

    Orders up to 8 use a memoized Laplace expansion over column subsets with
    zero pruning; orders 9 to 12 use fraction-free (Bareiss) elimination in
    the polynomial ring.  Larger orders are refused.
    """
    n, m = M.shape
    if n != m:
        raise ValueError(f"determinant of a non-square {n}x{m} matrix")
    if n > EXACT_DET_MAX:
        raise ValueError(f"order {n} exceeds the exact determinant cap {EXACT_DET_MAX}")
    if n <= EXACT_LAPLACE_MAX:
        return _det_laplace(M, ring)
    return _det_bareiss(M, ring)


def _det_laplace(M: VarMatrix, ring: Ring) -> SparseMultiPoly:
    n = M.nrows
    nv = M.nvars
    zero_e = (0,) * nv
    # layer[mask] = signed sum over injective row->column maps of the first popcount(mask) rows
    layer: Dict[int, Dict[Tuple[int, ...], int]] = {0: {zero_e: 1}}
    for i in range(n):
        row = M.entries[i]
        nxt: Dict[int, Dict[Tuple[int, ...], int]] = {}
        for mask, poly in layer.items():
            for j in range(n):
                e = row[j]
                if e == 0 or mask >> j & 1:
                    continue
                neg = bin(mask >> (j + 1)).count("1") & 1
                target = nxt.setdefault(mask | (1 << j), {})
                for ex, c in poly.items():
                    if isinstance(e, Mono):
                        l = list(ex)
                        l[e.var] += e.exp
                        ex2 = tuple(l)
                    else:
                        ex2 = ex
                    v = ring.neg(c) if neg else c
                    s = ring.add(target.get(ex2, 0), v)
                    if s:
                        target[ex2] = s
                    else:
                        target.pop(ex2, None)
        layer = {k: v for k, v in nxt.items() if v}
        if not layer:
            return SparseMultiPoly(ring, nv, {})
    full = (1 << n) - 1
    return SparseMultiPoly._raw(ring, nv, layer.get(full, {}))


def _det_bareiss(M: VarMatrix, ring: Ring) -> SparseMultiPoly:
    n = M.nrows
    A = [[M.entry_poly(i, j, ring) for j in range(n)] for i in range(n)]
    sign = 1
    prev = SparseMultiPoly.constant(ring, M.nvars, 1)
    for k in range(n - 1):
        if A[k][k].is_zero():
            # prefer a pivot with few terms
            cands = [i for i in range(k + 1, n) if not A[i][k].is_zero()]
            if not cands:
                return SparseMultiPoly(ring, M.nvars, {})
            i = min(cands, key=lambda r: len(A[r][k]))
            A[k], A[i] = A[i], A[k]
            sign = -sign
        piv = A[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = A[i][j] * piv - A[i][k] * A[k][j]
                A[i][j] = num.exact_div(prev) if not num.is_zero() else num
            A[i][k] = SparseMultiPoly(ring, M.nvars, {})
        prev = piv
    det = A[n - 1][n - 1]
    return -det if sign < 0 else det
