"""Sparse multivariate polynomials over the integers or a finite field.

Terms are stored as ``{exponent tuple: coefficient}`` with no zero
coefficients.  Canonical term order is graded lexicographic, largest first.
"""

from __future__ import annotations

import random
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .fields import FieldSpec

Exps = Tuple[int, ...]


class IntegerRing:
    """The ring ZZ with the same method names a FieldSpec offers."""

    zero_value = 0

    def add(self, a: int, b: int) -> int:
        return a + b

    def sub(self, a: int, b: int) -> int:
        return a - b

    def neg(self, a: int) -> int:
        return -a

    def mul(self, a: int, b: int) -> int:
        return a * b

    def exact_div(self, a: int, b: int) -> int:
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError(f"{a} is not divisible by {b}")
        return q

    def __repr__(self) -> str:
        return "ZZ"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IntegerRing)

    def __hash__(self) -> int:
        return hash("ZZ")


ZZ = IntegerRing()
Ring = Union[IntegerRing, FieldSpec]


def _exact_div(ring: Ring, a: int, b: int) -> int:
    if isinstance(ring, IntegerRing):
        return ring.exact_div(a, b)
    return ring.div(a, b)


def grlex_key(e: Exps) -> Tuple[int, Exps]:
    return (sum(e), e)


class SparseMultiPoly:
    """An immutable polynomial in ``nvars`` variables over ``ring``."""

    __slots__ = ("ring", "nvars", "terms", "_hash")

    def __init__(self, ring: Ring, nvars: int, terms: Optional[Dict[Exps, int]] = None):
        self.ring = ring
        self.nvars = nvars
        clean: Dict[Exps, int] = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ValueError("exponent vector length does not match nvars")
                if any(x < 0 for x in e):
                    raise ValueError("negative exponent")
                if isinstance(ring, FieldSpec) and not ring.contains(c):
                    raise ValueError(f"coefficient {c} is not in {ring!r}")
                if c != 0:
                    clean[tuple(e)] = c
        self.terms = clean
        self._hash = None

    # ------------------------------------------------------------ builders
    @classmethod
    def constant(cls, ring: Ring, nvars: int, c: int) -> "SparseMultiPoly":
        return cls(ring, nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, ring: Ring, nvars: int, i: int, exp: int = 1) -> "SparseMultiPoly":
        e = [0] * nvars
        e[i] = exp
        return cls(ring, nvars, {tuple(e): 1})

    @classmethod
    def _raw(cls, ring: Ring, nvars: int, terms: Dict[Exps, int]) -> "SparseMultiPoly":
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.nvars = nvars
        obj.terms = terms
        obj._hash = None
        return obj

    # ------------------------------------------------------------ queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((e[i] for e in self.terms), default=-1)

    def monomials(self) -> List[Exps]:
        return sorted(self.terms, key=grlex_key, reverse=True)

    def items(self) -> List[Tuple[Exps, int]]:
        return [(e, self.terms[e]) for e in self.monomials()]

    def support(self) -> frozenset:
        return frozenset(self.terms)

    def leading_term(self) -> Tuple[Exps, int]:
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def coefficient(self, e: Sequence[int]) -> int:
        return self.terms.get(tuple(e), 0)

    def variables(self) -> List[int]:
        used = set()
        for e in self.terms:
            used.update(i for i, x in enumerate(e) if x)
        return sorted(used)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMultiPoly):
            return NotImplemented
        return self.ring == other.ring and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"SparseMultiPoly({self.ring!r}, {self.render()})"

    def render(self) -> str:
        """Human-readable form with 1-indexed variables, e.g. ``x1^2*x3 - 1``."""
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.items():
            mono = "*".join(
                f"x{i + 1}" if x == 1 else f"x{i + 1}^{x}" for i, x in enumerate(e) if x
            )
            if isinstance(self.ring, IntegerRing):
                sign = "-" if c < 0 else "+"
                mag = abs(c)
            else:
                sign, mag = "+", c
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append((sign, body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    # --------------------------------------------------------- arithmetic
    def _check(self, other: "SparseMultiPoly") -> None:
        if self.ring != other.ring or self.nvars != other.nvars:
            raise ValueError("incompatible polynomials")

    def __add__(self, other: "SparseMultiPoly") -> "SparseMultiPoly":
        self._check(other)
        ring = self.ring
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = ring.add(out.get(e, 0), c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return SparseMultiPoly._raw(ring, self.nvars, out)

    def __neg__(self) -> "SparseMultiPoly":
        ring = self.ring
        return SparseMultiPoly._raw(ring, self.nvars, {e: ring.neg(c) for e, c in self.terms.items()})

    def __sub__(self, other: "SparseMultiPoly") -> "SparseMultiPoly":
        return self + (-other)

    def __mul__(self, other: "SparseMultiPoly") -> "SparseMultiPoly":
        self._check(other)
        ring = self.ring
        out: Dict[Exps, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = ring.add(out.get(e, 0), ring.mul(c1, c2))
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
        return SparseMultiPoly._raw(ring, self.nvars, out)

    def scale(self, c: int) -> "SparseMultiPoly":
        ring = self.ring
        out = {}
        for e, a in self.terms.items():
            v = ring.mul(a, c)
            if v:
                out[e] = v
        return SparseMultiPoly._raw(ring, self.nvars, out)

    def mul_monomial(self, i: int, exp: int) -> "SparseMultiPoly":
        """Multiply by x_i^exp (0-indexed variable)."""
        out = {}
        for e, c in self.terms.items():
            l = list(e)
            l[i] += exp
            out[tuple(l)] = c
        return SparseMultiPoly._raw(self.ring, self.nvars, out)

    def exact_div(self, other: "SparseMultiPoly") -> "SparseMultiPoly":
        """Quotient of an exact division; raises if ``other`` does not divide ``self``."""
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        ring = self.ring
        le, lc = other.leading_term()
        rem = dict(self.terms)
        quot: Dict[Exps, int] = {}
        while rem:
            e = max(rem, key=grlex_key)
            c = rem[e]
            diff = tuple(a - b for a, b in zip(e, le))
            if any(x < 0 for x in diff):
                raise ArithmeticError("polynomial division is not exact")
            qc = _exact_div(ring, c, lc)
            quot[diff] = qc
            for e2, c2 in other.terms.items():
                t = tuple(a + b for a, b in zip(diff, e2))
                v = ring.sub(rem.get(t, 0), ring.mul(qc, c2))
                if v:
                    rem[t] = v
                else:
                    rem.pop(t, None)
        return SparseMultiPoly._raw(ring, self.nvars, quot)

    def to_field(self, field: FieldSpec) -> "SparseMultiPoly":
        """Reduce integer coefficients into ``field`` (via its prime subfield)."""
        if isinstance(self.ring, FieldSpec):
            if self.ring != field:
                raise ValueError("already over a different field")
            return self
        return SparseMultiPoly(field, self.nvars, {e: c % field.p for e, c in self.terms.items()})

    # --------------------------------------------------------- evaluation
    def evaluate(self, field: FieldSpec, point: Sequence[int]) -> int:
        """Value at ``point`` (ints of ``field``)."""
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        cache: Dict[Tuple[int, int], int] = {}
        total = 0
        for e, c in self.terms.items():
            v = c % field.p if isinstance(self.ring, IntegerRing) else c
            if v == 0:
                continue
            for i, x in enumerate(e):
                if x:
                    key = (i, x)
                    pw = cache.get(key)
                    if pw is None:
                        pw = field.pow(point[i], x)
                        cache[key] = pw
                    v = field.mul(v, pw)
                    if v == 0:
                        break
            total = field.add(total, v)
        return total


def multipoly_eval(f: SparseMultiPoly, point: Sequence, field: Optional[FieldSpec] = None) -> int:
    """Evaluate at a point given as FieldElements (field inferred) or ints plus ``field``."""
    from .fields import FieldElement

    if field is None:
        if isinstance(f.ring, FieldSpec):
            field = f.ring
        elif point and isinstance(point[0], FieldElement):
            field = point[0].field
        else:
            raise ValueError("field must be given")
    vals = []
    for x in point:
        if isinstance(x, FieldElement):
            if x.field != field:
                raise ValueError("point coordinates must share one field")
            vals.append(x.value)
        else:
            vals.append(x)
    if len(vals) != f.nvars:
        raise ValueError(f"point has {len(vals)} coordinates, expected {f.nvars}")
    return f.evaluate(field, vals)


def random_poly(ring: Ring, nvars: int, nterms: int, max_exp: int, rng: random.Random,
                coeff_range: int = 5) -> SparseMultiPoly:
    terms: Dict[Exps, int] = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        if isinstance(ring, FieldSpec):
            terms[e] = ring.random_nonzero(rng)
        else:
            terms[e] = rng.choice([c for c in range(-coeff_range, coeff_range + 1) if c])
    return SparseMultiPoly(ring, nvars, terms)
