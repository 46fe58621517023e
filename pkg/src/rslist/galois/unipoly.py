"""Univariate polynomials over a FieldSpec, coefficients stored low degree first."""

from __future__ import annotations

from random import Random
from typing import Iterable, List, Sequence, Tuple

from sympy import factorint

from .fields import FieldSpec


def _trim(coeffs: Iterable[int]) -> Tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


class UniPoly:
    """An immutable polynomial over ``field``; the zero polynomial has no coefficients."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FieldSpec, coeffs: Iterable[int] = ()):
        c = _trim(coeffs)
        for a in c:
            if not field.contains(a):
                raise ValueError(f"coefficient {a} is not in {field!r}")
        self.field = field
        self.coeffs = c

    @classmethod
    def zero(cls, field: FieldSpec) -> "UniPoly":
        return cls(field, ())

    @classmethod
    def monomial(cls, field: FieldSpec, degree: int, coeff: int = 1) -> "UniPoly":
        return cls(field, [0] * degree + [coeff])

    @classmethod
    def from_roots(cls, field: FieldSpec, roots: Iterable[int]) -> "UniPoly":
        p = cls(field, [1])
        for r in roots:
            p = p * cls(field, [field.neg(r), 1])
        return p

    @classmethod
    def random(cls, field: FieldSpec, bound: int, rng: Random) -> "UniPoly":
        """Uniform polynomial of degree < bound."""
        return cls(field, [field.random_element(rng) for _ in range(bound)])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coefficient_vector(self, length: int) -> List[int]:
        if len(self.coeffs) > length:
            raise ValueError("polynomial does not fit in the requested length")
        return list(self.coeffs) + [0] * (length - len(self.coeffs))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, UniPoly) and self.field == other.field and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def __repr__(self) -> str:
        return f"UniPoly({self.field!r}, {list(self.coeffs)})"

    def _same(self, other: "UniPoly") -> None:
        if self.field != other.field:
            raise ValueError("polynomials over different fields")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._same(other)
        f = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = f.add(out[i], y)
        return UniPoly(f, out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.field, [self.field.neg(a) for a in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._same(other)
        return UniPoly(self.field, _mul(self.field, self.coeffs, other.coeffs))

    def scale(self, c: int) -> "UniPoly":
        return UniPoly(self.field, [self.field.mul(c, a) for a in self.coeffs])

    def __call__(self, x: int) -> int:
        return self.evaluate(x)

    def evaluate(self, x: int) -> int:
        f = self.field
        r = 0
        for a in reversed(self.coeffs):
            r = f.add(f.mul(r, x), a)
        return r

    def divmod(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        self._same(other)
        q, r = _divmod(self.field, self.coeffs, other.coeffs)
        return UniPoly(self.field, q), UniPoly(self.field, r)

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[0]

    def roots(self, points: Iterable[int]) -> List[int]:
        return [x for x in points if self.evaluate(x) == 0]


def _mul(f: FieldSpec, a: Sequence[int], b: Sequence[int]) -> List[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                out[i + j] = f.add(out[i + j], f.mul(x, y))
    return out


def _divmod(f: FieldSpec, a: Sequence[int], b: Sequence[int]) -> Tuple[List[int], List[int]]:
    b = list(_trim(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(_trim(a))
    db = len(b) - 1
    if len(r) - 1 < db:
        return [], r
    inv_lead = f.inv(b[-1])
    q = [0] * (len(r) - db)
    for top in range(len(r) - 1, db - 1, -1):
        c = r[top]
        if c == 0:
            continue
        c = f.mul(c, inv_lead)
        q[top - db] = c
        for i in range(db + 1):
            if b[i]:
                r[top - db + i] = f.sub(r[top - db + i], f.mul(c, b[i]))
    return q, list(_trim(r[:db]))


def _mod(f: FieldSpec, a: Sequence[int], g: Sequence[int]) -> List[int]:
    return _divmod(f, a, g)[1]


def _gcd(f: FieldSpec, a: Sequence[int], b: Sequence[int]) -> List[int]:
    a, b = list(_trim(a)), list(_trim(b))
    while b:
        a, b = b, _mod(f, a, b)
    return a


def _powmod(f: FieldSpec, a: Sequence[int], e: int, g: Sequence[int]) -> List[int]:
    result: List[int] = [1]
    base = _mod(f, a, g)
    while e:
        if e & 1:
            result = _mod(f, _mul(f, result, base), g)
        e >>= 1
        if e:
            base = _mod(f, _mul(f, base, base), g)
    return _mod(f, result, g)


def absolute_trace(field: FieldSpec, a: int) -> int:
    """Trace of ``a`` down to the prime field GF(2)."""
    if field.p != 2:
        raise ValueError("trace helper is for characteristic 2")
    t = 0
    x = a
    for _ in range(field.degree):
        t ^= x
        x = field.mul(x, x)
    return t


def is_irreducible_over(field: FieldSpec, coeffs: Sequence[int]) -> bool:
    """Irreducibility of a monic polynomial over ``field``.

    Quadratics in characteristic 2 use the trace criterion: x^2 + b x + c with
    b != 0 is irreducible iff Tr(c / b^2) = 1.  Everything else goes through
    Rabin's test.
    """
    g = list(_trim(coeffs))
    if field.p == 2 and len(g) == 3 and g[2] == 1:
        b, c = g[1], g[0]
        if b == 0:
            return False
        return absolute_trace(field, field.div(c, field.mul(b, b))) == 1
    return rabin_irreducible(field, g)


def rabin_irreducible(field: FieldSpec, coeffs: Sequence[int]) -> bool:
    """Rabin's irreducibility test for a monic polynomial over ``field``."""
    g = list(_trim(coeffs))
    m = len(g) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if g[0] == 0:
        return False
    q = field.order
    x = [0, 1]
    wanted = {m // r for r in factorint(m)}
    frob = {}
    h = x
    for i in range(1, m + 1):
        h = _powmod(field, h, q, g)
        if i in wanted:
            frob[i] = h
    if list(_trim(h)) != _mod(field, x, g):
        return False
    for i in wanted:
        diff = list(frob[i]) + [0] * max(0, 2 - len(frob[i]))
        diff[1] = field.sub(diff[1], 1)
        if len(_gcd(field, g, diff)) != 1:
            return False
    return True
