"""Finite fields GF(p) and GF(2^m), including nested tower extensions.

Elements are plain ints.  For a prime field the int is the residue.  For a
characteristic-2 extension of degree ``step`` over a base field whose
elements take ``d`` bits, an element ``c_0 + c_1*g + ... + c_{step-1}*g^{step-1}``
is stored as ``c_0 | c_1 << d | ...``.  A flat GF(2^m) is the special case of
GF(2) as base with ``d = 1``, so the int is the usual polynomial bitmask.

Two consequences of this packing are used throughout:

* an element of the base field is also a valid extension element with the
  same int (it sits in coordinate 0), so embedding is free;
* the bits of the int are coordinates over GF(2) in the tower monomial basis,
  which makes GF(2)-rank tests a bitset operation.
"""

from __future__ import annotations

import json
import random
from array import array
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from sympy import factorint, isprime

from . import gf2

TABLE_MAX_DEGREE = 16


class FieldSpec:
    """An immutable description of GF(p^m) together with its arithmetic."""

    __slots__ = (
        "p", "degree", "step", "modulus", "base", "order", "_ebits",
        "_exp", "_log", "_red", "_tail", "_mod_int", "_key", "__weakref__",
    )

    def __init__(self, p: int, step: int, modulus: Tuple[int, ...], base: Optional["FieldSpec"]):
        self.p = p
        self.step = step
        self.modulus = modulus
        self.base = base
        self.degree = step * (base.degree if base is not None else 1)
        self.order = p ** self.degree
        self._ebits = base.degree if base is not None else 0
        self._exp = None
        self._log = None
        self._red = None
        self._tail = None
        self._mod_int = 0
        if base is None:
            self._key = (p, (), ())
        else:
            bk = base._key
            self._key = (p, bk[1] + (step,), bk[2] + (modulus,))
        if base is not None and base.base is None and p == 2:
            self._mod_int = sum(c << i for i, c in enumerate(modulus))
            if self.degree > TABLE_MAX_DEGREE:
                self._build_reduction_table()
        if p == 2 and 1 < self.degree <= TABLE_MAX_DEGREE:
            self._build_tables()

    # ------------------------------------------------------------------ basics
    @property
    def is_prime_field(self) -> bool:
        return self.base is None

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def tower_steps(self) -> List[int]:
        return list(self._key[1])

    @property
    def moduli(self) -> List[List[int]]:
        return [list(m) for m in self._key[2]]

    def __repr__(self) -> str:
        if self.base is None:
            return f"GF({self.p})"
        if self.p == 2 and self.base.base is None:
            return f"GF(2^{self.degree})"
        return f"GF(2^{self.degree}) over {self.base!r}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __reduce__(self):
        return (_field_from_key, (self._key,))

    def elements(self) -> Iterator[int]:
        return iter(range(self.order))

    def random_element(self, rng: random.Random) -> int:
        return rng.randrange(self.order)

    def random_nonzero(self, rng: random.Random) -> int:
        return rng.randrange(1, self.order)

    def contains(self, a: int) -> bool:
        return 0 <= a < self.order

    def __call__(self, value: int) -> "FieldElement":
        if not self.contains(value):
            raise ValueError(f"{value} is not an element of {self!r}")
        return FieldElement(self, value)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    # ------------------------------------------------------------- arithmetic
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        return (-a) % self.p

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._log is not None:
            return self._exp[self._log[a] + self._log[b]]
        if self.base is None:
            return a * b % self.p
        if self._red is not None:
            return self._reduce(gf2.clmul(a, b))
        return self._mul_nested(a, b)

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"inverse of zero in {self!r}")
        if self._log is not None:
            return self._exp[(self.order - 1) - self._log[a]]
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        if self._mod_int:
            return gf2.gf2_invmod(a, self._mod_int)
        return self.pow(a, self.order - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if a == 0:
            return 1 if e == 0 else 0
        if self._log is not None:
            return self._exp[(self._log[a] * e) % (self.order - 1)]
        if self.base is None:
            return pow(a, e, self.p)
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def sum(self, values: Sequence[int]) -> int:
        r = 0
        if self.p == 2:
            for v in values:
                r ^= v
            return r
        return sum(values) % self.p

    # ------------------------------------------------------------ coordinates
    def coords(self, a: int) -> List[int]:
        """Coordinates of ``a`` over the immediate base, low degree first."""
        if self.base is None:
            return [a]
        d = self._ebits
        mask = (1 << d) - 1
        return [(a >> (d * i)) & mask for i in range(self.step)]

    def from_coords(self, coords: Sequence[int]) -> int:
        if self.base is None:
            (a,) = coords
            return a % self.p
        if len(coords) != self.step:
            raise ValueError("wrong number of coordinates")
        d = self._ebits
        r = 0
        for i, c in enumerate(coords):
            if not self.base.contains(c):
                raise ValueError(f"coordinate {c} is not in the base field")
            r |= c << (d * i)
        return r

    def gf2_bits(self, a: int) -> int:
        """Absolute GF(2) coordinates of ``a`` as a bitmask (characteristic 2 only)."""
        if self.p != 2:
            raise ValueError("GF(2) coordinates only exist in characteristic 2")
        return a

    def generator(self) -> int:
        """The adjoined root ``g`` of the modulus, as an element of this field."""
        if self.base is None:
            raise ValueError("a prime field has no adjoined generator")
        return 1 << self._ebits

    # --------------------------------------------------------------- internals
    def _mul_nested(self, a: int, b: int) -> int:
        base = self.base
        d = self._ebits
        m = self.step
        ac = self.coords(a)
        bc = self.coords(b)
        prod = [0] * (2 * m - 1)
        bmul = base.mul
        badd = base.add
        for i, x in enumerate(ac):
            if x == 0:
                continue
            for j, y in enumerate(bc):
                if y:
                    prod[i + j] = badd(prod[i + j], bmul(x, y))
        mod = self.modulus
        for top in range(2 * m - 2, m - 1, -1):
            c = prod[top]
            if c == 0:
                continue
            prod[top] = 0
            for i in range(m):
                if mod[i]:
                    prod[top - m + i] = base.sub(prod[top - m + i], bmul(c, mod[i]))
        r = 0
        for i in range(m):
            r |= prod[i] << (d * i)
        return r

    def _slow_mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._mod_int:
            return gf2.gf2_mulmod(a, b, self._mod_int)
        return self._mul_nested(a, b)

    def _build_reduction_table(self) -> None:
        m = self.degree
        f = self._mod_int
        self._red = [gf2.gf2_mod(h << m, f) for h in range(256)]
        tail = f ^ (1 << m)
        if tail.bit_length() <= m // 2:
            self._tail = [i for i in range(tail.bit_length()) if tail >> i & 1]

    def _reduce(self, r: int) -> int:
        m = self.degree
        if self._tail is not None:
            # x^m = tail(x); a sparse low-degree tail folds the top half twice at most
            mask = (1 << m) - 1
            tail = self._tail
            while r >> m:
                hi = r >> m
                r &= mask
                for i in tail:
                    r ^= hi << i
            return r
        red = self._red
        while True:
            top = r.bit_length()
            if top <= m:
                return r
            sh = max(top - m - 8, 0)
            h = r >> (m + sh)
            r ^= (h << (m + sh)) ^ (red[h] << sh)

    def _build_tables(self) -> None:
        q = self.order
        n = q - 1
        g = _find_primitive(self)
        exp = array("I", [0]) * (2 * n)
        log = array("I", [0]) * q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        self._exp = exp
        self._log = log


def _find_primitive(field: FieldSpec) -> int:
    n = field.order - 1
    if n == 1:
        return 1
    primes = list(factorint(n))
    for g in range(2, field.order):
        if all(_slow_pow(field, g, n // r) != 1 for r in primes):
            return g
    raise RuntimeError("no primitive element found")


def _slow_pow(field: FieldSpec, a: int, e: int) -> int:
    r = 1
    while e:
        if e & 1:
            r = field._slow_mul(r, a)
        e >>= 1
        if e:
            a = field._slow_mul(a, a)
    return r


# ----------------------------------------------------------------- creation
_CACHE: Dict[tuple, FieldSpec] = {}


def _intern(p: int, step: int, modulus: Tuple[int, ...], base: Optional[FieldSpec]) -> FieldSpec:
    if base is None:
        key = (p, (), ())
    else:
        key = (p, base._key[1] + (step,), base._key[2] + (modulus,))
    spec = _CACHE.get(key)
    if spec is None:
        spec = FieldSpec(p, step, modulus, base)
        _CACHE[key] = spec
    return spec


def prime_field(p: int) -> FieldSpec:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    return _intern(p, 1, (), None)


def _normalize_modulus(modulus: Union[int, Sequence[int]], m: int) -> Tuple[int, ...]:
    if isinstance(modulus, int):
        coeffs = tuple((modulus >> i) & 1 for i in range(modulus.bit_length()))
    else:
        coeffs = tuple(int(c) for c in modulus)
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) != m + 1 or coeffs[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {m}")
    return coeffs


def field_create(p: int, m: int = 1, modulus: Union[None, int, Sequence[int]] = None) -> FieldSpec:
    """GF(p^m).  Only prime fields and binary extension fields are supported.

    ``modulus`` is a coefficient list (low degree first) or, for p = 2, an int
    bitmask.  When omitted, the smallest irreducible polynomial is used.
    """
    prime = prime_field(p)
    if m < 1:
        raise ValueError("degree must be positive")
    if m == 1 and modulus is None:
        return prime
    if p != 2:
        raise ValueError("extension fields are only supported in characteristic 2")
    if modulus is None:
        coeffs = _normalize_modulus(gf2.smallest_irreducible_gf2(m), m)
    else:
        coeffs = _normalize_modulus(modulus, m)
        if any(c not in (0, 1) for c in coeffs):
            raise ValueError("modulus coefficients must lie in GF(2)")
        if not gf2.is_irreducible_gf2(sum(c << i for i, c in enumerate(coeffs))):
            raise ValueError("modulus is reducible over GF(2)")
    return _intern(2, m, coeffs, prime)


def extension_over(base: FieldSpec, modulus: Sequence[int]) -> FieldSpec:
    """Extension of a characteristic-2 ``base`` by a monic irreducible modulus over it."""
    from .unipoly import is_irreducible_over

    if base.p != 2:
        raise ValueError("tower extensions require characteristic 2")
    coeffs = tuple(int(c) for c in modulus)
    step = len(coeffs) - 1
    if step < 1 or coeffs[-1] != 1:
        raise ValueError("modulus must be monic of positive degree")
    if base.is_prime_field:
        return field_create(2, step, coeffs)
    if any(not base.contains(c) for c in coeffs):
        raise ValueError("modulus coefficients must lie in the base field")
    if not is_irreducible_over(base, list(coeffs)):
        raise ValueError("modulus is reducible over the base field")
    return _intern(2, step, coeffs, base)


def _field_from_key(key: tuple) -> FieldSpec:
    p, steps, moduli = key
    spec = prime_field(p)
    for step, mod in zip(steps, moduli):
        if spec.is_prime_field:
            spec = field_create(p, step, mod)
        else:
            spec = extension_over(spec, mod)
    return spec


# ------------------------------------------------------------ serialization
def field_to_json(field: FieldSpec) -> Dict[str, Any]:
    return {"p": field.p, "tower_steps": field.tower_steps, "moduli": field.moduli}


def field_from_json(obj: Dict[str, Any]) -> FieldSpec:
    steps = tuple(int(s) for s in obj.get("tower_steps", []))
    moduli = tuple(tuple(int(c) for c in m) for m in obj.get("moduli", []))
    if len(steps) != len(moduli):
        raise ValueError("tower_steps and moduli must have equal length")
    for s, m in zip(steps, moduli):
        if len(m) != s + 1:
            raise ValueError("modulus length does not match its step")
    return _field_from_key((int(obj["p"]), steps, moduli))


def element_to_json(field: FieldSpec, a: int) -> Union[int, str]:
    if field.p == 2:
        return hex(a)
    return a


def element_from_json(field: FieldSpec, obj: Any) -> int:
    if isinstance(obj, str):
        a = int(obj, 0)
    elif isinstance(obj, bool):
        raise ValueError("booleans are not field elements")
    elif isinstance(obj, int):
        a = obj
    elif isinstance(obj, list):
        if field.base is None:
            if len(obj) != 1:
                raise ValueError("prime field elements have one coordinate")
            return element_from_json(field, obj[0])
        return field.from_coords([element_from_json(field.base, c) for c in obj])
    else:
        raise ValueError(f"cannot decode field element from {obj!r}")
    if not field.contains(a):
        raise ValueError(f"{obj!r} is not an element of {field!r}")
    return a


def dumps_field(field: FieldSpec) -> str:
    return json.dumps(field_to_json(field), sort_keys=True)


# --------------------------------------------------------------- elements
class FieldElement:
    """A field element bound to its FieldSpec, with operator overloads."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldSpec, value: int):
        self.field = field
        self.value = value

    def _coerce(self, other: Any) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements belong to different fields")
            return other.value
        if isinstance(other, int):
            if self.field.p == 2:
                return other & 1 if self.field.is_prime_field else _check(self.field, other)
            return other % self.field.p
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(b, self.value))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.value, b))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field._key, self.value))

    def __bool__(self) -> bool:
        return self.value != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        if self.field.p == 2:
            return f"{self.field!r}({hex(self.value)})"
        return f"{self.field!r}({self.value})"

    def coords(self) -> List[int]:
        return self.field.coords(self.value)

    def to_json(self) -> Union[int, str]:
        return element_to_json(self.field, self.value)


def _check(field: FieldSpec, a: int) -> int:
    if not field.contains(a):
        raise ValueError(f"{a} is not an element of {field!r}")
    return a
