"""GF(2) helpers on Python ints.

A polynomial over GF(2) is an int whose bit i is the coefficient of x^i.
A GF(2) row vector is an int bitset.
"""

from __future__ import annotations

from typing import Iterable, List

from sympy import factorint


def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] polynomials."""
    if a < b:
        a, b = b, a
    if b < 16:
        r = 0
        while b:
            if b & 1:
                r ^= a
            a <<= 1
            b >>= 1
        return r
    t = [0] * 16
    t[1] = a
    t[2] = a << 1
    t[3] = t[2] ^ a
    t[4] = a << 2
    t[5] = t[4] ^ a
    t[6] = t[4] ^ t[2]
    t[7] = t[6] ^ a
    a8 = a << 3
    for i in range(8):
        t[8 + i] = a8 ^ t[i]
    r = 0
    s = 0
    while b:
        r ^= t[b & 15] << s
        b >>= 4
        s += 4
    return r


def gf2_degree(a: int) -> int:
    return a.bit_length() - 1


def gf2_mod(a: int, f: int) -> int:
    df = f.bit_length() - 1
    while True:
        da = a.bit_length() - 1
        if da < df:
            return a
        a ^= f << (da - df)


def gf2_divmod(a: int, f: int) -> tuple[int, int]:
    if f == 0:
        raise ZeroDivisionError("polynomial division by zero")
    df = f.bit_length() - 1
    q = 0
    while True:
        da = a.bit_length() - 1
        if da < df:
            return q, a
        q |= 1 << (da - df)
        a ^= f << (da - df)


def gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, gf2_mod(a, b)
    return a


def gf2_invmod(a: int, f: int) -> int:
    """Inverse of a modulo an irreducible f, via the extended Euclidean algorithm."""
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    r0, r1 = f, gf2_mod(a, f)
    s0, s1 = 0, 1
    while r1 != 1:
        if r1 == 0:
            raise ValueError("element is not invertible modulo f")
        q, r = gf2_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 ^ clmul(q, s1)
    return gf2_mod(s1, f)


def gf2_mulmod(a: int, b: int, f: int) -> int:
    return gf2_mod(clmul(a, b), f)


def is_irreducible_gf2(f: int) -> bool:
    """Rabin's test for a GF(2)[x] polynomial of degree >= 1."""
    m = f.bit_length() - 1
    if m < 1:
        return False
    if m == 1:
        return True
    if not f & 1:
        return False
    primes = list(factorint(m))
    wanted = {m // r for r in primes}
    h = 2  # x
    frob = {}
    for i in range(1, m + 1):
        h = gf2_mulmod(h, h, f)
        if i in wanted:
            frob[i] = h
    if h != gf2_mod(2, f):
        return False
    for i in wanted:
        if gf2_gcd(f, frob[i] ^ 2) != 1:
            return False
    return True


def smallest_irreducible_gf2(m: int) -> int:
    """Smallest (as an int) irreducible monic polynomial of degree m over GF(2)."""
    if m < 1:
        raise ValueError("degree must be positive")
    for f in range(1 << m, 1 << (m + 1)):
        if is_irreducible_gf2(f):
            return f
    raise RuntimeError(f"no irreducible polynomial of degree {m} found")


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a list of int bitsets."""
    basis: dict[int, int] = {}
    rank = 0
    for v in rows:
        while v:
            top = v.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = v
                rank += 1
                break
            v ^= b
    return rank


def gf2_in_span(vec: int, rows: Iterable[int]) -> bool:
    basis: dict[int, int] = {}
    for v in rows:
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    while vec:
        top = vec.bit_length() - 1
        if top not in basis:
            return False
        vec ^= basis[top]
    return True


def bits_to_int(bits: Iterable[int]) -> int:
    r = 0
    for i, b in enumerate(bits):
        if b & 1:
            r |= 1 << i
    return r


def int_to_bits(v: int, length: int) -> List[int]:
    return [(v >> i) & 1 for i in range(length)]
