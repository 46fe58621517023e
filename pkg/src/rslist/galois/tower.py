"""Explicit binary tower fields GF(2) < GF(2^k) < GF(2^{k^2}) < ...

Each level is stored over its immediate predecessor, and the adjoined root of
each level's modulus is the tower generator for that level.
"""

from __future__ import annotations

from itertools import product
from typing import List, Optional, Sequence, Tuple, Union

from sympy import factorint

from . import gf2
from .fields import FieldElement, FieldSpec, _intern, field_create, prime_field
from .unipoly import is_irreducible_over


def smallest_irreducible_over(base: FieldSpec, step: int) -> Tuple[int, ...]:
    """The monic irreducible of degree ``step`` over ``base`` with the smallest packed int.

    Candidates are ordered by the int ``c_0 | c_1 << d | ...`` of their
    non-leading coefficient vector, i.e. lexicographically from the top
    coefficient down.
    """
    if step < 1:
        raise ValueError("step must be positive")
    q = base.order
    d = base.degree if not base.is_prime_field else 1
    mask = (1 << d) - 1
    for v in range(q ** step):
        coeffs = [(v >> (d * i)) & mask for i in range(step)] + [1]
        if step > 1 and coeffs[0] == 0:
            continue
        if base.p == 2 and step > 1 and all(coeffs[i] == 0 for i in range(1, step + 1, 2)):
            continue  # zero derivative: a square in characteristic 2
        if is_irreducible_over(base, coeffs):
            return tuple(coeffs)
    raise RuntimeError(f"no irreducible polynomial of degree {step} over {base!r}")


def frobenius_power(field: FieldSpec, a: int, q: int, times: int) -> int:
    for _ in range(times):
        a = field.pow(a, q)
    return a


def degree_over(field: FieldSpec, a: int, sub: FieldSpec) -> int:
    """Degree of ``a`` over the subfield ``sub``: the least d >= 1 with a^{|sub|^d} = a."""
    rel = field.degree // sub.degree
    if rel * sub.degree != field.degree:
        raise ValueError("not a subfield by degree")
    x = a
    for d in range(1, rel + 1):
        x = field.pow(x, sub.order)
        if x == a:
            return d
    raise RuntimeError("Frobenius orbit longer than the extension degree")


def tower_extend(base: FieldSpec, step: int,
                 modulus: Optional[Sequence[int]] = None) -> Tuple[FieldSpec, FieldElement]:
    """Extend a characteristic-2 ``base`` by degree ``step``.

    Returns the new field and a generator whose minimal polynomial over
    ``base`` has degree exactly ``step``.  Without an explicit modulus the
    smallest irreducible one is used; any choice yields a valid generator.
    """
    if base.p != 2:
        raise ValueError("tower extensions require characteristic 2")
    if step < 2:
        raise ValueError("step must be at least 2")
    if base.is_prime_field:
        ext = field_create(2, step, modulus)
    else:
        if modulus is None:
            coeffs = smallest_irreducible_over(base, step)
        else:
            coeffs = tuple(int(c) for c in modulus)
            if len(coeffs) != step + 1 or coeffs[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {step}")
            if not is_irreducible_over(base, coeffs):
                raise ValueError("modulus is reducible over the base field")
        ext = _intern(2, step, coeffs, base)
    gamma = ext.generator()
    for r in factorint(step):
        if frobenius_power(ext, gamma, base.order, step // r) == gamma:
            raise RuntimeError("generator lies in a proper intermediate field")
    return ext, FieldElement(ext, gamma)


def build_tower(k: int, n: int) -> Tuple[FieldSpec, List[FieldElement], List[FieldSpec]]:
    """Tower GF(2) < GF(2^k) < ... < GF(2^{k^n}).

    Returns the top field, the level generators embedded in it, and the list
    of levels (GF(2) first).
    """
    if k < 2 or n < 1:
        raise ValueError("need k >= 2 and n >= 1")
    levels = [prime_field(2)]
    gens = []
    for _ in range(n):
        ext, g = tower_extend(levels[-1], k)
        levels.append(ext)
        gens.append(g.value)
    top = levels[-1]
    return top, [FieldElement(top, g) for g in gens], levels


def monomial_products(field: FieldSpec, alphas: Sequence[int], k: int) -> List[int]:
    """All products alpha_1^{i_1} ... alpha_n^{i_n} with 0 <= i_j < k."""
    powers = []
    for a in alphas:
        row = [1]
        for _ in range(k - 1):
            row.append(field.mul(row[-1], a))
        powers.append(row)
    out = []
    for idx in product(range(k), repeat=len(alphas)):
        x = 1
        for j, i in enumerate(idx):
            x = field.mul(x, powers[j][i])
        out.append(x)
    return out


def verify_monomial_basis(alphas: Sequence[Union[FieldElement, int]], k: int,
                          field: Optional[FieldSpec] = None) -> bool:
    """True iff the k^n monomials in the alphas are GF(2)-linearly independent."""
    if field is None:
        if not alphas or not isinstance(alphas[0], FieldElement):
            raise ValueError("field must be given for raw int elements")
        field = alphas[0].field
    vals = []
    for a in alphas:
        if isinstance(a, FieldElement):
            if a.field != field:
                raise ValueError("elements belong to different fields")
            vals.append(a.value)
        else:
            vals.append(a)
    if field.p != 2:
        raise ValueError("monomial basis check needs characteristic 2")
    n = len(vals)
    if field.degree != k ** n:
        raise ValueError(f"field degree {field.degree} != k^n = {k ** n}")
    rows = [field.gf2_bits(x) for x in monomial_products(field, vals, k)]
    return gf2.gf2_rank(rows) == k ** n
