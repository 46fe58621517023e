import pickle
import random
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from rslist.galois import (
    FieldElement,
    UniPoly,
    build_tower,
    degree_over,
    element_from_json,
    element_to_json,
    field_create,
    field_from_json,
    field_to_json,
    prime_field,
    tower_extend,
    verify_monomial_basis,
)
from rslist.galois.gf2 import (
    bits_to_int,
    clmul,
    gf2_divmod,
    gf2_in_span,
    gf2_invmod,
    gf2_rank,
    int_to_bits,
    is_irreducible_gf2,
    smallest_irreducible_gf2,
)
from rslist.galois.linalg import (
    field_det,
    field_nullspace,
    field_rank,
    fraction_nullspace,
    fraction_rank,
    integer_det,
)
from rslist.galois.multipoly import ZZ, SparseMultiPoly, multipoly_eval, random_poly
from rslist.galois.tower import monomial_products
from rslist.galois.unipoly import is_irreducible_over, rabin_irreducible
from rslist.galois.varmatrix import Mono, VarMatrix, identity_varmatrix, multipoly_det


# ------------------------------------------------------------ reference math
def slow_clmul(a, b):
    r = 0
    i = 0
    while b >> i:
        if b >> i & 1:
            r ^= a << i
        i += 1
    return r


def slow_gf2m_mul(a, b, modulus):
    r = slow_clmul(a, b)
    m = modulus.bit_length() - 1
    while r.bit_length() - 1 >= m:
        r ^= modulus << (r.bit_length() - 1 - m)
    return r


def sympy_irreducible_gf2(mask):
    x = sympy.symbols("x")
    coeffs = [int(c) for c in reversed(bin(mask)[2:])]
    expr = sum(c * x ** i for i, c in enumerate(coeffs))
    return sympy.Poly(expr, x, modulus=2).is_irreducible


# ------------------------------------------------------------------- gf2
def test_clmul_matches_schoolbook():
    rng = random.Random(5)
    for _ in range(300):
        a, b = rng.getrandbits(70), rng.getrandbits(70)
        assert clmul(a, b) == slow_clmul(a, b)


def test_gf2_divmod_and_inverse():
    f = 0b10011  # x^4 + x + 1
    rng = random.Random(1)
    for _ in range(50):
        a = rng.getrandbits(12)
        q, r = gf2_divmod(a, f)
        assert slow_clmul(q, f) ^ r == a and r.bit_length() < 5
    for a in range(1, 16):
        assert slow_gf2m_mul(a, gf2_invmod(a, f), f) == 1


@pytest.mark.parametrize("m", range(1, 13))
def test_irreducibility_against_sympy(m):
    for mask in range(1 << m, 1 << (m + 1)):
        if m > 8 and mask % 7:
            continue  # sample the larger degrees
        assert is_irreducible_gf2(mask) == sympy_irreducible_gf2(mask), bin(mask)


def test_smallest_irreducible_frozen():
    assert smallest_irreducible_gf2(2) == 0b111
    assert smallest_irreducible_gf2(3) == 0b1011
    assert smallest_irreducible_gf2(4) == 0b10011
    assert smallest_irreducible_gf2(8) == 0b100011011
    assert smallest_irreducible_gf2(64) == (1 << 64) | 0b11011


def test_gf2_span_and_rank():
    rows = [0b011, 0b110]
    assert gf2_rank(rows) == 2
    assert gf2_in_span(0b101, rows)
    assert not gf2_in_span(0b001, rows)
    assert gf2_rank([0b1, 0b1, 0]) == 1
    assert int_to_bits(bits_to_int([1, 0, 1, 1]), 4) == [1, 0, 1, 1]


# ----------------------------------------------------------------- fields
def test_field_create_examples():
    F2 = field_create(2, 1)
    assert F2.order == 2 and F2.is_prime_field
    F = field_create(2, 4, [1, 1, 0, 0, 1])
    assert F.order == 16 and F.moduli == [[1, 1, 0, 0, 1]]
    assert field_create(5).order == 5


def test_field_create_errors():
    with pytest.raises(ValueError):
        field_create(4)
    with pytest.raises(ValueError):
        field_create(2, 4, [1, 0, 1, 0, 1])  # (x^2 + x + 1)^2
    with pytest.raises(ValueError):
        field_create(3, 2)


def test_default_modulus_is_smallest():
    assert field_create(2, 4).moduli == [[1, 1, 0, 0, 1]]
    assert field_create(2, 8).moduli == [[1, 1, 0, 1, 1, 0, 0, 0, 1]]


@pytest.mark.parametrize("m", [3, 4, 8, 16, 20, 32, 64])
def test_flat_multiplication_matches_reference(m):
    F = field_create(2, m)
    modulus = sum(c << i for i, c in enumerate(F.moduli[0]))
    rng = random.Random(m)
    for _ in range(200):
        a, b = F.random_element(rng), F.random_element(rng)
        assert F.mul(a, b) == slow_gf2m_mul(a, b, modulus)


FIELDS = [prime_field(2), prime_field(7), prime_field(101), field_create(2, 3), field_create(2, 16),
          field_create(2, 20), field_create(2, 64)]


@pytest.mark.parametrize("F", FIELDS, ids=repr)
def test_field_axioms(F):
    rng = random.Random(F.order % 1000)
    for _ in range(1000):
        a, b, c = (F.random_element(rng) for _ in range(3))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        if a:
            assert F.mul(a, F.inv(a)) == 1
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_field_elements_wrap_ints():
    F = field_create(2, 4)
    a, b = F(2), F(8)
    assert isinstance(a * b, FieldElement)
    assert int(a * b) == 3  # x * x^3 = x + 1
    assert (a / b) * b == a
    assert a ** 15 == F.one
    assert a + a == F.zero


def test_field_json_roundtrip_and_pickle():
    for F in [prime_field(5), field_create(2, 8), build_tower(2, 3)[0]]:
        G = field_from_json(field_to_json(F))
        assert G == F and hash(G) == hash(F)
        assert pickle.loads(pickle.dumps(F)) == F
    F = field_create(2, 8)
    assert element_to_json(F, 0xA5) == "0xa5"
    assert element_from_json(F, "0xa5") == 0xA5
    assert element_from_json(F, 0xA5) == 0xA5
    assert element_to_json(prime_field(7), 3) == 3


# ------------------------------------------------------------------ towers
def test_tower_steps_frozen():
    top, gens, levels = build_tower(2, 5)
    assert [L.degree for L in levels] == [1, 2, 4, 8, 16, 32]
    assert top.moduli == [[1, 1, 1], [2, 1, 1], [8, 1, 1], [128, 1, 1], [32768, 1, 1]]
    assert [g.value for g in gens] == [2, 4, 16, 256, 65536]


def test_tower_extend_examples():
    F4, g = tower_extend(prime_field(2), 2)
    assert F4.order == 4 and degree_over(F4, g.value, prime_field(2)) == 2
    F16, g2 = tower_extend(F4, 2)
    assert F16.order == 16 and degree_over(F16, g2.value, F4) == 2
    F8, g3 = tower_extend(prime_field(2), 3)
    assert F8.order == 8 and degree_over(F8, g3.value, prime_field(2)) == 3
    with pytest.raises(ValueError):
        tower_extend(prime_field(2), 1)
    with pytest.raises(ValueError):
        tower_extend(prime_field(3), 2)


def test_tower_field_axioms_and_embedding():
    top, gens, levels = build_tower(2, 3)
    rng = random.Random(0)
    for _ in range(500):
        a, b, c = (top.random_element(rng) for _ in range(3))
        assert top.mul(a, top.add(b, c)) == top.add(top.mul(a, b), top.mul(a, c))
        if a:
            assert top.mul(a, top.inv(a)) == 1
    # the subfield GF(4) sits inside with the same integers
    F4 = levels[1]
    for a, b in product(range(4), repeat=2):
        assert top.mul(a, b) == F4.mul(a, b)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_monomial_basis(n):
    top, gens, _ = build_tower(2, n)
    assert verify_monomial_basis(gens, 2)
    assert len(monomial_products(top, [g.value for g in gens], 2)) == 2 ** n


def test_monomial_basis_rejects_repeats_and_wrong_degree():
    top, gens, _ = build_tower(2, 2)
    assert not verify_monomial_basis([gens[0], gens[0]], 2)
    with pytest.raises(ValueError):
        verify_monomial_basis(gens[:1], 2)


def test_irreducibility_fast_path_agrees_with_rabin():
    F = field_create(2, 4)
    for c0, c1 in product(range(1, 16), range(16)):
        coeffs = [c0, c1, 1]
        assert is_irreducible_over(F, coeffs) == rabin_irreducible(F, coeffs)


# --------------------------------------------------------------- unipoly
@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 255), max_size=6), st.lists(st.integers(0, 255), min_size=1, max_size=4))
def test_unipoly_division_identity(a, b):
    F = field_create(2, 8)
    A, B = UniPoly(F, a), UniPoly(F, b)
    if B.is_zero():
        return
    q, r = A.divmod(B)
    assert q * B + r == A
    assert r.degree < B.degree


def test_unipoly_roots_and_degree():
    F = prime_field(7)
    f = UniPoly.from_roots(F, [1, 2, 5])
    assert f.degree == 3
    assert sorted(f.roots(F.elements())) == [1, 2, 5]
    assert UniPoly.zero(F).degree == -1


# -------------------------------------------------------------- multipoly
def test_multipoly_render_and_arithmetic():
    x1 = SparseMultiPoly.variable(ZZ, 2, 0)
    x2 = SparseMultiPoly.variable(ZZ, 2, 1)
    f = x1 * x2 - SparseMultiPoly.constant(ZZ, 2, 1)
    assert f.render() == "x1*x2 - 1"
    assert f.total_degree == 2
    g = (x1 + x2) * (x1 - x2)
    assert g == x1 * x1 - x2 * x2
    assert g.exact_div(x1 + x2) == x1 - x2


def test_multipoly_eval_examples():
    x1 = SparseMultiPoly.variable(ZZ, 2, 0)
    x2 = SparseMultiPoly.variable(ZZ, 2, 1)
    F5 = prime_field(5)
    assert multipoly_eval(x1 * x2 - SparseMultiPoly.constant(ZZ, 2, 1), [F5(1), F5(1)]) == F5(0)
    F4 = field_create(2, 2)
    a = F4.generator()
    assert multipoly_eval(x1 + x2, [F4(a), F4(a)]) == F4(0)
    f = x1 * x1 + x1 + SparseMultiPoly.constant(ZZ, 2, 1)
    assert multipoly_eval(f, [F4(a), F4(0)]) == F4(0)
    with pytest.raises(ValueError):
        multipoly_eval(f, [F4(a)])


def test_schwartz_zippel_zero_fraction():
    F = field_create(2, 8)
    rng = random.Random(3)
    f = random_poly(F, 3, 5, 2, rng)
    d = f.total_degree
    assert d > 0
    zeros = sum(f.evaluate(F, [F.random_element(rng) for _ in range(3)]) == 0 for _ in range(10000))
    assert zeros / 10000 <= 2 * d / F.order


# -------------------------------------------------------------- varmatrix
def leibniz(M, ring=ZZ):
    from itertools import permutations
    n = M.nrows
    total = SparseMultiPoly(ring, M.nvars, {})
    for perm in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = SparseMultiPoly.constant(ring, M.nvars, ring.neg(1) if inv % 2 else 1)
        for i, j in enumerate(perm):
            term = term * M.entry_poly(i, j, ring)
            if term.is_zero():
                break
        total = total + term
    return total


def test_det_small_examples():
    assert multipoly_det(identity_varmatrix(3)) == SparseMultiPoly.constant(ZZ, 0, 1)
    M = VarMatrix([[Mono(0, 1), 1], [1, Mono(1, 1)]], 2)
    assert multipoly_det(M).render() == "x1*x2 - 1"


def test_det_duplicated_column_is_zero():
    M = VarMatrix([[Mono(0, 1), Mono(0, 1), 1], [1, 1, Mono(1, 2)], [Mono(2, 1), Mono(2, 1), 0]], 3)
    assert multipoly_det(M).is_zero()


@pytest.mark.parametrize("order", [3, 5, 7, 8])
def test_det_matches_leibniz(order):
    rng = random.Random(order)
    for _ in range(3):
        entries = [[rng.choice([0, 0, 1, Mono(rng.randrange(4), rng.randint(1, 2))]) for _ in range(order)]
                   for _ in range(order)]
        M = VarMatrix(entries, 4)
        assert multipoly_det(M) == leibniz(M)
        assert multipoly_det(M, prime_field(2)) == leibniz(M, prime_field(2))


@pytest.mark.parametrize("order", [9, 10, 12])
def test_det_fraction_free_path_matches_evaluation(order):
    F = prime_field(1000003)
    rng = random.Random(order)
    entries = [[rng.choice([0, 0, 0, 1, Mono(rng.randrange(5), rng.randint(1, 2))]) for _ in range(order)]
               for _ in range(order)]
    M = VarMatrix(entries, 5)
    d = multipoly_det(M)
    assert not d.is_zero()
    for _ in range(5):
        point = [F.random_element(rng) for _ in range(5)]
        assert d.evaluate(F, point) == field_det(F, M.evaluate(F, point))


def test_det_errors():
    with pytest.raises(ValueError):
        multipoly_det(VarMatrix([[1, 0]], 0))
    with pytest.raises(ValueError):
        multipoly_det(identity_varmatrix(13))


# ----------------------------------------------------------------- linalg
def test_field_linear_algebra():
    F = prime_field(7)
    M = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert field_rank(F, M) == 2
    assert field_det(F, M) == 0
    (v,) = field_nullspace(F, M)
    assert all(sum(F.mul(a, b) for a, b in zip(row, v)) % 7 == 0 for row in M)


def test_rational_linear_algebra():
    M = [[1, 1, 0], [0, 1, 1]]
    assert fraction_rank(M) == 2
    (v,) = fraction_nullspace(M, 3)
    assert [int(x) for x in v] == [1, -1, 1]
    assert integer_det([[2, 1], [7, 4]]) == 1
    assert integer_det([[1, 2, 3], [4, 5, 6], [7, 8, 10]]) == -3
