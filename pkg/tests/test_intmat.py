import random
from itertools import combinations
from pathlib import Path

import pytest

from rslist.galois import UniPoly, field_create, prime_field
from rslist.galois.linalg import field_rank
from rslist.galois.varmatrix import Mono, VarMatrix
from rslist.harness.experiments import explicit_code
from rslist.intmat import (
    Triple,
    build_3wise,
    build_twise,
    certificate_check_L2,
    certificate_spot_check,
    count_S,
    det_3wise_symbolic,
    enumerate_S,
    evaluate_triple,
    kernel_3wise,
    kernel_witness,
    minor_degree_bound,
    nonsingular_by_minors,
    nonsingular_exact_small,
    nonsingular_randomized,
    predicted_support_3wise,
    reorder_rep2,
)
from rslist.rscode import RSCode, agreement_set, encode
from rslist.weights import (
    SetSystem,
    enumerate_binary_profiles,
    random_qualifying_profile,
    realize_profile,
)

F8 = field_create(2, 3)
F16 = field_create(2, 4)
F64 = field_create(2, 64)
GOLDEN = Path(__file__).parent / "golden"

HEY_SETS = [{0, 1, 3}, {0, 2, 4}, {1, 2, 5}, {3, 4, 5}]


# ------------------------------------------------------------- 3-wise
def test_build_3wise_examples():
    M = build_3wise(1, set(), set(), set(), n=1)
    assert M.shape == (1, 3) and M.entries == [[1, 1, 1]]
    M = build_3wise(2, {0, 1}, {0, 2}, {1, 2})
    assert M.shape == (5, 6)
    assert M.render().splitlines()[2] == " 1 x1  .  .  .  ."
    with pytest.raises(ValueError):
        build_3wise(0, {0}, {0}, {0})


def test_3wise_shape_is_square_on_family():
    for tr in enumerate_S(5, 2):
        M = build_3wise(tr.s, *tr.sets, n=5)
        assert M.shape == (3 * tr.s, 3 * tr.s)


def test_enumerate_examples():
    S = enumerate_S(2, 1)
    assert len(S) == 6 and all(tr.s == 1 for tr in S)
    assert Triple(1, frozenset({0}), frozenset(), frozenset({1})) in S
    assert count_S(5, 2) == len(enumerate_S(5, 2)) == 330
    for n, k in [(3, 1), (4, 2), (6, 2), (6, 3)]:
        assert count_S(n, k) == len(enumerate_S(n, k))


def test_det_examples():
    d = det_3wise_symbolic(1, {0, 1}, {0}, {1})
    assert list(d.terms) == [(0, 0)] and abs(d.terms[(0, 0)]) == 1
    d = det_3wise_symbolic(2, {0, 1}, {2, 3}, {0, 1, 2, 3})
    assert set(d.terms) == {(1, 0, 1, 0), (1, 0, 0, 1), (0, 1, 1, 0), (0, 1, 0, 1)}
    with pytest.raises(ValueError):
        det_3wise_symbolic(2, {0, 1}, {0, 2}, {1, 2})


def test_det_support_matches_prediction():
    for tr in enumerate_S(5, 2) + enumerate_S(6, 3)[::40]:
        d = det_3wise_symbolic(tr.s, *tr.sets, n=6)
        assert set(d.terms) == predicted_support_3wise(tr.s, tr.a12, tr.a13, tr.a23, 6)
        assert all(abs(c) == 1 for c in d.terms.values())


def test_symbolic_and_numeric_agree():
    code = RSCode([1, 2, 3, 5, 7], 2, F8)
    for tr in enumerate_S(5, 2)[::7]:
        assert evaluate_triple(code, tr, "symbolic") == evaluate_triple(code, tr, "numeric")
    with pytest.raises(ValueError):
        evaluate_triple(code, enumerate_S(5, 2)[0], "guess")


def test_triangle_identity():
    rng = random.Random(1)
    F = prime_field(7)
    code = RSCode([0, 1, 2, 3, 4, 5], 3, F)
    for _ in range(20):
        words = [encode(code, UniPoly(F, [rng.randrange(7) for _ in range(3)])) for _ in range(3)]
        g = kernel_3wise(code, words)
        assert all(F.add(F.add(a, b), c) == 0 for a, b, c in zip(*g))


# --------------------------------------------------------------- t-wise
def test_golden_rep1_and_rep2_layouts():
    M = build_twise(2, HEY_SETS, n=6)
    assert M.render() == (GOLDEN / "twise_rep1.txt").read_text().rstrip("\n")
    R = reorder_rep2(M, 2)
    assert R.render() == (GOLDEN / "twise_rep2.txt").read_text().rstrip("\n")


def test_rep2_preserves_rank():
    rng = random.Random(5)
    for _ in range(10):
        S = realize_profile(4, random_qualifying_profile(4, 2, rng))
        M = build_twise(2, S.sets, n=S.n)
        pt = [F16.random_element(rng) for _ in range(M.nvars)]
        assert field_rank(F16, M.evaluate(F16, pt)) == field_rank(F16, reorder_rep2(M, 2).evaluate(F16, pt))


def test_rep2_rejects_other_matrices():
    with pytest.raises(ValueError):
        reorder_rep2(build_twise(2, HEY_SETS, n=6), 3)
    with pytest.raises(ValueError):
        reorder_rep2(build_3wise(1, set(), set(), set(), n=1), 1)


def test_twise_shapes():
    M = build_twise(3, HEY_SETS, n=6)
    assert M.shape == (3 * 3 + 6, 18)
    with pytest.raises(ValueError):
        build_twise(2, HEY_SETS[:2])
    with pytest.raises(ValueError):
        build_twise(0, HEY_SETS)


def test_t3_matches_3wise_up_to_row_order():
    for tr in enumerate_S(5, 2):
        if tr.s != 2:
            continue
        a = build_3wise(2, *tr.sets, n=5).entries
        b = build_twise(2, tr.sets, n=5).entries
        assert sorted(map(repr, a)) == sorted(map(repr, b))


def _disjoint_pinned_sets(words, rng):
    """Sets whose pairwise intersections are disjoint subsets of the agreement sets."""
    used = set()
    sets = [set() for _ in words]
    for i, j in combinations(range(len(words)), 2):
        for x in sorted(agreement_set([words[i].values, words[j].values]) - used):
            if rng.random() < 0.7:
                used.add(x)
                sets[i].add(x)
                sets[j].add(x)
    return sets


def test_kernel_witness_on_random_codes():
    rng = random.Random(3)
    code = RSCode(list(range(1, 9)), 2, F16)
    made = 0
    while made < 30:
        base = [UniPoly(F16, [rng.randrange(16), rng.randrange(16)]) for _ in range(4)]
        words = [encode(code, f) for f in base]
        if len({w.values for w in words}) < 4:
            continue
        vec = kernel_witness(code, words, _disjoint_pinned_sets(words, rng))
        assert len(vec) == 6 and any(any(b) for b in vec)
        made += 1


def test_kernel_witness_errors():
    code = RSCode([1, 2, 3, 4], 2, F8)
    w = encode(code, UniPoly(F8, [1, 1]))
    other = [encode(code, UniPoly(F8, [c, 0])) for c in (2, 3, 4)]
    with pytest.raises(ValueError):
        kernel_witness(code, [w, w] + other[:2], [set()] * 4)
    with pytest.raises(ValueError):
        kernel_witness(code, [w] + other, [{0}, {0}, set(), set()])
    F5 = prime_field(5)
    c5 = RSCode([0, 1, 2, 3], 2, F5)
    words5 = [encode(c5, UniPoly(F5, [a, 0])) for a in range(4)]
    with pytest.raises(ValueError):
        kernel_witness(c5, words5, [set()] * 4)


# ------------------------------------------------------- nonsingularity
def _random_small_twise(rng):
    n = rng.randint(3, 6)
    sets = [frozenset(x for x in range(n) if rng.random() < 0.5) for _ in range(4)]
    return build_twise(1, sets, n=n)


def test_exact_rank_matches_minor_oracle():
    rng = random.Random(8)
    seen = {True: 0, False: 0}
    for _ in range(150):
        M = _random_small_twise(rng)
        if M.nrows > 11 or M.nrows < M.ncols:
            continue
        exact = nonsingular_exact_small(M)
        assert exact == (nonsingular_by_minors(M) is not None)
        seen[exact] += 1
    assert seen[True] and seen[False]


def test_exact_rank_matches_oracle_for_k2():
    rng = random.Random(12)
    for _ in range(6):
        S = realize_profile(4, random_qualifying_profile(4, 2, rng))
        M = build_twise(2, S.sets, n=S.n)
        assert nonsingular_exact_small(M)
        assert nonsingular_by_minors(M) is not None


def test_all_k1_profiles_nonsingular():
    for p in enumerate_binary_profiles(4, 1):
        S = realize_profile(4, p)
        assert nonsingular_exact_small(build_twise(1, S.sets, n=S.n))


def test_exact_cap_and_short_matrices():
    S = realize_profile(4, random_qualifying_profile(4, 3, random.Random(0)))
    with pytest.raises(ValueError):
        nonsingular_exact_small(build_twise(3, S.sets, n=S.n))
    short = build_twise(1, [set(), set(), set(), set()], n=1)
    assert short.shape == (3, 6) and not nonsingular_exact_small(short)


def test_randomized_positive_and_undetermined():
    rng = random.Random(2)
    S = realize_profile(4, random_qualifying_profile(4, 3, rng))
    M = build_twise(3, S.sets, n=S.n)
    v = nonsingular_randomized(M, F64, 3, seed=1)
    assert v.nonsingular and v.verdict == "nonsingular" and v.trials_run >= 1
    assert v.degree_bound == minor_degree_bound(M)
    short = build_twise(1, [set(), set(), set(), set()], n=1)
    v = nonsingular_randomized(short, F64, 4, seed=1)
    assert v.verdict == "undetermined" and v.ranks == [3] * 4
    dup = VarMatrix([[Mono(0, 1), Mono(0, 1)], [Mono(1, 1), Mono(1, 1)], [1, 1]], 2)
    v = nonsingular_randomized(dup, F64, 3, seed=0)
    assert not v.nonsingular and v.false_negative_bound <= 1


def test_randomized_is_deterministic_and_guarded():
    M = build_twise(2, HEY_SETS, n=6)
    assert nonsingular_randomized(M, F64, 2, 9).to_json() == nonsingular_randomized(M, F64, 2, 9).to_json()
    with pytest.raises(ValueError):
        nonsingular_randomized(M, field_create(2, 16), 2, 0)


# ---------------------------------------------------------- certificate
def test_certificate_passes_for_explicit_codes():
    for n in (2, 3, 4):
        rep = certificate_check_L2(explicit_code(2, n))
        assert rep.passed and rep.complete and rep.determinants_evaluated == rep.family_size


def test_certificate_vacuous_radius():
    rep = certificate_check_L2(RSCode([1, 2, 3, 4], 3, F8))
    assert rep.radius == 0 and rep.vacuous


def test_certificate_fails_for_six_three_code():
    code = RSCode([1, 2, 3, 4, 5, 6], 3, F8)
    rep = certificate_check_L2(code)
    assert not rep.passed and rep.failing is not None
    assert rep.verdict == "fail"
    assert evaluate_triple(code, rep.failing) == 0
    full = certificate_check_L2(code, method="numeric", fail_fast=False)
    assert full.determinants_evaluated == full.family_size


def test_spot_check_is_partial():
    rep = certificate_spot_check(explicit_code(2, 4), trials=20, seed=3)
    assert rep.passed and not rep.complete and rep.method == "randomized"
    assert rep.determinants_evaluated == 20


def test_set_system_helper_consistency():
    # the golden sets realize four pairwise intersections of size one along a 4-cycle and two diagonals
    S = SetSystem(6, tuple(frozenset(s) for s in HEY_SETS))
    assert all(len(S[i] & S[j]) == 1 for i, j in combinations(range(1, 5), 2))
