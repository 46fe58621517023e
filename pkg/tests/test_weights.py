import random
from itertools import combinations

import pytest

from rslist.weights import (
    AtomProfile,
    SetSystem,
    atoms,
    check_conjecture_hypotheses,
    enumerate_binary_profiles,
    nonempty_subsets,
    random_qualifying_profile,
    realize_profile,
    trim_to_minimal_t,
    weight,
    weight_from_atoms,
    weight_inclusion_exclusion,
    weight_lower_bound,
)


def system(n, *sets):
    """Build from 1-based element lists."""
    return SetSystem(n, tuple(frozenset(x - 1 for x in s) for s in sets))


def random_system(rng, t_max=5, n_max=12):
    t = rng.randint(2, t_max)
    n = rng.randint(1, n_max)
    p = rng.random()
    return SetSystem(n, tuple(frozenset(x for x in range(n) if rng.random() < p) for _ in range(t)))


TRIANGLE = system(3, [1, 2], [2, 3], [1, 3])


def test_atom_examples():
    P = atoms(system(5, [1, 2], [3], [4, 5]))
    assert P[[1]] == 2 and P[[2]] == 1 and P[[3]] == 2
    assert all(P[J] == 0 for J in nonempty_subsets(3, 2))
    P = atoms(system(2, [1, 2], [1, 2]))
    assert P[[1, 2]] == 2 and P[[1]] == 0 and P[[2]] == 0
    P = atoms(TRIANGLE)
    assert P[[1, 2]] == P[[1, 3]] == P[[2, 3]] == 1 and P[[1, 2, 3]] == 0


def test_weight_examples():
    assert weight(TRIANGLE, [1, 2, 3]) == 3
    assert weight(TRIANGLE, [2]) == 0
    S = system(6, [1, 2, 3, 4], [3, 4, 5])
    assert weight(S, [1, 2]) == len(S[1] & S[2]) == 2
    with pytest.raises(ValueError):
        weight(S, [])


def test_weight_from_atoms_examples():
    x = {frozenset({1, 2}): 1, frozenset({1, 2, 3}): 2, frozenset({1, 2, 4}): 3,
         frozenset({1, 2, 3, 4}): 4, frozenset({3, 4}): 5}
    P = AtomProfile(4, x)
    assert weight_from_atoms(P, [1, 2]) == 1 + 2 + 3 + 4
    assert weight_from_atoms(P, [1, 2, 3, 4]) == 1 + 5 + 2 * (2 + 3) + 3 * 4
    assert weight_from_atoms(AtomProfile(4, {}), [1, 2, 3, 4]) == 0


def test_weight_three_ways_on_random_systems():
    rng = random.Random(7)
    for _ in range(1000):
        S = random_system(rng)
        P = atoms(S)
        for J in nonempty_subsets(S.t):
            w = weight(S, J)
            assert w == weight_from_atoms(P, J) == weight_inclusion_exclusion(S, J)
        assert weight(S, range(1, S.t + 1)) >= weight_lower_bound(S)


def test_lower_bound_examples():
    S = system(4, [1, 2], [3, 4])
    assert weight(S, [1, 2]) == weight_lower_bound(S) == 0
    S = system(6, [1, 2], [2, 3])
    assert weight(S, [1, 2]) > weight_lower_bound(S)


def test_single_removal_drops_weight_by_at_most_one():
    rng = random.Random(3)
    for _ in range(300):
        S = random_system(rng, t_max=4, n_max=8)
        full = range(1, S.t + 1)
        w = weight(S, full)
        for i, s in enumerate(S.sets):
            for x in s:
                sets = list(S.sets)
                sets[i] = s - {x}
                assert w - weight(SetSystem(S.n, tuple(sets)), full) in (0, 1)


def test_hypotheses_examples():
    assert not check_conjecture_hypotheses(TRIANGLE, 1)
    assert check_conjecture_hypotheses(system(1, [1], [1], [1]), 1)
    assert not check_conjecture_hypotheses(system(3, [1, 2], [1, 2], [3]), 1)
    with pytest.raises(ValueError):
        check_conjecture_hypotheses(system(2, [1], [1]), 1)


def test_atom_counts_bounded_under_hypotheses():
    rng = random.Random(4)
    for k in (1, 2, 3):
        for _ in range(50):
            counts = random_qualifying_profile(4, k, rng)
            S = realize_profile(4, counts)
            assert check_conjecture_hypotheses(S, k)
            P = atoms(S)
            assert all(0 <= P[J] <= k for J in nonempty_subsets(4, 2))


def test_binary_profiles_for_k1():
    profs = enumerate_binary_profiles(4, 1)
    assert len(profs) == 29
    for p in profs:
        assert check_conjecture_hypotheses(realize_profile(4, p), 1)


def test_trim_unchanged_when_already_tight():
    S = system(6, [1, 2, 3, 4], [1, 2, 5, 6], [3, 4, 5, 6])  # pair weights 2, total 6 = 2k for k = 3
    res = trim_to_minimal_t(S, 3)
    assert res.t == 3 and res.removals == 0 and res.system == S


def test_trim_reaches_equality():
    # k = 4, pairwise overlaps of size 3 on disjoint blocks: total weight 9 > 2k
    S = system(9, [1, 2, 3, 4, 5, 6], [1, 2, 3, 7, 8, 9], [4, 5, 6, 7, 8, 9])
    assert weight(S, [1, 2, 3]) == 9
    res = trim_to_minimal_t(S, 4)
    assert res.t == 3 and res.removals == 1
    assert weight(res.system, [1, 2, 3]) == 8
    assert check_conjecture_hypotheses(res.system, 4)
    for a, b in zip(res.system.sets, (S[j] for j in res.chosen)):
        assert a <= b


def random_four_set_system(rng, k):
    """Random atom counts with every pair weight at most k - 1 and total at least 3k."""
    big = nonempty_subsets(4, 2)
    while True:
        counts = {J: rng.randint(0, k - 1) if len(J) == 2 else rng.randint(0, 1) for J in big}
        counts[(rng.randint(1, 4),)] = rng.randint(0, 2)
        Y = realize_profile(4, counts)
        if all(weight(Y, p) <= k - 1 for p in combinations(range(1, 5), 2)) \
                and weight(Y, range(1, 5)) >= 3 * k:
            return Y


def test_trim_random_four_set_systems():
    rng = random.Random(9)
    for _ in range(100):
        k = rng.randint(2, 4)
        Y = random_four_set_system(rng, k)
        res = trim_to_minimal_t(Y, k)
        assert check_conjecture_hypotheses(res.system, k)
        assert len(res.chosen) == res.t
        assert weight(res.system, range(1, res.t + 1)) == (res.t - 1) * k


def test_trim_rejects_heavy_pairs():
    S = system(4, [1, 2, 3], [1, 2, 4], [3, 4])
    with pytest.raises(ValueError):
        trim_to_minimal_t(S, 2)
