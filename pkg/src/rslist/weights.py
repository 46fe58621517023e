"""Weights and atoms of set systems.

A SetSystem holds t subsets of the ground set {0, ..., n-1}.  Set indices
(the J in wt(I_J) and x_J) are 1-based, matching the sets I_1, ..., I_t.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

Index = FrozenSet[int]


@dataclass(frozen=True)
class SetSystem:
    n: int
    sets: Tuple[FrozenSet[int], ...]

    def __post_init__(self):
        sets = tuple(frozenset(s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if not sets:
            raise ValueError("a set system needs at least one set")
        for s in sets:
            if any(not 0 <= x < self.n for x in s):
                raise ValueError(f"element outside the ground set of size {self.n}")

    @property
    def t(self) -> int:
        return len(self.sets)

    def __getitem__(self, j: int) -> FrozenSet[int]:
        """The set I_j (1-based)."""
        return self.sets[j - 1]

    def intersection(self, J: Iterable[int]) -> FrozenSet[int]:
        J = list(J)
        out = set(self[J[0]])
        for j in J[1:]:
            out &= self[j]
        return frozenset(out)

    def to_json(self) -> Dict:
        return {"n": self.n, "sets": [sorted(x + 1 for x in s) for s in self.sets]}

    @classmethod
    def from_json(cls, obj: Dict) -> "SetSystem":
        return cls(int(obj["n"]), tuple(frozenset(int(x) - 1 for x in s) for s in obj["sets"]))


@dataclass(frozen=True)
class AtomProfile:
    """x_J for every nonempty J of [t]."""

    t: int
    counts: Dict[Index, int]

    def __getitem__(self, J: Iterable[int]) -> int:
        return self.counts.get(frozenset(J), 0)

    def total(self) -> int:
        return sum(self.counts.values())


def nonempty_subsets(t: int, min_size: int = 1) -> List[Index]:
    return [frozenset(c) for r in range(min_size, t + 1) for c in combinations(range(1, t + 1), r)]


def _index_set(J: Iterable[int], t: int) -> Index:
    J = frozenset(J)
    if not J:
        raise ValueError("J must be nonempty")
    if any(not 1 <= j <= t for j in J):
        raise ValueError(f"set indices must lie in 1..{t}")
    return J


def atoms(S: SetSystem) -> AtomProfile:
    counts = {J: 0 for J in nonempty_subsets(S.t)}
    members: Dict[int, set] = {}
    for j, s in enumerate(S.sets, start=1):
        for x in s:
            members.setdefault(x, set()).add(j)
    for J in members.values():
        counts[frozenset(J)] += 1
    return AtomProfile(S.t, counts)


def weight(S: SetSystem, J: Iterable[int]) -> int:
    """wt(I_J) = sum of |I_j| minus the size of their union."""
    J = _index_set(J, S.t)
    union = set()
    total = 0
    for j in J:
        total += len(S[j])
        union |= S[j]
    return total - len(union)


def weight_inclusion_exclusion(S: SetSystem, J: Iterable[int]) -> int:
    """The same weight through alternating intersection sizes."""
    J = sorted(_index_set(J, S.t))
    total = 0
    for r in range(2, len(J) + 1):
        for sub in combinations(J, r):
            total += (-1) ** r * len(S.intersection(sub))
    return total


def weight_from_atoms(P: AtomProfile, J: Iterable[int]) -> int:
    """sum over U meeting J of (|U & J| - 1) x_U."""
    J = _index_set(J, P.t)
    return sum((len(U & J) - 1) * x for U, x in P.counts.items() if x and U & J)


def weight_lower_bound(S: SetSystem) -> int:
    return sum(len(s) for s in S.sets) - S.n


def check_conjecture_hypotheses(S: SetSystem, k: int) -> bool:
    """wt(I_J) <= (|J|-1) k for all nonempty J, with equality at J = [t]."""
    if S.t < 3:
        raise ValueError("the hypotheses concern t >= 3 sets")
    for J in nonempty_subsets(S.t, 2):
        if weight(S, J) > (len(J) - 1) * k:
            return False
    return weight(S, range(1, S.t + 1)) == (S.t - 1) * k


@dataclass(frozen=True)
class TrimResult:
    t: int
    system: SetSystem
    chosen: Tuple[int, ...]  # 1-based indices of the Y's that were kept
    removals: int


def trim_to_minimal_t(Y: SetSystem, k: int) -> TrimResult:
    """Pick the fewest Y's reaching weight (t-1)k and shrink them to equality.

    The subfamily is the first, in order of size and then lexicographic order,
    whose weight is at least (t-1)k.  Elements are then removed one at a time
    from the currently largest set (lowest index on ties), always taking its
    lowest element that another kept set also contains.  Such a removal lowers
    the total weight by exactly one, and no weight ever increases, so the
    proper sub-bounds inherited from minimality keep holding.
    """
    L = Y.t - 1
    if L < 2:
        raise ValueError("trimming needs at least three sets")
    if weight(Y, range(1, Y.t + 1)) < L * k:
        raise ValueError("total weight is below L*k")
    for i, j in combinations(range(1, Y.t + 1), 2):
        if weight(Y, (i, j)) > k - 1:
            raise ValueError(f"pair weight wt(Y_{i}, Y_{j}) exceeds k - 1")
    chosen: Optional[Tuple[int, ...]] = None
    for t in range(3, Y.t + 1):
        for sub in combinations(range(1, Y.t + 1), t):
            if weight(Y, sub) >= (t - 1) * k:
                chosen = sub
                break
        if chosen:
            break
    assert chosen is not None
    sets = [set(Y[j]) for j in chosen]
    t = len(chosen)
    target = (t - 1) * k
    removals = 0
    while _wt(sets) > target:
        order = sorted(range(t), key=lambda i: (-len(sets[i]), i))
        for i in order:
            shared = [x for x in sorted(sets[i]) if any(x in sets[j] for j in range(t) if j != i)]
            if shared:
                sets[i].discard(shared[0])
                removals += 1
                break
        else:  # pragma: no cover - weight > 0 forces a shared element
            raise RuntimeError("no shared element left to remove")
    return TrimResult(t, SetSystem(Y.n, tuple(frozenset(s) for s in sets)), chosen, removals)


def _wt(sets: Sequence[set]) -> int:
    union = set()
    for s in sets:
        union |= s
    return sum(len(s) for s in sets) - len(union)


# ------------------------------------------------ systems from atom profiles
def realize_profile(t: int, counts: Dict[Index, int]) -> SetSystem:
    """A set system with exactly the given atom counts (fresh elements per atom)."""
    sets: List[set] = [set() for _ in range(t)]
    x = 0
    for J in nonempty_subsets(t):
        for _ in range(counts.get(J, 0)):
            for j in J:
                sets[j - 1].add(x)
            x += 1
    return SetSystem(max(x, 1), tuple(frozenset(s) for s in sets))


def profile_weight(counts: Dict[Index, int], J: Index) -> int:
    return sum((len(U & J) - 1) * x for U, x in counts.items() if x and U & J)


def enumerate_binary_profiles(t: int, k: int) -> List[Dict[Index, int]]:
    """All profiles with x_J in {0, 1} for |J| >= 2 (no singleton atoms) meeting the hypotheses."""
    atoms_ge2 = nonempty_subsets(t, 2)
    constraints = [(J, (len(J) - 1) * k) for J in atoms_ge2]
    full = frozenset(range(1, t + 1))
    out = []
    for mask in range(1 << len(atoms_ge2)):
        counts = {J: 1 for b, J in enumerate(atoms_ge2) if mask >> b & 1}
        if profile_weight(counts, full) != (t - 1) * k:
            continue
        if all(profile_weight(counts, J) <= cap for J, cap in constraints):
            out.append(counts)
    return out


def random_qualifying_profile(t: int, k: int, rng: random.Random, max_singletons: int = 2,
                              max_restarts: int = 1000) -> Dict[Index, int]:
    """A random profile meeting the hypotheses, grown one atom at a time.

    Atoms with |J| >= 2 are added in random order as long as every bound
    wt(I_J) <= (|J|-1)k still holds, until wt(I_[t]) = (t-1)k; a dead end
    restarts the walk.  A few singleton atoms are sprinkled in at the end;
    they change no weight.
    """
    atoms_ge2 = nonempty_subsets(t, 2)
    constraints = [(J, (len(J) - 1) * k) for J in atoms_ge2]
    target = (t - 1) * k
    for _ in range(max_restarts):
        counts: Dict[Index, int] = {}
        wt_full = 0
        while wt_full < target:
            options = []
            for U in atoms_ge2:
                if wt_full + len(U) - 1 > target:
                    continue
                counts[U] = counts.get(U, 0) + 1
                if all(profile_weight(counts, J) <= cap for J, cap in constraints):
                    options.append(U)
                counts[U] -= 1
            if not options:
                break
            U = rng.choice(options)
            counts[U] = counts.get(U, 0) + 1
            wt_full += len(U) - 1
        if wt_full == target:
            for j in range(1, t + 1):
                extra = rng.randint(0, max_singletons)
                if extra:
                    counts[frozenset([j])] = extra
            return {J: x for J, x in counts.items() if x}
    raise RuntimeError("failed to generate a qualifying profile")
