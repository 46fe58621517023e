"""Exhaustive list-decodability oracles, the generalized Singleton bound and its witness."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import isqrt
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .rscode import RSCode, hamming_distance

Vector = Tuple[int, ...]
BRUTE_FORCE_LIMIT = 10 ** 5


@dataclass(frozen=True)
class LDVerdict:
    """Outcome of an exhaustive list-decodability check.

    When ``decodable`` is False, ``witness`` holds a center and L+1 distinct
    codewords all within the radius of it.
    """

    decodable: bool
    witness: Optional[Tuple[Vector, List[Vector]]] = None
    subsets_checked: int = 0


# ----------------------------------------------------------- common center
def exists_common_center(codewords: Sequence[Sequence[int]], radius: int) -> Optional[Vector]:
    """Some y with d(y, c) <= radius for every given codeword, or None.

    The search is exact.  At each coordinate only values that occur among the
    codewords are tried: any other value mismatches every codeword and is
    dominated by each occurring value.  Coordinates where all codewords agree
    are fixed, the rest are explored with the most branching first, and a
    branch is cut when the remaining total budget cannot pay for the
    unavoidable mismatches still ahead.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    words = [tuple(c) for c in codewords]
    if len(words) < 1:
        raise ValueError("need at least one codeword")
    n = len(words[0])
    if any(len(w) != n for w in words):
        raise ValueError("length mismatch")
    t = len(words)
    center = list(words[0])
    branch: List[Tuple[int, List[Tuple[int, List[int]]]]] = []
    for i in range(n):
        groups: Dict[int, List[int]] = {}
        for j, w in enumerate(words):
            groups.setdefault(w[i], []).append(j)
        if len(groups) == 1:
            continue
        # options: (value, indices of codewords that mismatch it), best match first
        opts = sorted(groups.items(), key=lambda kv: (-len(kv[1]), kv[0]))
        options = [(v, [j for j in range(t) if words[j][i] != v]) for v, _ in opts]
        branch.append((i, options))
    branch.sort(key=lambda b: (-len(b[1]), b[0]))
    # unavoidable cost of each branching coordinate and its suffix sums
    cost = [len(opts[0][1]) for _, opts in branch]
    suffix = [0] * (len(branch) + 1)
    for d in range(len(branch) - 1, -1, -1):
        suffix[d] = suffix[d + 1] + cost[d]
    budget = [radius] * t
    total = [radius * t]
    choice = [0] * len(branch)

    def dfs(d: int) -> bool:
        if d == len(branch):
            return True
        if total[0] < suffix[d]:
            return False
        _, options = branch[d]
        for idx, (v, miss) in enumerate(options):
            ok = True
            for j in miss:
                if budget[j] == 0:
                    ok = False
                    break
            if not ok:
                continue
            for j in miss:
                budget[j] -= 1
            total[0] -= len(miss)
            choice[d] = idx
            if dfs(d + 1):
                return True
            for j in miss:
                budget[j] += 1
            total[0] += len(miss)
        return False

    if not dfs(0):
        return None
    for d, (i, options) in enumerate(branch):
        center[i] = options[choice[d]][0]
    return tuple(center)


def common_center_bruteforce(codewords: Sequence[Sequence[int]], radius: int, q: int) -> Optional[Vector]:
    """Reference oracle: scan all q^n centers in lexicographic order."""
    from itertools import product

    words = [tuple(c) for c in codewords]
    n = len(words[0])
    for y in product(range(q), repeat=n):
        if all(sum(1 for a, b in zip(y, w) if a != b) <= radius for w in words):
            return y
    return None


# --------------------------------------------------------- decodability
def _check_subsets(subsets: Iterable[Sequence[Vector]], radius: int):
    count = 0
    for sub in subsets:
        count += 1
        y = exists_common_center(sub, radius)
        if y is not None:
            return (y, [tuple(c) for c in sub]), count
    return None, count


def _normalized(word: Vector) -> bool:
    for x in word:
        if x:
            return x == 1
    return False


def _linear_chunk(args):
    code, radius, L, c2_indices, words = args
    two_r = 2 * radius
    zero = words[0]
    near_zero = [i for i, w in enumerate(words) if 0 < sum(1 for x in w if x) <= two_r]
    count = 0
    for i2 in c2_indices:
        c2 = words[i2]
        cand = [i for i in near_zero if i != i2 and hamming_distance(words[i], c2) <= two_r]
        for rest in combinations(cand, L - 1):
            if any(hamming_distance(words[a], words[b]) > two_r for a, b in combinations(rest, 2)):
                continue
            sub = [zero, c2] + [words[i] for i in rest]
            count += 1
            y = exists_common_center(sub, radius)
            if y is not None:
                return (y, sub), count
    return None, count


def is_list_decodable(code: RSCode, radius: int, L: int,
                      codewords: Optional[Sequence[Sequence[int]]] = None,
                      threads: int = 1) -> LDVerdict:
    """Whether every Hamming ball of the given radius holds at most L codewords.

    Equivalently, no L+1 distinct codewords have a common center.  For the
    full code, linearity is used: a violating subset can be translated to
    contain the zero word and scaled so that a second member has leading
    nonzero entry 1.  An explicit list of codewords is searched without that
    reduction.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if L < 1:
        raise ValueError("L must be positive")
    if codewords is not None:
        words = sorted(set(tuple(c) for c in codewords))
        if len(words) <= L:
            return LDVerdict(True)
        wit, count = _check_subsets(combinations(words, L + 1), radius)
        return LDVerdict(wit is None, wit, count)
    if code.size > BRUTE_FORCE_LIMIT:
        raise ValueError(f"q^k = {code.size} exceeds the enumeration guard {BRUTE_FORCE_LIMIT}")
    if L + 1 > code.size:
        return LDVerdict(True)
    words = list(code.codewords())  # message order puts the zero word first
    two_r = 2 * radius
    c2_all = [i for i, w in enumerate(words)
              if _normalized(w) and sum(1 for x in w if x) <= two_r]
    if L == 1:
        # a pair has a common center iff its distance is at most 2 * radius
        if not c2_all:
            return LDVerdict(True)
        sub = [words[0], words[c2_all[0]]]
        return LDVerdict(False, (exists_common_center(sub, radius), sub), 1)
    if threads > 1 and len(c2_all) > 1:
        # contiguous chunks keep the first witness identical to the serial order
        size = -(-len(c2_all) // threads)
        chunks = [c2_all[i:i + size] for i in range(0, len(c2_all), size)]
        total = 0
        with ProcessPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(_linear_chunk, [(code, radius, L, ch, words) for ch in chunks]))
        for wit, count in results:
            total += count
            if wit is not None:
                return LDVerdict(False, wit, total)
        return LDVerdict(True, None, total)
    wit, count = _linear_chunk((code, radius, L, c2_all, words))
    return LDVerdict(wit is None, wit, count)


def is_list_decodable_naive(code: RSCode, radius: int, L: int) -> LDVerdict:
    """Reference path: every (L+1)-subset of the full code, no symmetry reduction."""
    return is_list_decodable(code, radius, L, codewords=list(code.codewords()))


def verify_witness(witness: Tuple[Vector, List[Vector]], radius: int, L: int) -> bool:
    y, words = witness
    return (len(words) == L + 1 and len(set(map(tuple, words))) == L + 1
            and all(hamming_distance(y, w) <= radius for w in words))


# ------------------------------------------------------- Singleton bound
def generalized_singleton_max_size(n: int, q: int, rn: int, L: int, linear: bool = False) -> Union[int, Fraction]:
    """Largest possible size of an (rn/n, L) list-decodable code of length n over q symbols.

    Returns L * q^(n - floor((L+1) rn / L)), or q^(n - floor((L+1) rn / L)) for
    linear codes with q > L.  A negative exponent gives an exact Fraction.
    """
    if not 0 <= rn <= n:
        raise ValueError("need 0 <= rn <= n")
    if L < 1:
        raise ValueError("L must be positive")
    if linear and q <= L:
        raise ValueError("the linear-code bound needs q > L")
    e = n - ((L + 1) * rn) // L
    base = Fraction(q) ** e
    value = base if linear else L * base
    return int(value) if value.denominator == 1 else value


@dataclass(frozen=True)
class OptimalRadius:
    r: Fraction
    rn: Fraction
    rn_floor: int
    divisible: bool


def optimal_radius(n: int, k: int, L: int) -> OptimalRadius:
    """The radius L(n-k)/((L+1)n) together with rn and whether rn is an integer."""
    if not n > k >= 1 or L < 1:
        raise ValueError("need n > k >= 1 and L >= 1")
    rn = Fraction(L * (n - k), L + 1)
    return OptimalRadius(rn / n, rn, rn.numerator // rn.denominator, rn.denominator == 1)


def singleton_violation_witness(codewords: Sequence[Sequence[int]], n: int, rn: int, L: int,
                                q: int) -> Tuple[Vector, List[Vector]]:
    """A center and L+1 distinct codewords within distance rn of it.

    Requires more than L * q^(n - a) distinct codewords, a = rn + floor(rn / L).
    Pigeonhole gives L+1 codewords sharing the first n - a coordinates; the last
    a coordinates are cut into L+1 consecutive blocks (larger blocks first) and
    the center copies codeword i on block i.  When a > n the whole word is
    split, which needs L+1 codewords.
    """
    if L < 1 or rn < 0:
        raise ValueError("need L >= 1 and rn >= 0")
    words = sorted(set(tuple(c) for c in codewords))
    if any(len(w) != n for w in words):
        raise ValueError("codeword length mismatch")
    a = min(rn + rn // L, n)
    threshold = L * q ** (n - a)
    if len(words) <= threshold:
        raise ValueError(f"need more than {threshold} distinct codewords, got {len(words)}")
    prefix_len = n - a
    groups: Dict[Vector, List[Vector]] = {}
    chosen: Optional[List[Vector]] = None
    for w in words:
        g = groups.setdefault(w[:prefix_len], [])
        g.append(w)
        if len(g) == L + 1:
            chosen = g
            break
    if chosen is None:
        raise ValueError("pigeonhole failed: codewords are not over a q-ary alphabet")
    base, extra = divmod(a, L + 1)
    sizes = [base + 1] * extra + [base] * (L + 1 - extra)
    y = list(chosen[0][:prefix_len])
    for i, size in enumerate(sizes):
        start = prefix_len + sum(sizes[:i])
        y.extend(chosen[i][start:start + size])
    return tuple(y), [tuple(c) for c in chosen]


# --------------------------------------------------------------- Johnson
@dataclass(frozen=True)
class SurdRadius:
    """The number 1 - sqrt(s) for a rational s >= 0, compared exactly."""

    s: Fraction

    def __float__(self) -> float:
        return 1.0 - float(self.s) ** 0.5

    def exact(self) -> Optional[Fraction]:
        """The value as a Fraction when s is a rational square, else None."""
        num, den = self.s.numerator, self.s.denominator
        a, b = isqrt(num), isqrt(den)
        if a * a == num and b * b == den:
            return 1 - Fraction(a, b)
        return None

    def compare(self, r: Fraction) -> int:
        """Sign of r - (1 - sqrt(s)): 1 if r is larger, 0 if equal, -1 if smaller."""
        d = 1 - Fraction(r)  # r > 1 - sqrt(s)  <=>  sqrt(s) > 1 - r
        if d < 0:
            return 1
        sq = d * d
        if self.s > sq:
            return 1
        if self.s == sq:
            return 0
        return -1

    def __str__(self) -> str:
        e = self.exact()
        return str(e) if e is not None else f"1 - sqrt({self.s})"


@dataclass(frozen=True)
class JohnsonBound:
    radius: SurdRadius
    list_bound: int


def johnson_bound(n: int, k: int, q: int) -> JohnsonBound:
    """Radius 1 - sqrt((k-1)/n) and list size q n (n-k+1) for an [n, k] RS code."""
    if not n > k >= 1:
        raise ValueError("need n > k >= 1")
    return JohnsonBound(SurdRadius(Fraction(k - 1, n)), q * n * (n - k + 1))


def asymptotic_johnson_radius(rate: Fraction) -> SurdRadius:
    """1 - sqrt(R), the rate form of the Johnson radius."""
    return SurdRadius(Fraction(rate))
