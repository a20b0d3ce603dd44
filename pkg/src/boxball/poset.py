"""Permutation posets, Greene invariants and the depth-chain structure."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .matching import ParenSeq, stack_permutation

MAX_BRUTE_FORCE = 14


class PosetTooLarge(ValueError):
    pass


class InconsistentStructure(RuntimeError):
    pass


class Partition(tuple):
    """A weakly decreasing tuple of positive integers."""

    def __new__(cls, parts=()):
        parts = tuple(int(x) for x in parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(x < 1 for x in parts) or any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"not a partition: {parts}")
        return super().__new__(cls, parts)

    @property
    def size(self) -> int:
        return sum(self)

    def part(self, k: int) -> int:
        """The k-th part (1-based), zero past the end."""
        return self[k - 1] if k <= len(self) else 0

    def __repr__(self):
        return f"Partition({tuple(self)})"


def transpose(lam) -> Partition:
    lam = Partition(lam)
    return Partition(sum(1 for x in lam if x >= j) for j in range(1, (lam[0] if lam else 0) + 1))


@dataclass(frozen=True)
class PermutationPoset:
    """Points with distinct coordinates under the product order."""

    points: frozenset[tuple[int, int]]

    def __post_init__(self):
        pts = self.points
        if len({i for i, _ in pts}) != len(pts) or len({j for _, j in pts}) != len(pts):
            raise ValueError("points must have distinct first and distinct second coordinates")

    def __len__(self):
        return len(self.points)

    @staticmethod
    def leq(a, b) -> bool:
        return a[0] <= b[0] and a[1] <= b[1]

    def comparable(self, a, b) -> bool:
        return self.leq(a, b) or self.leq(b, a)

    def sorted_points(self) -> list[tuple[int, int]]:
        return sorted(self.points)

    def is_chain(self, pts) -> bool:
        return all(self.comparable(a, b) for a, b in combinations(pts, 2))

    def is_antichain(self, pts) -> bool:
        return not any(self.comparable(a, b) for a, b in combinations(pts, 2))

    def covers(self) -> list[tuple[tuple[int, int], tuple[int, int]]]:
        pts = self.sorted_points()
        out = []
        for a in pts:
            for b in pts:
                if a != b and self.leq(a, b) and not any(
                    c not in (a, b) and self.leq(a, c) and self.leq(c, b) for c in pts
                ):
                    out.append((a, b))
        return out

    def to_json(self) -> dict:
        return {
            "points": [list(p) for p in self.sorted_points()],
            "covers": [[list(a), list(b)] for a, b in self.covers()],
        }


def poset_of_word(x) -> PermutationPoset:
    """Poset of a word: equal letters are ordered by position."""
    x = list(x)
    order = sorted(range(len(x)), key=lambda i: (x[i], i))
    rank = {i: r for r, i in enumerate(order, 1)}
    return PermutationPoset(frozenset((i + 1, rank[i]) for i in range(len(x))))


def _greene(poset: PermutationPoset, k: int, antichains: bool) -> int:
    n = len(poset)
    if n > MAX_BRUTE_FORCE:
        raise PosetTooLarge(f"{n} points exceeds brute-force limit {MAX_BRUTE_FORCE}")
    if k <= 0 or n == 0:
        return 0
    values = tuple(j for _, j in poset.sorted_points())
    return _greene_search(values, min(k, n), antichains)


@lru_cache(maxsize=4096)
def _greene_search(values: tuple[int, ...], k: int, antichains: bool) -> int:
    # Points are scanned by first coordinate; a chain (antichain) is then a
    # run of increasing (decreasing) second coordinates, so each family is
    # determined by the tail values of its k members.
    n = len(values)
    sentinel = n + 1 if antichains else 0

    def fits(tail, v):
        return tail > v if antichains else tail < v

    @lru_cache(maxsize=None)
    def best(pos, tails):
        if pos == n:
            return 0
        v = values[pos]
        result = best(pos + 1, tails)
        tried = set()
        for idx, tail in enumerate(tails):
            if tail in tried or not fits(tail, v):
                continue
            tried.add(tail)
            new = tuple(sorted(tails[:idx] + (v,) + tails[idx + 1:]))
            result = max(result, 1 + best(pos + 1, new))
        return result

    return best(0, (sentinel,) * k)


def greene_I(poset: PermutationPoset, k: int) -> int:
    """Largest number of points covered by k disjoint chains (exhaustive)."""
    return _greene(poset, k, antichains=False)


def greene_D(poset: PermutationPoset, k: int) -> int:
    """Largest number of points covered by k disjoint antichains (exhaustive)."""
    return _greene(poset, k, antichains=True)


def _differences(f, poset) -> Partition:
    n = len(poset)
    values = [0]
    while values[-1] < n:
        values.append(f(poset, len(values)))
    diffs = [b - a for a, b in zip(values, values[1:])]
    if any(a < b for a, b in zip(diffs, diffs[1:])):
        raise InconsistentStructure(f"Greene differences are not a partition: {diffs}")
    return Partition(diffs)


def lambda_of(poset: PermutationPoset) -> Partition:
    return _differences(greene_I, poset)


def lambda_prime_of(poset: PermutationPoset) -> Partition:
    return _differences(greene_D, poset)


def stack_poset(seq: ParenSeq) -> PermutationPoset:
    """Poset of the stack permutation: the point of a pair is (closing rank, pair number)."""
    return poset_of_word(stack_permutation(seq))


def pair_points(seq: ParenSeq) -> dict[int, tuple[int, int]]:
    """Map pair_id to its point in :func:`stack_poset`."""
    return {pid: (rank, pid) for rank, pid in enumerate(stack_permutation(seq), 1)}


@dataclass(frozen=True)
class ChainFamily:
    chains: tuple[tuple[tuple[int, int], ...], ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.chains)

    def union_size(self, k: int) -> int:
        return sum(len(c) for c in self.chains[:k])


@dataclass(frozen=True)
class AntichainFamily:
    antichains: tuple[tuple[tuple[int, int], ...], ...]

    def sizes(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.antichains)


def depth_chains(seq: ParenSeq) -> ChainFamily:
    """Chain k holds the points of all pairs of stack depth k."""
    poset = stack_poset(seq)
    points = pair_points(seq)
    chains = []
    for d in range(1, seq.max_depth + 1):
        chain = tuple(sorted(points[p.pair_id] for p in seq.pairs if p.depth == d))
        if not poset.is_chain(chain):
            raise InconsistentStructure(f"depth-{d} pairs do not form a chain: {chain}")
        chains.append(chain)
    return ChainFamily(tuple(chains))


def antichain_decomposition(seq: ParenSeq) -> AntichainFamily:
    """Split the pairs into nested towers with one pair of each depth 1..l.

    Each depth-k pair claims the leftmost unclaimed depth-(k-1) pair inside
    it and joins that pair's tower.
    """
    points = pair_points(seq)
    tower_of: dict[int, list[int]] = {}
    towers: list[list[int]] = []
    by_depth: dict[int, list] = {}
    for p in seq.pairs:
        by_depth.setdefault(p.depth, []).append(p)
    for p in by_depth.get(1, []):
        towers.append([p.pair_id])
        tower_of[p.pair_id] = towers[-1]
    claimed: set[int] = set()
    for d in range(2, seq.max_depth + 1):
        for p in by_depth[d]:
            inner = [q for q in by_depth[d - 1] if p.contains(q) and q.pair_id not in claimed]
            if not inner:
                raise InconsistentStructure(f"pair {p.pair_id} of depth {d} has no free depth-{d - 1} pair inside")
            q = min(inner, key=lambda r: r.open_pos)
            claimed.add(q.pair_id)
            tower = tower_of[q.pair_id]
            tower.append(p.pair_id)
            tower_of[p.pair_id] = tower
    return AntichainFamily(tuple(tuple(points[pid] for pid in t) for t in towers))
