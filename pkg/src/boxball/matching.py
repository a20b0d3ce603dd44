"""Parenthesis matching of a state, stack depths and the stack permutation.

Every ball is an opening parenthesis and the empty box that absorbs it is
the matching closing parenthesis. Two independent constructions are
provided: repeated deletion of adjacent ``1 0`` pairs (:func:`match_rounds`)
and a single left-to-right stack pass (:func:`match_stack`).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import NamedTuple

from .state import BoxBallState

ZERO, OPEN, CLOSE = "0", "(", ")"


class Token(NamedTuple):
    kind: str
    pair_id: int | None = None


@dataclass(frozen=True)
class PairRecord:
    pair_id: int
    open_pos: int  # token index
    close_pos: int
    depth: int

    def contains(self, other: PairRecord) -> bool:
        return self.open_pos < other.open_pos and other.close_pos < self.close_pos

    def disjoint(self, other: PairRecord) -> bool:
        return self.close_pos < other.open_pos or other.close_pos < self.open_pos


@dataclass(frozen=True)
class ParenSeq:
    tokens: tuple[Token, ...]
    pairs: tuple[PairRecord, ...]  # indexed by pair_id - 1
    base_offset: int = 0

    @property
    def n_pairs(self) -> int:
        return len(self.pairs)

    def pair(self, pair_id: int) -> PairRecord:
        return self.pairs[pair_id - 1]

    def absolute(self, index: int) -> int:
        return self.base_offset + index

    def close_positions(self, max_depth: int | None = None) -> set[int]:
        """Absolute positions of closing parentheses, optionally only those of depth <= max_depth."""
        return {
            self.absolute(p.close_pos)
            for p in self.pairs
            if max_depth is None or p.depth <= max_depth
        }

    @property
    def max_depth(self) -> int:
        return max((p.depth for p in self.pairs), default=0)

    def depth_histogram(self) -> tuple[int, ...]:
        """Number of pairs of depth 1, 2, ..."""
        c = Counter(p.depth for p in self.pairs)
        return tuple(c[d] for d in range(1, self.max_depth + 1))

    def text(self) -> str:
        return " ".join(t.kind for t in self.tokens)

    def depth_line(self) -> str:
        return " ".join(
            " " if t.kind == ZERO else str(self.pair(t.pair_id).depth) for t in self.tokens
        )

    def to_json(self) -> dict:
        return {
            "base_offset": self.base_offset,
            "tokens": "".join(t.kind for t in self.tokens),
            "pairs": [
                {
                    "id": p.pair_id,
                    "open": self.absolute(p.open_pos),
                    "close": self.absolute(p.close_pos),
                    "depth": p.depth,
                }
                for p in self.pairs
            ],
        }


def _build(kinds: list[str], partner: dict[int, int], depth_of: dict[int, int], base: int) -> ParenSeq:
    # kinds: per-index '0', '(' or ')'; partner maps open index -> close index
    last = max(partner.values(), default=-1)
    kinds = kinds[:last + 1]
    opens = sorted(partner)
    pair_id = {o: k for k, o in enumerate(opens, 1)}
    close_id = {c: pair_id[o] for o, c in partner.items()}
    tokens = []
    for i, kind in enumerate(kinds):
        if kind == OPEN:
            tokens.append(Token(OPEN, pair_id[i]))
        elif kind == CLOSE:
            tokens.append(Token(CLOSE, close_id[i]))
        else:
            tokens.append(Token(ZERO))
    pairs = tuple(PairRecord(pair_id[o], o, partner[o], depth_of[o]) for o in opens)
    return ParenSeq(tuple(tokens), pairs, base)


def match_rounds(p: BoxBallState, padding: int | None = None) -> ParenSeq:
    """Match by rounds: round r pairs every adjacent ``1 0`` of what is left and deletes it."""
    n = p.n_balls
    if padding is None:
        padding = n
    cells = list(p.window) + [0] * padding
    alive = list(range(len(cells)))
    partner: dict[int, int] = {}
    depth_of: dict[int, int] = {}
    depth = 0
    while len(partner) < n:
        depth += 1
        matched = set()
        for a, b in zip(alive, alive[1:]):
            if cells[a] == 1 and cells[b] == 0:
                partner[a] = b
                depth_of[a] = depth
                matched.update((a, b))
        if not matched:
            raise ValueError("not enough trailing zeros to match every ball")
        alive = [i for i in alive if i not in matched]
    kinds = [ZERO] * len(cells)
    for o, c in partner.items():
        kinds[o], kinds[c] = OPEN, CLOSE
    return _build(kinds, partner, depth_of, p.offset)


def match_stack(p: BoxBallState, padding: int | None = None) -> ParenSeq:
    """Match each 0 with the nearest unmatched 1 on its left, in one pass.

    Depth is one plus the largest depth directly nested inside the pair.
    """
    n = p.n_balls
    if padding is None:
        padding = n
    cells = list(p.window) + [0] * padding
    kinds = [ZERO] * len(cells)
    partner: dict[int, int] = {}
    depth_of: dict[int, int] = {}
    stack: list[list[int]] = []  # [open index, deepest child depth]
    for i, c in enumerate(cells):
        if c == 1:
            stack.append([i, 0])
        elif stack:
            o, inner = stack.pop()
            partner[o] = i
            depth_of[o] = inner + 1
            kinds[o], kinds[i] = OPEN, CLOSE
            if stack:
                stack[-1][1] = max(stack[-1][1], inner + 1)
    if stack:
        raise ValueError("not enough trailing zeros to match every ball")
    return _build(kinds, partner, depth_of, p.offset)


def stack_permutation(seq: ParenSeq) -> tuple[int, ...]:
    """Pair numbers read off the closing parentheses from left to right."""
    return tuple(t.pair_id for t in seq.tokens if t.kind == CLOSE)


def check_paren_seq(seq: ParenSeq) -> None:
    """Raise AssertionError if ``seq`` breaks a structural invariant."""
    opens = [i for i, t in enumerate(seq.tokens) if t.kind == OPEN]
    closes = [i for i, t in enumerate(seq.tokens) if t.kind == CLOSE]
    assert len(opens) == len(closes) == seq.n_pairs
    for k, p in enumerate(seq.pairs, 1):
        assert p.pair_id == k
        assert p.open_pos < p.close_pos
        assert seq.tokens[p.open_pos] == Token(OPEN, k)
        assert seq.tokens[p.close_pos] == Token(CLOSE, k)
    assert [p.open_pos for p in seq.pairs] == opens
    for a in seq.pairs:
        children = [b for b in seq.pairs if a.contains(b)]
        assert a.depth == 1 + max((b.depth for b in children), default=0)
        for b in seq.pairs:
            if a.pair_id < b.pair_id:
                assert a.contains(b) or a.disjoint(b), f"pairs {a} and {b} cross"
