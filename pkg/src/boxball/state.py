"""Box-ball states and the ball-moving time evolution."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field


class StateParseError(ValueError):
    pass


@dataclass(frozen=True)
class BoxBallState:
    """A finitely supported 0/1 configuration on the integers.

    ``window`` is trimmed so that it is empty or starts and ends with a 1;
    ``offset`` is the absolute position of ``window[0]``. Use
    :meth:`from_cells` to build a state from untrimmed cells.
    """

    offset: int = 0
    window: tuple[int, ...] = ()

    def __post_init__(self):
        if any(c not in (0, 1) for c in self.window):
            raise ValueError(f"cells must be 0 or 1, got {self.window!r}")
        if self.window and (self.window[0] != 1 or self.window[-1] != 1):
            raise ValueError("window must start and end with a 1; use BoxBallState.from_cells")
        if not self.window and self.offset != 0:
            object.__setattr__(self, "offset", 0)

    @classmethod
    def from_cells(cls, cells, offset: int = 0) -> BoxBallState:
        cells = tuple(int(c) for c in cells)
        ones = [i for i, c in enumerate(cells) if c == 1]
        if not ones:
            return cls()
        return cls(offset + ones[0], cells[ones[0]:ones[-1] + 1])

    @classmethod
    def from_positions(cls, positions) -> BoxBallState:
        positions = sorted(set(positions))
        if not positions:
            return cls()
        lo = positions[0]
        cells = [0] * (positions[-1] - lo + 1)
        for x in positions:
            cells[x - lo] = 1
        return cls(lo, tuple(cells))

    @property
    def n_balls(self) -> int:
        return sum(self.window)

    @property
    def positions(self) -> tuple[int, ...]:
        """Absolute positions of the balls, left to right."""
        return tuple(self.offset + i for i, c in enumerate(self.window) if c)

    @property
    def end(self) -> int:
        """One past the absolute position of the last ball."""
        return self.offset + len(self.window)

    def cell(self, x: int) -> int:
        i = x - self.offset
        return self.window[i] if 0 <= i < len(self.window) else 0

    def cells(self, start: int, stop: int) -> list[int]:
        return [self.cell(x) for x in range(start, stop)]

    def pattern(self) -> str:
        return "".join(map(str, self.window))

    def __str__(self):
        return f"{self.pattern()}@{self.offset}" if self.window else "@0"


def parse_state(text: str, offset: int = 0) -> BoxBallState:
    """Parse ``'0010011011'`` or ``'0010011011@5'`` into a normalized state.

    An ``@<offset>`` suffix gives the absolute position of the first
    character and takes precedence over ``offset``.
    """
    text = text.strip()
    if "@" in text:
        text, _, suffix = text.partition("@")
        try:
            offset = int(suffix)
        except ValueError:
            raise StateParseError(f"bad offset suffix {suffix!r}") from None
    bad = set(text) - {"0", "1"}
    if bad:
        raise StateParseError(f"invalid characters in state: {''.join(sorted(bad))!r}")
    return BoxBallState.from_cells((int(ch) for ch in text), offset)


def evolve_tts(p: BoxBallState) -> BoxBallState:
    """One time step: each ball in turn, left to right, jumps to the nearest empty box on its right."""
    occupied = set(p.positions)
    for x in p.positions:
        occupied.remove(x)
        y = x + 1
        while y in occupied:
            y += 1
        occupied.add(y)
    return BoxBallState.from_positions(occupied)


def evolve(p: BoxBallState, steps: int, rule=evolve_tts) -> list[BoxBallState]:
    """Return ``[p, rule(p), ..., rule^steps(p)]``."""
    out = [p]
    for _ in range(steps):
        out.append(rule(out[-1]))
    return out


@dataclass(frozen=True)
class SolitonProfile:
    runs: tuple[tuple[int, int], ...]  # (length, absolute start)
    counts: dict[int, int] = field(default_factory=dict)
    gaps: tuple[int, ...] = ()

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(k for k, _ in self.runs)


def solitons(p: BoxBallState) -> SolitonProfile:
    """Split a state into maximal runs of 1s."""
    runs = []
    start = None
    for i, c in enumerate(p.window + (0,)):
        if c and start is None:
            start = i
        elif not c and start is not None:
            runs.append((i - start, p.offset + start))
            start = None
    gaps = tuple(s2 - (s1 + k1) for (k1, s1), (_, s2) in zip(runs, runs[1:]))
    counts = dict(sorted(Counter(k for k, _ in runs).items()))
    return SolitonProfile(tuple(runs), counts, gaps)


def is_asymptotic(p: BoxBallState, threshold: int) -> bool:
    """True when the solitons are sorted by length and have separated.

    Lengths must weakly increase left to right. Neighbouring runs of
    different lengths need a gap of at least ``threshold``; neighbouring
    runs of equal length travel at the same speed forever, so for them a
    gap at least the run length is required instead.
    """
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    prof = solitons(p)
    lengths = prof.lengths
    for a, b, gap in zip(lengths, lengths[1:], prof.gaps):
        if a > b:
            return False
        if gap < (threshold if a != b else a):
            return False
    return True


def steps_to_asymptotic(p: BoxBallState, threshold: int | None = None, max_steps: int = 200):
    """Evolve until :func:`is_asymptotic` holds; return ``(steps, state)`` or ``None``."""
    if threshold is None:
        threshold = max(p.n_balls, 1)
    q = p
    for t in range(max_steps + 1):
        if is_asymptotic(q, threshold):
            return t, q
        q = evolve_tts(q)
    return None
