"""Lattice-path picture of a state and its evolution by reflecting groups.

A matched state is read from its first ball: ``(`` is an up step, ``0``
and ``)`` are right steps. Implicit right steps extend the walk to both
infinities.
"""

from __future__ import annotations

from dataclasses import dataclass

from .matching import OPEN, ZERO, ParenSeq
from .state import BoxBallState

UP, RIGHT = "U", "R"


class MalformedWalk(ValueError):
    pass


@dataclass(frozen=True)
class Walk:
    anchor_x: int
    steps: tuple[str, ...]

    def __post_init__(self):
        if any(s not in (UP, RIGHT) for s in self.steps):
            raise ValueError(f"steps must be {UP!r} or {RIGHT!r}")

    @classmethod
    def parse(cls, text: str, anchor_x: int = 0) -> Walk:
        return cls(anchor_x, tuple(text.replace(" ", "")))

    @property
    def height(self) -> int:
        return self.steps.count(UP)

    def text(self) -> str:
        return "".join(self.steps)

    def normalized(self) -> Walk:
        """Canonical form: start at the first up step and stop at the last closing right step.

        Leading right steps move the anchor; trailing right steps are trimmed
        or added so that every up step is matched by a later right step, as in
        a walk read off a parenthesis sequence.
        """
        s = self.steps
        lo = 0
        while lo < len(s) and s[lo] == RIGHT:
            lo += 1
        if lo == len(s):
            return Walk(0, ())
        hi = len(s)
        while s[hi - 1] == RIGHT:
            hi -= 1
        core = s[lo:hi]
        open_ups = 0
        for step in core:
            if step == UP:
                open_ups += 1
            elif open_ups:
                open_ups -= 1
        return Walk(self.anchor_x + lo, core + (RIGHT,) * open_ups)

    def vertices(self) -> list[tuple[int, int]]:
        """Lattice vertices relative to the anchor, starting at (0, 0)."""
        x = y = 0
        out = [(0, 0)]
        for s in self.steps:
            if s == UP:
                y += 1
            else:
                x += 1
            out.append((x, y))
        return out

    def to_json(self) -> dict:
        return {"anchor_x": self.anchor_x, "steps": self.text()}


@dataclass(frozen=True)
class Group:
    start: int  # step index of the opening up step
    stop: int  # one past the closing step
    x0: int
    y0: int


@dataclass(frozen=True)
class GroupPartition:
    groups: tuple[Group, ...]
    singles: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "groups": [[g.start, g.stop, g.x0, g.y0] for g in self.groups],
            "singles": list(self.singles),
        }


def to_walk(seq: ParenSeq) -> Walk:
    kinds = [t.kind for t in seq.tokens]
    if OPEN not in kinds:
        return Walk(0, ())
    first = kinds.index(OPEN)
    steps = tuple(UP if k == OPEN else RIGHT for k in kinds[first:])
    return Walk(seq.absolute(first), steps)


def walk_to_state(w: Walk) -> BoxBallState:
    return BoxBallState.from_cells((1 if s == UP else 0 for s in w.steps), w.anchor_x)


def group_partition(w: Walk) -> GroupPartition:
    """Cut the walk into groups, each running from an up step back to its diagonal."""
    groups = []
    singles = []
    verts = w.vertices()
    i = 0
    n = len(w.steps)
    while i < n:
        if w.steps[i] == RIGHT:
            singles.append(i)
            i += 1
            continue
        x0, y0 = verts[i]
        j = i + 1
        while True:
            if j > n:
                raise MalformedWalk(f"group starting at step {i} never returns to its diagonal")
            x, y = verts[j]
            if y - y0 == x - x0:
                break
            j += 1
        groups.append(Group(i, j, x0, y0))
        i = j
    return GroupPartition(tuple(groups), tuple(singles))


def evolve_reflect(w: Walk) -> Walk:
    """One time step: reflect every group in the diagonal through its start.

    On step sequences the reflection swaps up and right steps in place. The
    walk is padded with enough right steps for every group to close and the
    result is re-anchored at its first up step.
    """
    padded = Walk(w.anchor_x, w.steps + (RIGHT,) * w.height)
    gp = group_partition(padded)
    steps = list(padded.steps)
    for g in gp.groups:
        for k in range(g.start, g.stop):
            steps[k] = RIGHT if steps[k] == UP else UP
    return Walk(w.anchor_x, tuple(steps)).normalized()


def _delete_pairs(w: Walk, first: str, second: str) -> Walk:
    s = (RIGHT,) + w.steps + (RIGHT,)
    keep = []
    i = 0
    while i < len(s):
        if i + 1 < len(s) and s[i] == first and s[i + 1] == second:
            i += 2
        else:
            keep.append(s[i])
            i += 1
    out = Walk(w.anchor_x, tuple(keep)).normalized()
    return Walk(w.anchor_x, out.steps)


def delete_convex(w: Walk) -> Walk:
    """Remove every up-then-right corner (both steps)."""
    return _delete_pairs(w, UP, RIGHT)


def delete_concave(w: Walk) -> Walk:
    """Remove every right-then-up corner (both steps)."""
    return _delete_pairs(w, RIGHT, UP)


def zero_free_above_diagonal(seq: ParenSeq) -> bool:
    """Inside a group, steps leaving a vertex strictly above the group's diagonal never come from a ``0``."""
    w = to_walk(seq)
    if not w.steps:
        return True
    first = next(i for i, t in enumerate(seq.tokens) if t.kind == OPEN)
    verts = w.vertices()
    for g in group_partition(w).groups:
        for k in range(g.start, g.stop):
            x, y = verts[k]
            if y - g.y0 > x - g.x0 and seq.tokens[first + k].kind == ZERO:
                return False
    return True


def render_walk(w: Walk) -> str:
    """ASCII staircase: ``|`` for up steps, ``__`` for right steps."""
    if not w.steps:
        return ""
    h = w.height
    grid = [[] for _ in range(h + 1)]  # grid[y] is the text band whose floor is height y
    col = 0
    y = 0

    def put(row, c, ch):
        line = grid[row]
        line.extend(" " * (c + len(ch) - len(line)))
        line[c:c + len(ch)] = ch

    for s in w.steps:
        if s == UP:
            put(y, col, "|")
            col += 1
            y += 1
        else:
            put(y, col, "__")
            col += 2
    return "\n".join("".join(grid[r]).rstrip() for r in range(h, -1, -1) if grid[r])
