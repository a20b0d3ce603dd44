"""Capacity-l carrier, row-to-row transfer and energy functions.

A carrier of capacity ``l`` holding ``m2`` balls stands for the element
``0^(l-m2) 1^m2`` of the symmetric-tensor crystal. Sweeping it across a
state from the left realizes the combinatorial R-matrix site by site; the
sites where it unloads a ball onto an empty box count the energy ``E_l``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .matching import ParenSeq
from .state import BoxBallState


@dataclass(frozen=True)
class Carrier:
    capacity: int | None  # None: unbounded
    ones: int = 0

    def __post_init__(self):
        if self.capacity is not None and self.capacity < 1:
            raise ValueError("capacity must be >= 1 or None")
        if self.ones < 0 or (self.capacity is not None and self.ones > self.capacity):
            raise ValueError(f"carrier cannot hold {self.ones} balls")

    @property
    def zeros(self) -> int | None:
        return None if self.capacity is None else self.capacity - self.ones

    @property
    def full(self) -> bool:
        return self.capacity is not None and self.ones == self.capacity

    def __str__(self):
        if self.capacity is None:
            return f"0^inf 1^{self.ones}"
        return f"0^{self.zeros} 1^{self.ones}"


def r_step(c: Carrier, b: int) -> tuple[int, Carrier, bool]:
    """Pass the carrier over one cell; return ``(out_cell, new_carrier, bumped)``."""
    if b == 1:
        if c.full:
            return 1, c, False
        return 0, Carrier(c.capacity, c.ones + 1), False
    if c.ones:
        return 1, Carrier(c.capacity, c.ones - 1), True
    return 0, c, False


@dataclass(frozen=True)
class EnergyReport:
    values: dict[int, int] = field(default_factory=dict)
    sites: dict[int, frozenset[int]] = field(default_factory=dict)
    saturated: int = 0  # E_l for l >= number of balls

    def differences(self) -> tuple[int, ...]:
        """``E_l - E_(l-1)`` for l = 1..max, with ``E_0 = 0``."""
        ls = sorted(self.values)
        prev = 0
        out = []
        for l in ls:
            out.append(self.values[l] - prev)
            prev = self.values[l]
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "E": {str(l): v for l, v in sorted(self.values.items())},
            "sites": {str(l): sorted(s) for l, s in sorted(self.sites.items())},
            "E_inf": self.saturated,
        }

    @classmethod
    def from_json(cls, data: dict) -> EnergyReport:
        return cls(
            {int(l): v for l, v in data["E"].items()},
            {int(l): frozenset(s) for l, s in data["sites"].items()},
            data["E_inf"],
        )


def transfer(p: BoxBallState, capacity: int | None, step=r_step) -> tuple[BoxBallState, int, frozenset[int]]:
    """Sweep an empty carrier across ``p``; return ``(new_state, energy, bump_sites)``.

    The sweep continues past the window until the carrier is empty again.
    ``step`` defaults to :func:`r_step` and is only swapped in tests.
    """
    c = Carrier(capacity)
    out = []
    sites = set()
    x = p.offset
    while x < p.end or c.ones:
        b, c, bumped = step(c, p.cell(x))
        out.append(b)
        if bumped:
            sites.add(x)
        x += 1
        if x > p.end + p.n_balls + 1:
            raise RuntimeError("carrier failed to empty")
    return BoxBallState.from_cells(out, p.offset), len(sites), frozenset(sites)


def evolve_carrier(p: BoxBallState, capacity: int | None = None) -> BoxBallState:
    """Time evolution by a carrier of the given capacity (default: unbounded)."""
    return transfer(p, capacity)[0]


def energy_profile(p: BoxBallState, l_max: int, step=r_step) -> EnergyReport:
    if l_max < 1:
        raise ValueError("l_max must be >= 1")
    values = {}
    sites = {}
    for l in range(1, l_max + 1):
        _, values[l], sites[l] = transfer(p, l, step)
    saturated = transfer(p, max(p.n_balls, 1), step)[1]
    return EnergyReport(values, sites, saturated)


def energy_sites_predicted(seq: ParenSeq, l: int) -> set[int]:
    """Closing parentheses of pairs with depth at most ``l``."""
    return seq.close_positions(max_depth=l)
