"""Row insertion and P-symbols."""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass

from .poset import Partition, transpose

__all__ = ["Tableau", "row_insert", "p_symbol", "shape", "transpose"]


@dataclass(frozen=True)
class Tableau:
    rows: tuple[tuple[int, ...], ...] = ()

    @classmethod
    def of(cls, rows) -> Tableau:
        return cls(tuple(tuple(r) for r in rows if r))

    @property
    def size(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_semistandard(self) -> bool:
        rows = self.rows
        if any(len(a) < len(b) for a, b in zip(rows, rows[1:])):
            return False
        if any(a > b for r in rows for a, b in zip(r, r[1:])):
            return False
        return all(upper[j] < lower[j] for upper, lower in zip(rows, rows[1:]) for j in range(len(lower)))

    def render(self) -> str:
        width = max((len(str(x)) for r in self.rows for x in r), default=1)
        return "\n".join(" ".join(str(x).rjust(width) for x in r) for r in self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]


def row_insert(T: Tableau, k: int) -> Tableau:
    """Insert ``k``: it bumps the leftmost strictly larger entry into the next row."""
    rows = [list(r) for r in T.rows]
    for row in rows:
        j = bisect_right(row, k)
        if j == len(row):
            row.append(k)
            break
        row[j], k = k, row[j]
    else:
        rows.append([k])
    return Tableau.of(rows)


def p_symbol(word) -> Tableau:
    T = Tableau()
    for k in word:
        T = row_insert(T, k)
    return T


def shape(T: Tableau) -> Partition:
    return Partition(len(r) for r in T.rows)
