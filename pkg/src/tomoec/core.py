"""Grids, directions and line-sum tables.

A direction ``(a, b)`` partitions the lattice rectangle
``A = {(i, j) : 0 <= i < m, 0 <= j < n}`` into the lines
``b*i - a*j = t``.  A :class:`LineSumTable` stores, for every direction,
the sum of the grid values on each line that meets ``A``, densely over
the contiguous index range ``[t_min, t_max]``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .exceptions import InvalidDirection, InvalidGrid, InvalidLineSums


@dataclass(frozen=True, order=True)
class Direction:
    """Primitive lattice direction with ``a >= 0`` and ``b == 1`` when ``a == 0``."""

    a: int
    b: int

    def __post_init__(self):
        a, b = self.a, self.b
        if not isinstance(a, int) or not isinstance(b, int):
            raise InvalidDirection(f"direction entries must be integers, got ({a!r}, {b!r})")
        if (a, b) == (0, 0):
            raise InvalidDirection("zero vector is not a direction")
        if a < 0 or (a == 0 and b != 1):
            raise InvalidDirection(f"({a}, {b}) is not normalized; use normalize_direction")
        if math.gcd(a, b) != 1:
            raise InvalidDirection(f"({a}, {b}) is not primitive")

    def line_index(self, i: int, j: int) -> int:
        return self.b * i - self.a * j

    def cross(self, other: "Direction") -> int:
        """``a_self * b_other - a_other * b_self``; nonzero for distinct directions."""
        return self.a * other.b - other.a * self.b

    def as_tuple(self) -> tuple[int, int]:
        return (self.a, self.b)

    def __repr__(self):
        return f"Direction({self.a}, {self.b})"


def normalize_direction(a: int, b: int) -> Direction:
    """Return the normalized primitive representative of ``±(a, b)``.

    >>> normalize_direction(-1, 2)
    Direction(1, -2)
    >>> normalize_direction(0, -3)
    Direction(0, 1)
    """
    a, b = int(a), int(b)
    if a == 0 and b == 0:
        raise InvalidDirection("zero vector is not a direction")
    g = math.gcd(a, b)
    a, b = a // g, b // g
    if a < 0 or (a == 0 and b < 0):
        a, b = -a, -b
    return Direction(a, b)


def line_index_range(direction: Direction, m: int, n: int) -> tuple[int, int]:
    """Smallest and largest ``t`` such that the line ``b*i - a*j = t`` meets the grid."""
    if m < 1 or n < 1:
        raise InvalidGrid(f"grid dimensions must be positive, got {m}x{n}")
    corners = [direction.line_index(i, j) for i in (0, m - 1) for j in (0, n - 1)]
    return min(corners), max(corners)


@dataclass(frozen=True)
class DirectionSet(Sequence):
    """Ordered, duplicate-free directions plus the permutation back to input order.

    ``perm[p]`` is the original (input) index of the direction currently
    stored at position ``p``.
    """

    dirs: tuple[Direction, ...]
    perm: tuple[int, ...] = None

    def __post_init__(self):
        dirs = tuple(self.dirs)
        if not dirs:
            raise InvalidDirection("at least one direction is required")
        if len(set(dirs)) != len(dirs):
            raise InvalidDirection("duplicate directions")
        perm = tuple(range(len(dirs))) if self.perm is None else tuple(self.perm)
        if sorted(perm) != list(range(len(dirs))):
            raise InvalidDirection(f"perm {perm} is not a permutation of 0..{len(dirs) - 1}")
        object.__setattr__(self, "dirs", dirs)
        object.__setattr__(self, "perm", perm)

    @classmethod
    def from_pairs(cls, pairs: Iterable) -> "DirectionSet":
        """Normalize each ``(a, b)`` pair; duplicates after normalization are rejected."""
        return cls(tuple(p if isinstance(p, Direction) else normalize_direction(*p) for p in pairs))

    def __getitem__(self, p):
        return self.dirs[p]

    def __len__(self):
        return len(self.dirs)

    def __iter__(self) -> Iterator[Direction]:
        return iter(self.dirs)

    def swap(self, p: int, q: int) -> "DirectionSet":
        dirs, perm = list(self.dirs), list(self.perm)
        dirs[p], dirs[q] = dirs[q], dirs[p]
        perm[p], perm[q] = perm[q], perm[p]
        return DirectionSet(tuple(dirs), tuple(perm))

    def position_of(self, original: int) -> int:
        return self.perm.index(original)

    def as_pairs(self) -> list[list[int]]:
        return [[d.a, d.b] for d in self.dirs]


@dataclass(frozen=True)
class Grid:
    """Integer function on the ``m x n`` lattice rectangle.

    ``values[j][i]`` is ``f(i, j)``: ``n`` rows of ``m`` columns.
    """

    m: int
    n: int
    values: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.m < 1 or self.n < 1:
            raise InvalidGrid(f"grid dimensions must be positive, got {self.m}x{self.n}")
        rows = tuple(tuple(int(v) for v in row) for row in self.values)
        if len(rows) != self.n or any(len(r) != self.m for r in rows):
            raise InvalidGrid(f"expected {self.n} rows of {self.m} values")
        object.__setattr__(self, "values", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "Grid":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise InvalidGrid("empty grid")
        return cls(len(rows[0]), len(rows), rows)

    @classmethod
    def zeros(cls, m: int, n: int) -> "Grid":
        return cls(m, n, tuple((0,) * m for _ in range(n)))

    def value(self, i: int, j: int) -> int:
        return self.values[j][i]

    def with_value(self, i: int, j: int, v: int) -> "Grid":
        rows = [list(r) for r in self.values]
        rows[j][i] = v
        return Grid(self.m, self.n, rows)

    def total(self) -> int:
        return sum(map(sum, self.values))


@dataclass(frozen=True)
class LineSumTable:
    """Complete line sums of an ``m x n`` grid in every direction of a DirectionSet.

    ``rows[p][t - t_min(p)]`` is the line sum on line ``t`` of the
    direction at position ``p``.  Every line meeting the grid is stored,
    zeros included.
    """

    m: int
    n: int
    directions: DirectionSet
    rows: tuple[tuple[int, ...], ...]
    # moments keyed by original direction index; shared by swapped copies
    _moments: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if not isinstance(self.directions, DirectionSet):
            object.__setattr__(self, "directions", DirectionSet.from_pairs(self.directions))
        if self.m < 1 or self.n < 1:
            raise InvalidLineSums(f"grid dimensions must be positive, got {self.m}x{self.n}")
        rows = tuple(tuple(r) for r in self.rows)
        if len(rows) != len(self.directions):
            raise InvalidLineSums(f"{len(self.directions)} directions but {len(rows)} rows of sums")
        for p, (direction, row) in enumerate(zip(self.directions, rows)):
            lo, hi = line_index_range(direction, self.m, self.n)
            if len(row) != hi - lo + 1:
                raise InvalidLineSums(
                    f"direction {direction.as_tuple()} needs {hi - lo + 1} line sums, got {len(row)}")
            if not all(isinstance(v, int) for v in row):
                raise InvalidLineSums(f"non-integer line sum in direction {direction.as_tuple()}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_mappings(cls, m: int, n: int, directions, sums: Sequence[Mapping[int, int]]) -> "LineSumTable":
        """Build from one ``{t: sum}`` mapping per direction; key sets must be exact."""
        directions = directions if isinstance(directions, DirectionSet) else DirectionSet.from_pairs(directions)
        rows = []
        for direction, mapping in zip(directions, sums):
            lo, hi = line_index_range(direction, m, n)
            if set(mapping) != set(range(lo, hi + 1)):
                raise InvalidLineSums(
                    f"direction {direction.as_tuple()}: keys must be exactly {lo}..{hi}")
            rows.append(tuple(int(mapping[t]) for t in range(lo, hi + 1)))
        return cls(m, n, directions, tuple(rows))

    @property
    def d(self) -> int:
        return len(self.directions)

    def t_range(self, p: int) -> tuple[int, int]:
        return line_index_range(self.directions[p], self.m, self.n)

    def t_min(self, p: int) -> int:
        return self.t_range(p)[0]

    def original_index(self, p: int) -> int:
        return self.directions.perm[p]

    def sums(self, p: int) -> dict[int, int]:
        lo = self.t_min(p)
        return {lo + k: v for k, v in enumerate(self.rows[p])}

    def get(self, p: int, t: int) -> int:
        lo, hi = self.t_range(p)
        if not lo <= t <= hi:
            raise KeyError(t)
        return self.rows[p][t - lo]

    def total(self, p: int) -> int:
        return sum(self.rows[p])

    def moment(self, p: int, j: int) -> int:
        """``sum_t t**j * l[p, t]`` (cached per direction)."""
        key = self.original_index(p)
        cached = self._moments.get(key)
        if cached is None or len(cached) <= j:
            cached = _moments(self.rows[p], self.t_min(p), max(j + 1, 2 * len(cached or ()), 4))
            self._moments[key] = cached
        return cached[j]

    def swap(self, p: int, q: int) -> "LineSumTable":
        rows = list(self.rows)
        rows[p], rows[q] = rows[q], rows[p]
        return LineSumTable(self.m, self.n, self.directions.swap(p, q), tuple(rows), self._moments)

    def replace_sums(self, p: int, updates: Mapping[int, int]) -> "LineSumTable":
        """Copy with the given ``{t: value}`` entries of direction ``p`` replaced."""
        lo, hi = self.t_range(p)
        row = list(self.rows[p])
        for t, v in updates.items():
            if not lo <= t <= hi:
                raise InvalidLineSums(
                    f"line {t} does not meet the grid in direction {self.directions[p].as_tuple()}")
            row[t - lo] = int(v)
        rows = list(self.rows)
        rows[p] = tuple(row)
        moments = {k: v for k, v in self._moments.items() if k != self.original_index(p)}
        return LineSumTable(self.m, self.n, self.directions, tuple(rows), moments)

    def canonical(self) -> "LineSumTable":
        """The same table with directions back in input order."""
        order = sorted(range(self.d), key=lambda p: self.directions.perm[p])
        dirs = DirectionSet(tuple(self.directions[p] for p in order))
        return LineSumTable(self.m, self.n, dirs, tuple(self.rows[p] for p in order))


def _moments(row: Sequence[int], t_min: int, count: int) -> list[int]:
    acc = [0] * count
    for offset, v in enumerate(row):
        if not v:
            continue
        t = t_min + offset
        term = v
        for j in range(count):
            acc[j] += term
            term *= t
    return acc


class Status(enum.Enum):
    SUCCESS = "Success"
    NO_ERRORS = "NoErrors"
    ASSUMPTION_VIOLATED = "AssumptionViolated"


class Correction(NamedTuple):
    direction: int
    t: int
    measured: int
    corrected: int


@dataclass
class CorrectionReport:
    """Outcome of a correction run.

    ``flagged_directions`` holds ``(original index, level)`` pairs where
    level 1 is the sum-of-sums screen; ``corrections`` is in the order the
    lines were repaired.
    """

    flagged_directions: list = field(default_factory=list)
    corrections: list = field(default_factory=list)
    status: Status = Status.NO_ERRORS
    reason: str | None = None
    guaranteed: bool = True
    directions: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    def __post_init__(self):
        for c in self.corrections:
            if c.measured == c.corrected:
                raise ValueError(f"correction {c} does not change the line sum")

    @property
    def total_errors_found(self) -> int:
        return len(self.corrections)

    @property
    def ok(self) -> bool:
        return self.status is not Status.ASSUMPTION_VIOLATED

    def to_dict(self, trace: bool = False) -> dict:
        out = {
            "status": self.status.value,
            "reason": self.reason,
            "guaranteed": self.guaranteed,
            "total_errors_found": self.total_errors_found,
            "flagged_directions": [
                {"direction": h, "vector": self._vector(h), "level": k}
                for h, k in self.flagged_directions
            ],
            "corrections": [
                {"direction": c.direction, "vector": self._vector(c.direction), "t": c.t,
                 "measured": c.measured, "corrected": c.corrected}
                for c in self.corrections
            ],
        }
        if trace:
            out["trace"] = self.trace
        return out

    def _vector(self, h):
        return list(self.directions[h]) if h < len(self.directions) else None
