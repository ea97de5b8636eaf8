"""Forward projection, error injection and random test instances."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import NamedTuple

from .core import Direction, DirectionSet, Grid, LineSumTable, line_index_range, normalize_direction
from .exceptions import InvalidErrorSpec, InvalidParameters


class ErrorEntry(NamedTuple):
    direction: int
    t: int
    delta: int


@dataclass(frozen=True)
class ErrorSpec:
    """Additive errors ``measured - exact`` keyed by original direction index and line."""

    entries: tuple[ErrorEntry, ...] = ()

    def __post_init__(self):
        entries = tuple(ErrorEntry(*map(int, e)) for e in self.entries)
        keys = [(e.direction, e.t) for e in entries]
        if len(set(keys)) != len(keys):
            raise InvalidErrorSpec("duplicate (direction, t) entries")
        if any(e.delta == 0 for e in entries):
            raise InvalidErrorSpec("zero delta is not an error")
        object.__setattr__(self, "entries", entries)

    @property
    def directions(self) -> set[int]:
        return {e.direction for e in self.entries}

    def within(self, F: int, G: int) -> bool:
        return len(self.entries) <= F and len(self.directions) <= G

    def negated(self) -> "ErrorSpec":
        return ErrorSpec(tuple(ErrorEntry(e.direction, e.t, -e.delta) for e in self.entries))

    def __len__(self):
        return len(self.entries)


def project(grid: Grid, directions) -> LineSumTable:
    """Exact line sums of ``grid`` in every direction."""
    if not isinstance(directions, DirectionSet):
        directions = DirectionSet.from_pairs(directions)
    rows = []
    for direction in directions:
        lo, hi = line_index_range(direction, grid.m, grid.n)
        row = [0] * (hi - lo + 1)
        a, b = direction.a, direction.b
        for j, values in enumerate(grid.values):
            base = -a * j - lo
            for i, v in enumerate(values):
                row[base + b * i] += v
        rows.append(tuple(row))
    return LineSumTable(grid.m, grid.n, directions, tuple(rows))


def inject(table: LineSumTable, spec: ErrorSpec) -> LineSumTable:
    """Add each delta of ``spec`` to the matching line sum."""
    updates: dict[int, dict[int, int]] = {}
    for e in spec.entries:
        if not 0 <= e.direction < table.d:
            raise InvalidErrorSpec(f"direction index {e.direction} out of range for d={table.d}")
        p = table.directions.position_of(e.direction)
        lo, hi = table.t_range(p)
        if not lo <= e.t <= hi:
            raise InvalidErrorSpec(
                f"line t={e.t} does not meet the grid in direction "
                f"{table.directions[p].as_tuple()} (range {lo}..{hi})")
        updates.setdefault(p, {})[e.t] = table.get(p, e.t) + e.delta
    for p, update in updates.items():
        table = table.replace_sums(p, update)
    return table


def direction_pool(limit: int) -> list[Direction]:
    """All normalized primitive directions with ``|a|, |b| <= limit``."""
    pool = set()
    for a in range(0, limit + 1):
        for b in range(-limit, limit + 1):
            if (a, b) != (0, 0) and math.gcd(a, b) == 1:
                pool.add(normalize_direction(a, b))
    return sorted(pool)


def _nonzero(rng, bound):
    return rng.choice([-1, 1]) * rng.randint(1, bound)


def random_error_spec(rng: random.Random, table_ranges: list[tuple[int, int]], F: int, G: int,
                      adversarial: float = 0.3, max_delta: int = 9) -> ErrorSpec:
    """Errors within the budgets: at most ``F`` lines in at most ``G`` directions.

    With probability ``adversarial`` a direction receiving ``c >= 2``
    errors gets equally spaced binomial deltas ``(-1)**i * C(c-1, i)``,
    whose first ``c-1`` moments vanish; such a direction passes every
    detection level below ``c``.
    """
    if F == 0 or G == 0:
        return ErrorSpec()
    total = rng.randint(1, F)
    ndirs = rng.randint(1, min(G, total))
    counts = [1] * ndirs
    for _ in range(total - ndirs):
        counts[rng.randrange(ndirs)] += 1
    entries = []
    for direction, count in zip(rng.sample(range(len(table_ranges)), ndirs), counts):
        lo, hi = table_ranges[direction]
        count = min(count, hi - lo + 1)
        span = hi - lo
        if count >= 2 and span >= count - 1 and rng.random() < adversarial:
            step = rng.randint(1, span // (count - 1))
            t0 = rng.randint(lo, hi - (count - 1) * step)
            scale = _nonzero(rng, 3)
            for i in range(count):
                entries.append(ErrorEntry(direction, t0 + i * step, (-1) ** i * math.comb(count - 1, i) * scale))
        else:
            for t in sorted(rng.sample(range(lo, hi + 1), count)):
                entries.append(ErrorEntry(direction, t, _nonzero(rng, max_delta)))
    return ErrorSpec(tuple(entries))


def random_instance(seed, m: int, n: int, d: int, F: int, G: int,
                    value_range: tuple[int, int] = (-9, 9),
                    adversarial: float = 0.3) -> tuple[Grid, DirectionSet, ErrorSpec]:
    """Seeded grid, direction set and in-budget error spec.

    The directions always include ``(1, 0)`` and ``(0, 1)``; the rest are
    drawn from primitive vectors with entries bounded by ``max(m, n)``.
    """
    if m < 1 or n < 1 or d < 1:
        raise InvalidParameters(f"need positive m, n, d; got {m}, {n}, {d}")
    if not 0 <= G <= F or (F > 0 and 2 * F >= d):
        raise InvalidParameters(f"budgets must satisfy G <= F < d/2, got F={F}, G={G}, d={d}")
    rng = random.Random(seed)
    base = [Direction(1, 0), Direction(0, 1)]
    pool = [p for p in direction_pool(max(m, n)) if p not in base]
    if d > len(pool) + 2:
        raise InvalidParameters(f"only {len(pool) + 2} directions available for a {m}x{n} grid")
    directions = DirectionSet(tuple((base + rng.sample(pool, max(0, d - 2)))[:d]))
    lo, hi = value_range
    grid = Grid(m, n, tuple(tuple(rng.randint(lo, hi) for _ in range(m)) for _ in range(n)))
    ranges = [line_index_range(direction, m, n) for direction in directions]
    spec = random_error_spec(rng, ranges, F, G, adversarial=adversarial)
    return grid, directions, spec


def single_cell_change(grid: Grid, i: int, j: int, delta: int) -> Grid:
    return grid.with_value(i, j, grid.value(i, j) + delta)


def errors_between(measured: LineSumTable, exact: LineSumTable) -> ErrorSpec:
    """The ErrorSpec turning ``exact`` into ``measured`` (both in input order)."""
    measured, exact = measured.canonical(), exact.canonical()
    entries: list[ErrorEntry] = []
    for p in range(exact.d):
        lo = exact.t_min(p)
        for offset, (x, y) in enumerate(zip(measured.rows[p], exact.rows[p])):
            if x != y:
                entries.append(ErrorEntry(p, lo + offset, x - y))
    return ErrorSpec(tuple(entries))
