"""Detection of the directions that contain wrong line sums.

Level 1 compares the grand total of each direction against the median
total.  Level ``k >= 2`` picks a window of ``k`` unflagged directions,
evaluates the relation residual for every other unflagged direction, and
either rejects the window (too many nonzero residuals, so the window
itself is contaminated) or flags every direction with a nonzero residual.
Flagged directions are swapped to the front of the table, so positions
``0..g-1`` always hold the directions found so far.
"""
from __future__ import annotations

import dataclasses
import logging
import statistics
from dataclasses import dataclass

from .core import LineSumTable
from .exceptions import AssumptionViolated, InvalidParameters
from .relations import detection_c

logger = logging.getLogger(__name__)


def default_budgets(d: int, F: int | None = None, G: int | None = None) -> tuple[int, int]:
    if F is None:
        F = (d - 1) // 2
    if G is None:
        G = F
    return F, G


def check_budgets(d: int, F: int, G: int, unsafe: bool = False) -> None:
    if F < 0 or G < 0:
        raise InvalidParameters(f"budgets must be non-negative, got F={F}, G={G}")
    if G > F:
        raise InvalidParameters(f"G={G} exceeds F={F}")
    if 2 * F >= d and F > 0 and not unsafe:
        raise InvalidParameters(f"F={F} is not below d/2 for d={d}; pass unsafe=True to try anyway")


@dataclass(frozen=True)
class DetectionState:
    table: LineSumTable
    F: int
    G: int
    g: int = 0
    rho: int = 0
    rho_per: tuple[int, ...] = ()
    k: int = 2
    unsafe: bool = False
    trace: tuple = ()

    def __post_init__(self):
        check_budgets(self.table.d, self.F, self.G, self.unsafe)
        if self.rho != sum(self.rho_per) or len(self.rho_per) != self.g:
            raise ValueError("inconsistent error bookkeeping")

    @property
    def flagged(self) -> list[tuple[int, int]]:
        """``(original index, level)`` of each flagged direction, in position order."""
        return [(self.table.original_index(p), level) for p, level in enumerate(self.rho_per)]

    def _flag(self, positions, level, **changes):
        table, g, rho_per = self.table, self.g, list(self.rho_per)
        for p in sorted(positions):
            table = table.swap(g, p)
            g += 1
            rho_per.append(level)
        return dataclasses.replace(self, table=table, g=g, rho=sum(rho_per),
                                   rho_per=tuple(rho_per), **changes)


def _vec(table, p):
    return list(table.directions[p].as_tuple())


def screen_sums(state: DetectionState) -> DetectionState:
    """Flag every direction whose grand total differs from the median total."""
    if state.g:
        raise ValueError("screen_sums expects a fresh state")
    table = state.table
    totals = [table.total(p) for p in range(table.d)]
    median = statistics.median_low(totals)
    positions = [p for p, total in enumerate(totals) if total != median]
    event = {
        "stage": "screen",
        "totals": totals,
        "median": median,
        "flagged": [table.original_index(p) for p in positions],
        "flagged_vectors": [_vec(table, p) for p in positions],
    }
    logger.debug("screen: median %s, flagged %s", median, event["flagged"])
    return state._flag(positions, 1, trace=state.trace + (event,))


def detect_level_k(state: DetectionState) -> DetectionState:
    """Run one level ``k = state.k`` of the window search and flag what it certifies."""
    k, g, table = state.k, state.g, state.table
    if k < 2:
        raise ValueError("levels start at k = 2")
    d = table.d
    max_directions = min(state.G - g, (state.F - state.rho) // k)
    events = []
    start = g
    while start + k <= d:
        window = list(range(start, start + k))
        values = []
        count = 0
        for target in range(g, d):
            if start <= target < start + k:
                continue
            c = detection_c(table, window, target)
            values.append((target, c))
            if c:
                count += 1
                if count > max_directions:
                    break
        accepted = count <= max_directions
        events.append({
            "stage": "window",
            "k": k,
            "max_directions": max_directions,
            "window": [table.original_index(p) for p in window],
            "window_vectors": [_vec(table, p) for p in window],
            "c": [[table.original_index(p), c] for p, c in values],
            "count": count,
            "accepted": accepted,
        })
        logger.debug("k=%d window %s: count %d (max %d)", k, events[-1]["window"], count, max_directions)
        if accepted:
            break
        start += k
    else:
        raise AssumptionViolated(
            "budgets F/G too small for the data: no window of "
            f"{k} directions passed at level {k}",
            k=k, g=g, rho=state.rho, trace=state.trace + tuple(events))
    positions = [p for p, c in values if c]
    return state._flag(positions, k, k=k + 1, trace=state.trace + tuple(events))


def detect_all(table: LineSumTable, F: int | None = None, G: int | None = None,
               unsafe: bool = False) -> DetectionState:
    """Flag every direction containing wrong line sums.

    Under ``G <= F < d/2`` and at most ``F`` wrong sums in at most ``G``
    directions, positions ``0..g-1`` of the returned state hold exactly
    the directions with wrong sums.  Raises :class:`AssumptionViolated`
    when the data cannot be explained within the budgets.
    """
    F, G = default_budgets(table.d, F, G)
    state = screen_sums(DetectionState(table, F, G, unsafe=unsafe))
    if state.g > G or state.rho > F:
        raise AssumptionViolated(
            f"{state.g} directions have deviating totals, more than the budgets allow",
            g=state.g, rho=state.rho, trace=state.trace)
    while state.k <= state.F - state.rho and state.g <= state.G:
        state = detect_level_k(state)
    reason = "k > F - rho" if state.k > state.F - state.rho else "g > G"
    stop = {"stage": "stop", "k": state.k, "g": state.g, "rho": state.rho, "reason": reason}
    return dataclasses.replace(state, trace=state.trace + (stop,))
