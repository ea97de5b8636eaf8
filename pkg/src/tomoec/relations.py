"""Line sum relations and the weighted power sums built from them.

For any ordered set ``K`` of ``k`` directions, exact line sums satisfy

    sum_{q in K} E(K, q) * sum_t t**(k-2) * l[q, t] = 0

where ``E(K, q)`` is ``(-1)**q`` times the product of the cross
determinants of all pairs of ``K`` not involving member ``q``.  Measured
sums that break such a relation reveal errors; the size of the residual
is what the detector and the corrector feed on.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .core import Direction, LineSumTable
from .exceptions import DegenerateDirections


def e_coefficient(members: Sequence[Direction], pos: int) -> int:
    """Signed product of cross determinants over pairs of ``members`` avoiding ``pos``.

    ``pos`` is 0-based, so the sign is ``(-1)**pos``.
    """
    if not 0 <= pos < len(members):
        raise IndexError(pos)
    others = [d for q, d in enumerate(members) if q != pos]
    prod = 1
    for x in range(len(others)):
        for y in range(x + 1, len(others)):
            prod *= others[x].cross(others[y])
    return -prod if pos % 2 else prod


def power_sum(table: LineSumTable, p: int, j: int) -> int:
    """``sum_t t**j * l[p, t]`` over every stored line of direction ``p``."""
    return table.moment(p, j)


def relation_residual(table: LineSumTable, positions: Sequence[int]) -> int:
    """Left-hand side of the line sum relation for the ordered set ``positions``."""
    members = [table.directions[p] for p in positions]
    exponent = len(positions) - 2
    return sum(e_coefficient(members, q) * table.moment(p, exponent)
               for q, p in enumerate(positions))


def detection_c(table: LineSumTable, test_positions: Sequence[int], target: int) -> int:
    """Residual of the relation on ``test_positions`` followed by ``target``.

    With ``k`` test directions this weighs the ``(k-1)``-th moments.  If
    the test directions are correct (up to that moment) the value is
    ``E(K, k)`` times the ``(k-1)``-th moment of the target's errors.
    """
    if target in test_positions:
        raise ValueError(f"target {target} is one of the test directions")
    return relation_residual(table, [*test_positions, target])


def correction_c(table: LineSumTable, clean_positions: Sequence[int], target: int, j: int) -> Fraction:
    """Normalized ``c_j``: the ``(j-1)``-th moment of the target's errors.

    Uses the first ``j`` clean directions; when they really are correct
    this equals ``sum_i t_i**(j-1) * x_i`` over the wrong lines ``t_i``
    of ``target`` with errors ``x_i = measured - exact``.
    """
    if len(clean_positions) < j:
        raise ValueError(f"c_{j} needs {j} clean directions, got {len(clean_positions)}")
    if target in clean_positions[:j]:
        raise ValueError(f"target {target} is one of the clean directions")
    positions = [*clean_positions[:j], target]
    members = [table.directions[p] for p in positions]
    e_target = e_coefficient(members, j)
    if e_target == 0:
        raise DegenerateDirections(f"E coefficient of the target vanishes for {members}")
    acc = Fraction(table.moment(target, j - 1))
    for q in range(j):
        acc += Fraction(e_coefficient(members, q), e_target) * table.moment(positions[q], j - 1)
    return acc


def correction_coefficients(table: LineSumTable, clean_positions: Sequence[int], target: int,
                            count: int) -> list[Fraction]:
    """``[c_1, ..., c_count]`` for ``target``."""
    return [correction_c(table, clean_positions, target, j) for j in range(1, count + 1)]


def check_relations(table: LineSumTable, k_max: int) -> list[tuple[tuple[int, ...], int]]:
    """Evaluate the relation on sliding windows and return the violated ones.

    For ``k = 2..k_max`` the windows are the first ``k-1`` directions plus
    each later direction.  Windows are reported by original direction
    index.  An empty list means every checked relation holds; this is a
    necessary condition for consistency, not a sufficient one.
    """
    if k_max < 2:
        raise ValueError(f"k_max must be at least 2, got {k_max}")
    violations = []
    for k in range(2, min(k_max, table.d) + 1):
        base = list(range(k - 1))
        for target in range(k - 1, table.d):
            residual = relation_residual(table, [*base, target])
            if residual:
                window = tuple(table.original_index(p) for p in (*base, target))
                violations.append((window, residual))
    return violations
