"""Recovery of the wrong line sums inside one direction.

Once enough directions are known to be correct, the relation residuals
``c_1, c_2, ...`` of a target direction are the power sums
``c_j = sum_i t_i**(j-1) * x_i`` of its errors ``x_i`` on lines ``t_i``.
Both the lines and the errors are unknown, which is a Prony problem:

* the rank of the Hankel matrix of the ``c_j`` is the number of errors ``s``;
* ``B_1..B_s`` with ``c_{j+s} = sum_q (-1)**(q-1) * B_q * c_{j+s-q}`` are the
  elementary symmetric functions of the ``t_i``;
* the ``t_i`` are the integer roots of ``z**s - B_1 z**(s-1) + ... ``;
* the ``x_i`` follow from the Vandermonde system on those roots.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import LineSumTable
from .exact import hankel, integer_roots, rank, solve_linear, vandermonde_inverse
from .exceptions import (AssumptionViolated, InternalContradiction, InvalidParameters,
                         RootDeficit, SingularSystem)
from .relations import correction_coefficients


@dataclass(frozen=True)
class PronySolution:
    s: int
    nodes: tuple[int, ...] = ()
    magnitudes: tuple[int, ...] = ()
    B: tuple[Fraction, ...] = ()
    inverse: tuple[tuple[Fraction, ...], ...] = ()

    def __post_init__(self):
        if not (self.s == len(self.nodes) == len(self.magnitudes)):
            raise ValueError("PronySolution sizes disagree")
        if len(set(self.nodes)) != self.s:
            raise ValueError("nodes are not distinct")
        if any(x == 0 for x in self.magnitudes):
            raise ValueError("zero magnitude is not an error")


def power_sums(nodes: Sequence[int], magnitudes: Sequence, count: int) -> list:
    """``[sum_i t_i**(j-1) * x_i for j in 1..count]``."""
    return [sum(x * t ** j for t, x in zip(nodes, magnitudes)) for j in range(count)]


def error_count(c: Sequence, S: int) -> int:
    """Rank of the ``S x S`` Hankel matrix ``[c_{j+h-1}]``."""
    if S <= 0:
        return 0
    return rank(hankel(c, S))


def solve_recurrence(c: Sequence, s: int) -> list[Fraction]:
    """Coefficients ``B_1..B_s`` of the linear recurrence satisfied by ``c``.

    Solves ``c_{s+r} = sum_q (-1)**(q-1) B_q c_{s+r-q}`` for ``r = 1..s``.
    """
    if s < 1:
        raise ValueError("s must be positive")
    if len(c) < 2 * s:
        raise ValueError(f"need {2 * s} coefficients, got {len(c)}")
    matrix = [[(-1) ** q * c[s - 1 + r - q] for q in range(s)] for r in range(s)]
    rhs = [c[s + r] for r in range(s)]
    try:
        return solve_linear(matrix, rhs)
    except SingularSystem:
        raise InternalContradiction(
            f"recurrence system for s={s} is singular although the Hankel rank is {s}") from None


def locator_polynomial(B: Sequence) -> list[Fraction]:
    """``z**s - B_1 z**(s-1) + B_2 z**(s-2) - ...``, highest degree first."""
    return [Fraction(1)] + [Fraction((-1) ** (q + 1) * b) for q, b in enumerate(B)]


def locate_and_size(c: Sequence, B: Sequence, t_range: tuple[int, int]) -> PronySolution:
    """Find the wrong lines and their errors from ``c`` and the recurrence ``B``."""
    s = len(B)
    if s == 0:
        return PronySolution(0)
    nodes = integer_roots(locator_polynomial(B), t_range)
    inverse = vandermonde_inverse(nodes)
    raw = [sum(w * cj for w, cj in zip(row, c[:s])) for row in inverse]
    if any(Fraction(x).denominator != 1 for x in raw):
        raise InternalContradiction(f"non-integral error magnitudes {raw}")
    magnitudes = [int(x) for x in raw]
    if any(x == 0 for x in magnitudes):
        raise InternalContradiction(f"zero error magnitude at nodes {nodes}")
    if power_sums(nodes, magnitudes, 2 * s) != list(c[:2 * s]):
        raise InternalContradiction("recovered errors do not reproduce the power sums")
    return PronySolution(s, tuple(nodes), tuple(magnitudes), tuple(Fraction(b) for b in B),
                         tuple(tuple(row) for row in inverse))


def _solve_unknown(c, S, t_range) -> PronySolution:
    s = error_count(c, S)
    if s == 0:
        return PronySolution(0)
    return locate_and_size(c, solve_recurrence(c, s), t_range)


def _apply(table, target, solution):
    corrections = [(t, table.get(target, t) - x) for t, x in zip(solution.nodes, solution.magnitudes)]
    return corrections, table.replace_sums(target, dict(corrections))


def _certify(table, clean, target, count, what):
    residual = correction_coefficients(table, clean, target, count)
    if any(residual):
        raise AssumptionViolated(
            f"{what}: corrected direction still violates the line sum relations",
            direction=table.original_index(target), residual=[str(v) for v in residual])


def _trace_entry(table, target, S, c, solution):
    return {
        "stage": "correct",
        "direction": table.original_index(target),
        "vector": list(table.directions[target].as_tuple()),
        "S": S,
        "c": [str(v) for v in c],
        "s": solution.s,
        "B": [str(b) for b in solution.B],
        "nodes": list(solution.nodes),
        "magnitudes": list(solution.magnitudes),
        "inverse": [[str(w) for w in row] for row in solution.inverse],
    }


def correct_direction(table: LineSumTable, target: int, clean_positions: Sequence[int], S: int,
                      trace: list | None = None) -> list[tuple[int, int]]:
    """Repair up to ``S`` wrong sums of direction ``target``.

    ``clean_positions`` must hold at least ``2*S`` directions with correct
    sums.  Returns ``(t, corrected value)`` for every repaired line.  The
    repaired direction is certified against all ``2*S`` relations before
    returning; failures surface as :class:`AssumptionViolated`.
    """
    if len(clean_positions) < 2 * S:
        raise AssumptionViolated(
            f"need {2 * S} clean directions to correct direction {table.original_index(target)}, "
            f"have {len(clean_positions)}")
    c = correction_coefficients(table, clean_positions, target, 2 * S)
    try:
        solution = _solve_unknown(c, S, table.t_range(target))
    except (RootDeficit, InternalContradiction) as exc:
        raise AssumptionViolated(
            f"direction {table.original_index(target)}: {exc}",
            direction=table.original_index(target), c=[str(v) for v in c]) from exc
    corrections, fixed = _apply(table, target, solution)
    _certify(fixed, clean_positions, target, 2 * S, f"direction {table.original_index(target)}")
    if trace is not None:
        trace.append(_trace_entry(table, target, S, c, solution))
    return corrections


def correct_one_direction_known_k(table: LineSumTable, target: int, clean_positions: Sequence[int],
                                  known_positions: Sequence[int] | None = None,
                                  trace: list | None = None) -> list[tuple[int, int]]:
    """Repair direction ``target`` given ``k`` directions known to be correct.

    Without ``known_positions`` up to ``(k-1)//2`` wrong sums are located
    and repaired.  With ``known_positions`` (at most ``k`` lines that may
    be wrong) the errors are read off the Vandermonde system directly.
    Either way the result is certified against all ``k`` relations.
    """
    k = len(clean_positions)
    if target in clean_positions:
        raise InvalidParameters("target direction is listed as clean")
    name = f"direction {table.original_index(target)}"
    if known_positions is not None:
        nodes = sorted(set(int(t) for t in known_positions))
        if len(nodes) > k:
            raise InvalidParameters(f"{len(nodes)} known positions but only {k} clean directions")
        lo, hi = table.t_range(target)
        if any(not lo <= t <= hi for t in nodes):
            raise InvalidParameters(f"known positions {nodes} outside line range [{lo}, {hi}]")
        c = correction_coefficients(table, clean_positions, target, len(nodes))
        raw = [sum(w * cj for w, cj in zip(row, c)) for row in vandermonde_inverse(nodes)]
        if any(Fraction(x).denominator != 1 for x in raw):
            raise AssumptionViolated(f"{name}: non-integral error magnitudes {raw}")
        pairs = [(t, int(x)) for t, x in zip(nodes, raw) if x]
        solution = PronySolution(len(pairs), tuple(t for t, _ in pairs), tuple(x for _, x in pairs))
        S = len(nodes)
    else:
        S = (k - 1) // 2
        c = correction_coefficients(table, clean_positions, target, 2 * S)
        try:
            solution = _solve_unknown(c, S, table.t_range(target))
        except (RootDeficit, InternalContradiction) as exc:
            raise AssumptionViolated(f"{name}: {exc}", direction=table.original_index(target)) from exc
    corrections, fixed = _apply(table, target, solution)
    _certify(fixed, clean_positions, target, k, name)
    if trace is not None:
        trace.append(_trace_entry(table, target, S, c, solution))
    return corrections
