"""Exact linear algebra over the rationals.

Everything here works on plain nested lists of ``int`` / ``Fraction`` and
never touches floating point.  Elimination is fraction-free (Bareiss):
rational rows are first scaled by their common denominator, so every
intermediate is an integer minor of the cleared matrix.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .exceptions import DimensionMismatch, RootDeficit, SingularSystem

Rational = Fraction


def _clear_row(row) -> tuple[list[int], int]:
    """Scale a rational row to integers; returns (int row, multiplier)."""
    den = 1
    for v in row:
        if isinstance(v, Fraction) and v.denominator != 1:
            den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in row], den


def _square(matrix) -> list[list]:
    rows = [list(r) for r in matrix]
    if any(len(r) != len(rows) for r in rows):
        raise DimensionMismatch(f"expected a square matrix, got {len(rows)} rows of lengths "
                                f"{sorted({len(r) for r in rows})}")
    return rows


def _echelon(a: list[list[int]]) -> list[int]:
    """In-place fraction-free row echelon form of an integer matrix.

    Returns the pivot columns.  After processing pivot ``r``, entry
    ``a[i][j]`` (``i > r``) equals the minor on pivot rows/columns plus
    row ``i`` and column ``j``, so the division by the previous pivot is exact.
    """
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    prev = 1
    r = 0
    pivots = []
    for c in range(n_cols):
        if r == n_rows:
            break
        piv = next((i for i in range(r, n_rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        for i in range(r + 1, n_rows):
            f = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, n_cols):
                row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
            row_i[c] = 0
        prev = p
        pivots.append(c)
        r += 1
    return pivots


def bareiss_determinant(matrix: Sequence[Sequence]) -> int | Fraction:
    """Exact determinant by Bareiss elimination.

    Integer input gives an ``int``; rational input is cleared row by row
    and the result divided back, giving a ``Fraction``.
    """
    rows = _square(matrix)
    n = len(rows)
    if n == 0:
        return 1
    a, scale = [], 1
    for row in rows:
        cleared, den = _clear_row(row)
        a.append(cleared)
        scale *= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        p = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (p * row_i[j] - f * row_k[j]) // prev
        prev = p
    det = sign * a[n - 1][n - 1]
    if scale == 1:
        return det
    return Fraction(det, scale)


def rank(matrix: Sequence[Sequence]) -> int:
    """Exact rank over the rationals (pivots tested against exact zero)."""
    rows = [_clear_row(r)[0] for r in matrix]
    if not rows or not rows[0]:
        return 0
    return len(_echelon(rows))


def solve_linear(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly for a square nonsingular matrix."""
    rows = _square(matrix)
    n = len(rows)
    if len(rhs) != n:
        raise DimensionMismatch(f"rhs has length {len(rhs)}, matrix has {n} rows")
    if n == 0:
        return []
    aug = [_clear_row(list(row) + [b])[0] for row, b in zip(rows, rhs)]
    pivots = _echelon(aug)
    if pivots[:n] != list(range(n)):
        raise SingularSystem("matrix is singular")
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = Fraction(aug[i][n])
        for j in range(i + 1, n):
            acc -= aug[i][j] * x[j]
        x[i] = acc / aug[i][i]
    return x


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    if len(a[0]) != len(b):
        raise DimensionMismatch("inner dimensions differ")
    cols = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def vandermonde(nodes: Sequence[int]) -> list[list[int]]:
    """``V[i][j] = nodes[j] ** i``: row ``i`` holds the ``i``-th powers."""
    s = len(nodes)
    return [[t ** i for t in nodes] for i in range(s)]


def hankel(c: Sequence, size: int) -> list[list]:
    """``size x size`` matrix with entry ``(j, h) = c[j + h]`` (0-based)."""
    if len(c) < 2 * size - 1:
        raise DimensionMismatch(f"need {2 * size - 1} values for a {size}x{size} Hankel matrix")
    return [[c[j + h] for h in range(size)] for j in range(size)]


def vandermonde_inverse(nodes: Sequence[int]) -> list[list[Fraction]]:
    """Exact inverse of :func:`vandermonde` of the given nodes.

    Row ``i`` is the coefficient vector (constant term first) of the
    Lagrange basis polynomial that is 1 at ``nodes[i]`` and 0 at the other
    nodes.
    """
    nodes = [int(t) for t in nodes]
    if len(set(nodes)) != len(nodes):
        raise SingularSystem(f"Vandermonde nodes are not distinct: {nodes}")
    inverse = []
    for i, ti in enumerate(nodes):
        poly = [1]  # constant term first
        denom = 1
        for k, tk in enumerate(nodes):
            if k == i:
                continue
            poly = [0] + poly
            for q in range(len(poly) - 1):
                poly[q] -= tk * poly[q + 1]
            denom *= ti - tk
        inverse.append([Fraction(coef, denom) for coef in poly])
    return inverse


def horner(coeffs: Sequence, z):
    """Evaluate a polynomial given highest-degree coefficient first."""
    acc = 0
    for coef in coeffs:
        acc = acc * z + coef
    return acc


def integer_roots(coeffs: Sequence, search_range: tuple[int, int]) -> list[int]:
    """All integer roots of a monic polynomial within an inclusive range.

    ``coeffs`` is highest degree first and must start with 1.  Rational
    coefficients are allowed; the polynomial is cleared to integers and
    every candidate is checked by exact Horner evaluation.

    Raises :class:`RootDeficit` unless the polynomial has as many distinct
    integer roots in range as its degree.
    """
    coeffs = [Fraction(c) for c in coeffs]
    if not coeffs or coeffs[0] != 1:
        raise ValueError(f"polynomial must be monic, got leading coefficient {coeffs[:1]}")
    lo, hi = search_range
    if lo > hi:
        raise ValueError(f"empty search range {search_range}")
    degree = len(coeffs) - 1
    if degree == 0:
        return []
    cleared, _ = _clear_row(coeffs)
    roots = [t for t in range(lo, hi + 1) if horner(cleared, t) == 0]
    if len(roots) < degree:
        raise RootDeficit(
            f"found {len(roots)} integer roots in [{lo}, {hi}] for a degree-{degree} polynomial",
        )
    return roots
