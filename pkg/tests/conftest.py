import itertools
import math
from fractions import Fraction

import pytest

from tomoec import DirectionSet, ErrorSpec, Grid, inject, project

WORKED_DIRECTIONS = [
    (1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (2, -1), (1, 2), (1, -2),
    (3, 1), (3, -1), (1, 3), (1, -3), (3, 2), (3, -2), (2, 3), (2, -3),
]

# Two errors on (1,1), two on (2,-1), three on (1,-2); every t lies inside
# the line range of its direction on the 16x16 grid.
WORKED_ERRORS = ErrorSpec((
    (2, 0, -3), (2, 4, 3),
    (5, -6, -2), (5, -1, 1),
    (7, -3, 2), (7, -5, -4), (7, -7, 2),
))


def leibniz_det(matrix):
    """Permutation-expansion determinant; slow but independent of the code under test."""
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        total += (-1) ** inversions * math.prod(matrix[i][perm[i]] for i in range(n))
    return total


def naive_rank(matrix):
    rows = [[Fraction(v) for v in r] for r in matrix]
    rank = 0
    cols = len(rows[0]) if rows else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c]:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def sparse_table(m, n, directions, entries):
    """Line sums that are zero except for ``entries`` (one ``{t: value}`` per direction)."""
    spec = ErrorSpec(tuple((p, t, v) for p, mapping in enumerate(entries) for t, v in mapping.items()))
    return inject(project(Grid.zeros(m, n), directions), spec)


@pytest.fixture
def worked_directions():
    return DirectionSet.from_pairs(WORKED_DIRECTIONS)


@pytest.fixture
def worked_exact(worked_directions):
    return project(Grid.zeros(16, 16), worked_directions)


@pytest.fixture
def worked_measured(worked_exact):
    return inject(worked_exact, WORKED_ERRORS)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
