"""Input validation helpers for the estimator API."""
from __future__ import annotations

import numpy as np

from .core import DirectionSet, Grid, LineSumTable
from .exceptions import InvalidGrid, InvalidLineSums
from .io import grid_from_dict, table_from_dict


def check_grid(X) -> Grid:
    """Coerce ``X`` to a :class:`Grid`.

    Accepts a Grid, a grid dict as in the JSON format, or any 2-D
    array-like of integers indexed ``[j][i]`` (rows first).  Floating
    input must hold integral values.
    """
    if isinstance(X, Grid):
        return X
    if isinstance(X, dict):
        return grid_from_dict(X)
    arr = np.asarray(X, dtype=object)
    if arr.ndim != 2 or arr.size == 0:
        raise InvalidGrid(f"expected a non-empty 2-D array, got shape {arr.shape}")
    values = []
    for row in arr:
        out = []
        for v in row:
            if isinstance(v, (bool, np.bool_)):
                raise InvalidGrid("boolean grid values are not supported")
            if isinstance(v, (int, np.integer)):
                out.append(int(v))
            elif isinstance(v, (float, np.floating)) and float(v).is_integer():
                out.append(int(v))
            else:
                raise InvalidGrid(f"grid values must be integers, got {v!r}")
        values.append(out)
    return Grid.from_rows(values)


def check_directions(directions) -> DirectionSet:
    if isinstance(directions, DirectionSet):
        return directions
    return DirectionSet.from_pairs(directions)


def check_line_sums(X) -> LineSumTable:
    """Coerce ``X`` to a :class:`LineSumTable` (a table or its JSON dict)."""
    if isinstance(X, LineSumTable):
        return X
    if isinstance(X, dict):
        return table_from_dict(X)
    raise InvalidLineSums(f"expected a LineSumTable or line-sum dict, got {type(X).__name__}")


def check_same_geometry(table: LineSumTable, m: int, n: int, directions: DirectionSet) -> None:
    table = table.canonical()
    if (table.m, table.n) != (m, n) or tuple(table.directions) != tuple(directions):
        raise InvalidLineSums("line sums do not match the geometry seen during fit")
