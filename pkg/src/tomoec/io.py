"""JSON file formats.

Grid::

    {"m": 4, "n": 4, "values": [[...m ints...], ...n rows...]}

Line sums (one dense block per direction, zeros included)::

    {"m": .., "n": .., "directions": [[a, b], ...],
     "sums": [{"t_min": .., "values": [...]}, ...]}

Error spec::

    {"errors": [{"direction": h, "t": t, "delta": x}, ...]}

Integers outside the 53-bit safe range are written as decimal strings;
on input both forms are accepted.  Output is canonical: sorted keys, no
insignificant whitespace, one trailing newline.
"""
from __future__ import annotations

import json
import re
from typing import Any

from .core import Direction, DirectionSet, Grid, LineSumTable, line_index_range
from .exceptions import InvalidErrorSpec, InvalidGrid, InvalidLineSums
from .simulate import ErrorEntry, ErrorSpec

SAFE_INT = 2 ** 53 - 1
_DECIMAL = re.compile(r"-?\d+\Z")


def parse_int(value, what: str = "value", error=InvalidLineSums) -> int:
    if isinstance(value, bool):
        raise error(f"{what}: expected an integer, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str) and _DECIMAL.match(value.strip()):
        return int(value)
    raise error(f"{what}: expected an integer, got {value!r}")


def _encode(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > SAFE_INT else obj
    if isinstance(obj, dict):
        return {k: _encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_encode(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(_encode(obj), sort_keys=True, separators=(",", ":")) + "\n"


def _require(data, keys, error):
    if not isinstance(data, dict):
        raise error(f"expected a JSON object, got {type(data).__name__}")
    missing = [k for k in keys if k not in data]
    if missing:
        raise error(f"missing keys: {', '.join(missing)}")


def directions_from_list(pairs, error=InvalidLineSums) -> DirectionSet:
    if not isinstance(pairs, list) or not pairs:
        raise error("directions must be a non-empty list of [a, b] pairs")
    dirs = []
    for pair in pairs:
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise error(f"direction {pair!r} is not an [a, b] pair")
        dirs.append(Direction(parse_int(pair[0], "a", error), parse_int(pair[1], "b", error)))
    return DirectionSet(tuple(dirs))


def grid_to_dict(grid: Grid) -> dict:
    return {"m": grid.m, "n": grid.n, "values": [list(r) for r in grid.values]}


def grid_from_dict(data) -> Grid:
    _require(data, ("m", "n", "values"), InvalidGrid)
    m, n = parse_int(data["m"], "m", InvalidGrid), parse_int(data["n"], "n", InvalidGrid)
    values = data["values"]
    if not isinstance(values, list) or len(values) != n or any(
            not isinstance(r, list) or len(r) != m for r in values):
        raise InvalidGrid(f"values must be {n} rows of {m} integers")
    return Grid(m, n, [[parse_int(v, "grid value", InvalidGrid) for v in r] for r in values])


def table_to_dict(table: LineSumTable) -> dict:
    table = table.canonical()
    return {
        "m": table.m,
        "n": table.n,
        "directions": table.directions.as_pairs(),
        "sums": [{"t_min": table.t_min(p), "values": list(table.rows[p])} for p in range(table.d)],
    }


def table_from_dict(data) -> LineSumTable:
    _require(data, ("m", "n", "directions", "sums"), InvalidLineSums)
    m, n = parse_int(data["m"], "m"), parse_int(data["n"], "n")
    directions = directions_from_list(data["directions"])
    blocks = data["sums"]
    if not isinstance(blocks, list) or len(blocks) != len(directions):
        raise InvalidLineSums(f"expected {len(directions)} blocks of sums")
    rows = []
    for direction, block in zip(directions, blocks):
        _require(block, ("t_min", "values"), InvalidLineSums)
        lo, hi = line_index_range(direction, m, n)
        if parse_int(block["t_min"], "t_min") != lo:
            raise InvalidLineSums(f"direction {direction.as_tuple()}: t_min must be {lo}")
        if not isinstance(block["values"], list):
            raise InvalidLineSums("values must be a list")
        rows.append(tuple(parse_int(v, "line sum") for v in block["values"]))
    return LineSumTable(m, n, directions, tuple(rows))


def spec_to_dict(spec: ErrorSpec) -> dict:
    return {"errors": [e._asdict() for e in spec.entries]}


def spec_from_dict(data) -> ErrorSpec:
    _require(data, ("errors",), InvalidErrorSpec)
    entries = []
    for item in data["errors"]:
        _require(item, ("direction", "t", "delta"), InvalidErrorSpec)
        entries.append(ErrorEntry(*(parse_int(item[k], k, InvalidErrorSpec) for k in ("direction", "t", "delta"))))
    return ErrorSpec(tuple(entries))


def load_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)
