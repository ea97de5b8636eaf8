"""``tomoec`` command line interface.

Exit codes: 0 success, 1 assumption violation / failed check, 2 input error.
"""
from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .core import DirectionSet
from .detect import default_budgets
from .estimator import correct_line_sums
from .exceptions import AssumptionViolated, InvalidErrorSpec, InvalidParameters, TomoError
from .io import (directions_from_list, dumps, grid_from_dict, load_json, spec_from_dict, spec_to_dict,
                 table_from_dict, table_to_dict)
from .relations import check_relations
from .simulate import ErrorSpec, inject, project, random_error_spec, random_instance

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _load(path):
    try:
        return json.load(sys.stdin) if path == "-" else load_json(path)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _write(path, text):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _parse_directions(value):
    """``"1,0;0,1;1,-1"`` or a path to a JSON list of pairs."""
    if os.path.exists(value):
        data = _load(value)
        if isinstance(data, dict):
            data = data.get("directions")
        return directions_from_list(data)
    try:
        pairs = [[int(x) for x in item.split(",")] for item in value.replace(" ", "").split(";") if item]
    except ValueError:
        pairs = None
    if not pairs or any(len(pair) != 2 for pair in pairs):
        raise InputError(f"cannot parse directions {value!r}; expected 'a,b;a,b;...'")
    return DirectionSet.from_pairs(pairs)


def _budgets(args, d):
    F, G = default_budgets(d, args.max_errors, args.max_dirs)
    if G > F:
        raise InvalidParameters(f"--max-dirs {G} exceeds --max-errors {F}")
    if F > 0 and 2 * F >= d and not getattr(args, "unsafe", False):
        raise InvalidParameters(f"F={F} is not below d/2 for d={d}; pass --unsafe to try anyway")
    return F, G


def cmd_project(args):
    data = _load(args.grid)
    grid = grid_from_dict(data)
    if args.directions:
        directions = _parse_directions(args.directions)
    elif isinstance(data, dict) and "directions" in data:
        directions = directions_from_list(data["directions"])
    else:
        raise InputError("no directions: pass --directions or include them in the grid file")
    _write(args.output, dumps(table_to_dict(project(grid, directions))))
    return EXIT_OK


def cmd_corrupt(args):
    table = table_from_dict(_load(args.sums))
    if args.spec:
        spec = spec_from_dict(_load(args.spec))
        if args.max_errors is not None or args.max_dirs is not None:
            F, G = _budgets(args, table.d)
            if not spec.within(F, G):
                raise InvalidErrorSpec(f"spec has {len(spec)} errors in {len(spec.directions)} "
                                       f"directions, over the budgets F={F}, G={G}")
    elif args.seed is not None:
        F, G = _budgets(args, table.d)
        ranges = [table.t_range(p) for p in range(table.d)]
        spec = random_error_spec(random.Random(args.seed), ranges, F, G)
    else:
        spec = ErrorSpec()
    corrupted = inject(table, spec)
    _write(args.output, dumps(table_to_dict(corrupted)))
    if args.spec_out:
        _write(args.spec_out, dumps(spec_to_dict(spec)))
    return EXIT_OK


def _summary(report):
    lines = [f"status: {report.status.value}" + (f" ({report.reason})" if report.reason else "")]
    if not report.guaranteed:
        lines.append("warning: budgets are not below d/2; the result is not guaranteed to be unique")
    for h, level in report.flagged_directions:
        lines.append(f"flagged direction {h} {tuple(report.directions[h])} at level {level}")
    for c in report.corrections:
        lines.append(f"direction {c.direction} line {c.t}: {c.measured} -> {c.corrected}")
    lines.append(f"total errors corrected: {report.total_errors_found}")
    return "\n".join(lines) + "\n"


def cmd_correct(args):
    table = table_from_dict(_load(args.sums))
    F, G = _budgets(args, table.d)
    corrected, report = correct_line_sums(table, F, G, unsafe=args.unsafe)
    trace = args.trace or os.environ.get("TOMOEC_TRACE") == "1"
    if args.report:
        _write(args.report, dumps(report.to_dict(trace=trace)))
    sys.stderr.write(_summary(report))
    if not report.ok:
        return EXIT_VIOLATION
    _write(args.output, dumps(table_to_dict(corrected)))
    return EXIT_OK


def cmd_verify(args):
    table = table_from_dict(_load(args.sums))
    k_max = args.kmax if args.kmax is not None else table.d
    if k_max < 2:
        raise InvalidParameters("--kmax must be at least 2")
    violations = check_relations(table, k_max) if table.d >= 2 else []
    result = {
        "consistent": not violations,
        "kmax": k_max,
        "violations": [{"window": list(w), "residual": r} for w, r in violations],
    }
    if args.json:
        _write(args.output, dumps(result))
    else:
        lines = [f"checked relations up to k={k_max}: {'pass' if not violations else 'FAIL'}"]
        lines += [f"  window {list(w)} residual {r}" for w, r in violations]
        _write(args.output, "\n".join(lines) + "\n")
    return EXIT_OK if not violations else EXIT_VIOLATION


def cmd_roundtrip(args):
    """project -> corrupt -> correct and compare with the exact sums."""
    if args.grid:
        data = _load(args.grid)
        grid = grid_from_dict(data)
        if args.directions:
            directions = _parse_directions(args.directions)
        elif isinstance(data, dict) and "directions" in data:
            directions = directions_from_list(data["directions"])
        else:
            raise InputError("no directions: pass --directions or include them in the grid file")
        exact = project(grid, directions)
        F, G = _budgets(args, exact.d)
        ranges = [exact.t_range(p) for p in range(exact.d)]
        spec = random_error_spec(random.Random(args.seed), ranges, F, G)
    else:
        d = args.ndirs
        F, G = _budgets(args, d)
        grid, directions, spec = random_instance(args.seed, args.m, args.n, d, F, G)
        exact = project(grid, directions)
    measured = inject(exact, spec)
    corrected, report = correct_line_sums(measured, F, G, unsafe=args.unsafe)
    recovered = report.ok and dumps(table_to_dict(corrected)) == dumps(table_to_dict(exact))
    result = {
        "seed": args.seed, "d": exact.d, "F": F, "G": G,
        "injected": spec_to_dict(spec)["errors"],
        "status": report.status.value,
        "recovered": recovered,
        "corrections": report.to_dict()["corrections"],
    }
    _write(args.output, dumps(result))
    return EXIT_OK if recovered else EXIT_VIOLATION


def build_parser():
    parser = argparse.ArgumentParser(prog="tomoec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def budgets(p):
        p.add_argument("--max-errors", "-F", type=int, default=None, help="F: total wrong line sums")
        p.add_argument("--max-dirs", "-G", type=int, default=None, help="G: directions with wrong sums")
        p.add_argument("--unsafe", action="store_true", help="allow F >= d/2")

    p = sub.add_parser("project", help="grid file -> line-sum file")
    p.add_argument("grid")
    p.add_argument("--directions", "-d", help="'a,b;a,b;...' or a JSON file with the pairs")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("corrupt", help="inject errors into a line-sum file")
    p.add_argument("sums")
    p.add_argument("--spec", help="error spec JSON")
    p.add_argument("--seed", type=int, help="draw random errors within the budgets")
    p.add_argument("--spec-out", help="write the injected spec here")
    budgets(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_corrupt)

    p = sub.add_parser("correct", help="detect and correct wrong line sums")
    p.add_argument("sums")
    budgets(p)
    p.add_argument("--report", help="write the JSON correction report here")
    p.add_argument("--trace", action="store_true", help="include the detection trace in the report")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_correct)

    p = sub.add_parser("verify", help="check the line sum relations")
    p.add_argument("sums")
    p.add_argument("--kmax", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("roundtrip", help="project, corrupt and correct; check recovery")
    p.add_argument("grid", nargs="?")
    p.add_argument("--directions", "-d")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--ndirs", type=int, default=7)
    budgets(p)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_roundtrip)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AssumptionViolated as exc:
        sys.stderr.write(f"tomoec {args.command}: {exc}\n")
        return EXIT_VIOLATION
    except (InputError, TomoError) as exc:
        sys.stderr.write(f"tomoec {args.command}: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
