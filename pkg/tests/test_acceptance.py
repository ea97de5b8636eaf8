"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also repeated in the terminal summary.
"""
import math
import random
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES, WORKED_ERRORS, leibniz_det
from tomoec import (AssumptionViolated, ErrorSpec, Grid, Status, check_relations, correct_line_sums,
                    correct_one_direction_known_k, detect_all, inject, project, random_instance)
from tomoec.exact import bareiss_determinant
from tomoec.prony import power_sums
from tomoec.simulate import random_error_spec

pytestmark = pytest.mark.slow


def verdict(number, title, ok, detail=""):
    line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}" + (f" ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def nonzero(values):
    return [[h, c] for h, c in values if c]


def test_1_worked_detection_trace(worked_measured):
    start = time.perf_counter()
    state = detect_all(worked_measured, 7, 4)
    elapsed = time.perf_counter() - start
    screen, first, second, third, stop = state.trace
    checks = [
        screen["flagged_vectors"] == [[2, -1]] and screen["totals"][5] == -1,
        first["window_vectors"] == [[0, 1], [1, 1]],
        [c for _, c in first["c"]] == [12, 24, 12, 12] and not first["accepted"],
        second["window_vectors"] == [[1, -1], [2, 1]] and second["accepted"],
        nonzero(second["c"]) == [[2, 36]],
        third["k"] == 3 and nonzero(third["c"]) == [[7, -96]],
        stop["k"] == 4 and stop["reason"] == "k > F - rho",
        state.flagged == [(5, 1), (2, 2), (7, 3)],
        elapsed < 1.0,
    ]
    verdict(1, "worked detection trace", all(checks), f"{sum(checks)}/{len(checks)} checks, {elapsed:.3f}s")


def correction_entries(table):
    _, report = correct_line_sums(table, 7, 4)
    return report, {e["direction"]: e for e in report.trace if e["stage"] == "correct"}


def test_2_worked_correction_two_errors(worked_measured):
    _, entries = correction_entries(worked_measured)
    e = entries[2]
    checks = [
        e["c"] == ["0", "12", "48", "192"],
        e["s"] == 2,
        e["B"] == ["4", "0"],
        e["nodes"] == [0, 4],
        [[Fraction(w) for w in row] for row in e["inverse"]] == [[1, Fraction(-1, 4)], [0, Fraction(1, 4)]],
        [(t, -x) for t, x in zip(e["nodes"], e["magnitudes"])] == [(0, 3), (4, -3)],
    ]
    verdict(2, "worked correction of (1,1)", all(checks), f"{sum(checks)}/{len(checks)} checks")


def test_3_worked_corrections_match_injected(worked_exact, worked_measured):
    report, entries = correction_entries(worked_measured)
    checks = []
    for h in (5, 7):
        injected = {e.t: e.delta for e in WORKED_ERRORS.entries if e.direction == h}
        entry = entries[h]
        recovered = dict(zip(entry["nodes"], entry["magnitudes"]))
        oracle = power_sums(list(injected), list(injected.values()), len(entry["c"]))
        checks.append(recovered == injected)
        checks.append([Fraction(c) for c in entry["c"]] == oracle)
    corrected, _ = correct_line_sums(worked_measured, 7, 4)
    checks.append(corrected == worked_exact and report.status is Status.SUCCESS)
    verdict(3, "worked corrections of (2,-1) and (1,-2) equal the injected errors", all(checks),
            f"{sum(checks)}/{len(checks)} checks")


def test_4_random_roundtrip():
    start = time.perf_counter()
    failures = []
    hidden_cases = 0
    for seed in range(500):
        rng = random.Random(90_000 + seed)
        d = rng.randint(2, 9)
        m, n = rng.randint(4, 12), rng.randint(4, 12)
        F = rng.randint(1, (d - 1) // 2) if d >= 3 else 0
        G = rng.randint(1, F) if F else 0
        grid, directions, spec = random_instance(seed, m, n, d, F, G, adversarial=0.5)
        exact = project(grid, directions)
        corrected, report = correct_line_sums(inject(exact, spec), F, G)
        # wrong sums that cancel in the direction total need level k >= 2 to be found
        if any(sum(e.delta for e in spec.entries if e.direction == h) == 0 for h in spec.directions):
            hidden_cases += 1
        if not (report.ok and corrected == exact):
            failures.append(seed)
    elapsed = time.perf_counter() - start
    verdict(4, "500 random roundtrips recover the exact sums", not failures and elapsed < 60,
            f"{500 - len(failures)}/500, {hidden_cases} with errors invisible to the totals, {elapsed:.1f}s")


CLEAN = [(1, 0), (0, 1), (1, -1), (2, 1), (1, 2), (3, 1), (1, 3), (2, -1), (3, -1)]


def known_k_instance(rng, k, count):
    m, n = rng.randint(4, 10), rng.randint(4, 10)
    directions = CLEAN[:k] + [(1, 1)]
    grid = Grid(m, n, [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)])
    exact = project(grid, directions)
    lo, hi = exact.t_range(k)
    lines = rng.sample(range(lo, hi + 1), min(count, hi - lo + 1))
    spec = ErrorSpec(tuple((k, t, rng.choice([-1, 1]) * rng.randint(1, 9)) for t in lines))
    return exact, inject(exact, spec), lines


def repaired(table, target, fixes):
    return table.replace_sums(target, dict(fixes)) if fixes else table


def test_5_known_k_directions():
    rng = random.Random(5)
    unknown_ok = known_ok = 0
    outcomes = {"recovered": 0, "violated": 0, "wrong": 0}
    for _ in range(200):
        k = rng.randint(1, 8)
        exact, measured, _ = known_k_instance(rng, k, rng.randint(0, (k - 1) // 2))
        fixes = correct_one_direction_known_k(measured, k, list(range(k)))
        unknown_ok += repaired(measured, k, fixes) == exact
    for _ in range(200):
        k = rng.randint(1, 8)
        exact, measured, lines = known_k_instance(rng, k, rng.randint(0, k))
        lo, hi = exact.t_range(k)
        spare = [t for t in range(lo, hi + 1) if t not in lines]
        known = lines + rng.sample(spare, min(len(spare), rng.randint(0, k - len(lines))))
        fixes = correct_one_direction_known_k(measured, k, list(range(k)), known_positions=known)
        known_ok += repaired(measured, k, fixes) == exact
    for _ in range(200):
        k = rng.randint(2, 8)
        exact, measured, _ = known_k_instance(rng, k, rng.randint(math.ceil(k / 2), k))
        try:
            fixes = correct_one_direction_known_k(measured, k, list(range(k)))
        except AssumptionViolated:
            outcomes["violated"] += 1
            continue
        outcomes["recovered" if repaired(measured, k, fixes) == exact else "wrong"] += 1
    ok = unknown_ok == 200 and known_ok == 200 and outcomes["wrong"] == 0
    verdict(5, "k clean directions repair one more direction", ok,
            f"unknown {unknown_ok}/200, known {known_ok}/200, over capacity {outcomes}")


def test_6_determinant_identities():
    rng = random.Random(6)
    hankel_ok = 0
    for _ in range(1000):
        r = rng.randint(1, 5)
        nodes = rng.sample(range(-12, 13), r)
        M = [[sum(t ** (i + j) for t in nodes) for j in range(r)] for i in range(r)]
        expected = math.prod((nodes[j] - nodes[i]) ** 2 for i in range(r) for j in range(i + 1, r))
        hankel_ok += leibniz_det(M) == expected == bareiss_determinant(M)
    cross_ok = 0
    for _ in range(500):
        k = rng.randint(1, 4)
        while True:
            a = [rng.randint(-7, 7) for _ in range(2 * k)]
            b = [rng.randint(-7, 7) for _ in range(2 * k)]
            W = [[a[u] * b[v] - a[v] * b[u] for v in range(2 * k)] for u in range(2 * k)]
            if all(W[u][v] for u in range(2 * k) for v in range(2 * k) if u != v):
                break
        M = [[Fraction(math.prod(W[i][k + H] for i in range(k)), W[h][k + H]) for H in range(k)] for h in range(k)]
        expected = ((-1) ** (k * (k - 1) // 2)
                    * math.prod(W[x][y] for x in range(k) for y in range(x + 1, k))
                    * math.prod(W[k + x][k + y] for x in range(k) for y in range(x + 1, k)))
        cross_ok += leibniz_det(M) == expected == bareiss_determinant(M)
    verdict(6, "determinant identities", hankel_ok == 1000 and cross_ok == 500,
            f"power-sum Hankel {hankel_ok}/1000, cross-product {cross_ok}/500")


EXAMPLE = [[2, 6, 5, 4], [3, None, 2, 0], [5, 1, 4, 2], [6, 3, 1, 4]]
SQUARE = [(1, 0), (0, 1), (1, 1), (1, -1)]


def example_sums(value):
    rows = [[value if v is None else v for v in row] for row in EXAMPLE]
    return project(Grid.from_rows(rows), SQUARE)


def ambiguous_measurement():
    # cell (1, 1) = 2 explains the row and column; = 3 explains both diagonals
    as_two = inject(example_sums(2), ErrorSpec(((2, 0, 1), (3, -2, 1))))
    as_three = inject(example_sums(3), ErrorSpec(((0, -1, -1), (1, 1, -1))))
    assert as_two == as_three
    return as_two


def test_7_half_d_errors_never_silently_wrong():
    measured = ambiguous_measurement()
    _, safe = correct_line_sums(measured)
    corrected, report = correct_line_sums(measured, 2, 2, unsafe=True)
    certified = check_relations(corrected, 4) == [] and corrected in (example_sums(2), example_sums(3))
    ok = (safe.status is Status.ASSUMPTION_VIOLATED
          and (report.status is Status.ASSUMPTION_VIOLATED or (certified and not report.guaranteed)))
    verdict(7, "d/2 errors: no uncertified Success", ok,
            f"default budgets -> {safe.status.value}; unsafe -> {report.status.value}, "
            f"guaranteed={report.guaranteed}")


@pytest.mark.xfail(strict=True, reason="two grids explain the data equally well; d/2 errors are not correctable")
def test_7_half_d_errors_recover_either_truth():
    measured = ambiguous_measurement()
    corrected, _ = correct_line_sums(measured, 2, 2, unsafe=True)
    assert corrected == example_sums(2) and corrected == example_sums(3)


DIRECTIONS_9 = [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1), (1, 2), (2, -1), (1, -2), (3, 1)]


def pipeline_seconds(m, n, seed):
    rng = random.Random(seed)
    grid = Grid(m, n, [[rng.randint(-9, 9) for _ in range(m)] for _ in range(n)])
    start = time.perf_counter()
    exact = project(grid, DIRECTIONS_9)
    spec = random_error_spec(rng, [exact.t_range(p) for p in range(9)], 4, 4, adversarial=0.5)
    corrected, report = correct_line_sums(inject(exact, spec), 4, 4)
    elapsed = time.perf_counter() - start
    assert report.ok and corrected == exact
    return elapsed


def test_8_runtime_scales_with_grid_size():
    def total(m, n):
        return sum(min(pipeline_seconds(m, n, seed) for _ in range(3)) for seed in range(5))

    ratios = [total(m, 2 * n) / total(m, n) for m, n in ((32, 32), (64, 64))]
    verdict(8, "doubling m*n at most ~doubles the pipeline runtime", max(ratios) <= 3,
            "ratios " + ", ".join(f"{r:.2f}" for r in ratios))
