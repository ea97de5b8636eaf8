"""Estimator-style entry points.

>>> from tomoec import Grid, LineSumProjector, LineSumCorrector
>>> from tomoec.simulate import ErrorSpec, inject
>>> grid = Grid.from_rows([[1, 2, 3], [4, 5, 6], [7, 8, 9]])
>>> exact = LineSumProjector([(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)]).fit_transform(grid)
>>> measured = inject(exact, ErrorSpec(((2, 0, 4),)))
>>> LineSumCorrector().fit_transform(measured) == exact
True
"""
from __future__ import annotations

import logging

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .core import Correction, CorrectionReport, LineSumTable, Status
from .detect import check_budgets, default_budgets, detect_all
from .exceptions import AssumptionViolated
from .prony import correct_direction
from .relations import check_relations
from .simulate import ErrorEntry, ErrorSpec, inject, project
from .validation import check_directions, check_grid, check_line_sums, check_same_geometry

logger = logging.getLogger(__name__)


def correct_line_sums(table: LineSumTable, max_errors: int | None = None, max_dirs: int | None = None,
                      unsafe: bool = False) -> tuple[LineSumTable, CorrectionReport]:
    """Detect and repair wrong line sums.

    Parameters
    ----------
    table : LineSumTable
        Measured line sums.
    max_errors, max_dirs : int, optional
        Budgets ``F`` (wrong sums in total) and ``G`` (directions holding
        them).  Default ``F = floor((d-1)/2)`` and ``G = F``.
    unsafe : bool
        Allow ``F >= d/2``.  Results are then marked ``guaranteed=False``.

    Returns
    -------
    corrected : LineSumTable
        In input direction order.  On an assumption violation this is the
        partially corrected table.
    report : CorrectionReport
    """
    d = table.d
    F, G = default_budgets(d, max_errors, max_dirs)
    check_budgets(d, F, G, unsafe)
    report = CorrectionReport(
        directions=[direction.as_tuple() for direction in table.canonical().directions],
        guaranteed=not (F > 0 and 2 * F >= d),
    )
    corrections: list[Correction] = []
    work = table
    try:
        state = detect_all(table, F, G, unsafe=unsafe)
        report.flagged_directions = state.flagged
        report.trace.extend(state.trace)
        work, rho = state.table, state.rho
        for target in range(state.g):
            S = F - rho + state.rho_per[target]
            clean = list(range(state.g, min(d, state.g + 2 * S)))
            fixed = correct_direction(work, target, clean, S, trace=report.trace)
            original = work.original_index(target)
            corrections.extend(Correction(original, t, work.get(target, t), v) for t, v in fixed)
            work = work.replace_sums(target, dict(fixed))
            rho += len(fixed) - state.rho_per[target]
            if rho > F:
                raise AssumptionViolated(f"{rho} wrong line sums found, more than F={F}")
        if d >= 2:
            violations = check_relations(work, d)
            if violations:
                raise AssumptionViolated(
                    f"{len(violations)} line sum relations still fail after correction",
                    violations=violations[:10])
    except AssumptionViolated as exc:
        logger.info("assumption violated: %s", exc.reason)
        if not report.trace and "trace" in exc.diagnostics:
            report.trace.extend(exc.diagnostics["trace"])
        report.status = Status.ASSUMPTION_VIOLATED
        report.reason = exc.reason
        report.corrections = corrections
        return work.canonical(), report
    report.corrections = corrections
    report.status = Status.SUCCESS if corrections else Status.NO_ERRORS
    return work.canonical(), report


class LineSumProjector(TransformerMixin, BaseEstimator):
    """Map integer grids to their exact line sums in a fixed set of directions.

    Parameters
    ----------
    directions : sequence of (a, b) pairs
        Normalized on fit; duplicates after normalization are rejected.
    """

    def __init__(self, directions=((1, 0), (0, 1))):
        self.directions = directions

    def fit(self, X=None, y=None):
        self.directions_ = check_directions(self.directions)
        if X is not None:
            check_grid(X)
        return self

    def transform(self, X) -> LineSumTable:
        check_is_fitted(self, "directions_")
        return project(check_grid(X), self.directions_)


class LineSumCorrector(TransformerMixin, BaseEstimator):
    """Learn the wrong line sums of a measured table and remove them.

    ``fit`` runs detection and correction and stores the recovered errors
    in ``errors_`` (an :class:`ErrorSpec` of ``measured - exact``).
    ``transform`` subtracts those errors from a table with the same
    geometry, so ``fit_transform(measured)`` returns the corrected table.

    Parameters
    ----------
    max_errors : int, optional
        Budget ``F`` on the total number of wrong line sums.
    max_dirs : int, optional
        Budget ``G`` on the number of directions containing them.
    unsafe : bool, default=False
        Permit ``F >= d/2`` (no uniqueness guarantee).

    Attributes
    ----------
    report_ : CorrectionReport
    errors_ : ErrorSpec
    flagged_directions_ : list of (direction index, level)
    """

    def __init__(self, max_errors=None, max_dirs=None, unsafe=False):
        self.max_errors = max_errors
        self.max_dirs = max_dirs
        self.unsafe = unsafe

    def fit(self, X, y=None):
        table = check_line_sums(X)
        corrected, report = correct_line_sums(table, self.max_errors, self.max_dirs, self.unsafe)
        self.report_ = report
        self.corrected_ = corrected
        self.errors_ = ErrorSpec(tuple(
            ErrorEntry(c.direction, c.t, c.measured - c.corrected) for c in report.corrections))
        self.flagged_directions_ = list(report.flagged_directions)
        canonical = table.canonical()
        self.geometry_ = (canonical.m, canonical.n, canonical.directions)
        return self

    def transform(self, X) -> LineSumTable:
        check_is_fitted(self, "errors_")
        if not self.report_.ok:
            raise AssumptionViolated(self.report_.reason)
        table = check_line_sums(X)
        check_same_geometry(table, *self.geometry_)
        return inject(table.canonical(), self.errors_.negated())
