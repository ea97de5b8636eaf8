import doctest

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

import tomoec.estimator
from conftest import WORKED_DIRECTIONS, WORKED_ERRORS
from tomoec import (AssumptionViolated, ErrorSpec, Grid, InvalidGrid, InvalidLineSums, InvalidParameters,
                    LineSumCorrector, LineSumProjector, Status, correct_line_sums, inject, project)
from tomoec.io import table_to_dict


def test_module_doctest():
    assert doctest.testmod(tomoec.estimator).failed == 0


def test_params_roundtrip():
    est = LineSumCorrector(max_errors=3, max_dirs=2)
    assert est.get_params() == {"max_errors": 3, "max_dirs": 2, "unsafe": False}
    assert clone(est).set_params(unsafe=True).unsafe is True
    assert LineSumProjector().get_params() == {"directions": ((1, 0), (0, 1))}


def test_projector_accepts_arrays():
    proj = LineSumProjector([(1, 0), (0, 1)]).fit()
    table = proj.transform(np.array([[1, 2], [3, 4]]))
    assert table.sums(0) == {-1: 7, 0: 3}
    assert proj.transform([[1.0, 2.0], [3.0, 4.0]]) == table
    assert proj.transform({"m": 2, "n": 2, "values": [[1, 2], [3, 4]]}) == table


@pytest.mark.parametrize("bad", [[[1.5, 2]], [1, 2, 3], [[True, 1]], []])
def test_projector_rejects_bad_grids(bad):
    with pytest.raises(InvalidGrid):
        LineSumProjector().fit_transform(bad)


def test_projector_unfitted():
    with pytest.raises(NotFittedError):
        LineSumProjector().transform([[1]])


def test_corrector_on_worked_example(worked_exact, worked_measured):
    est = LineSumCorrector(max_errors=7, max_dirs=4).fit(worked_measured)
    assert est.report_.status is Status.SUCCESS
    assert est.flagged_directions_ == [(5, 1), (2, 2), (7, 3)]
    assert sorted(est.errors_.entries) == sorted(WORKED_ERRORS.entries)
    assert est.transform(worked_measured) == worked_exact
    assert est.corrected_ == worked_exact


def test_corrector_accepts_dicts(worked_exact, worked_measured):
    out = LineSumCorrector(7, 4).fit_transform(table_to_dict(worked_measured))
    assert out == worked_exact


def test_transform_needs_matching_geometry(worked_measured):
    est = LineSumCorrector(7, 4).fit(worked_measured)
    other = project(Grid.zeros(15, 16), WORKED_DIRECTIONS)
    with pytest.raises(InvalidLineSums):
        est.transform(other)
    with pytest.raises(InvalidLineSums):
        est.transform([[1, 2]])


def test_transform_refuses_failed_fit(worked_measured):
    est = LineSumCorrector(2, 1).fit(worked_measured)
    assert est.report_.status is Status.ASSUMPTION_VIOLATED
    with pytest.raises(AssumptionViolated):
        est.transform(worked_measured)


def test_clean_input(worked_exact):
    corrected, report = correct_line_sums(worked_exact)
    assert report.status is Status.NO_ERRORS and report.corrections == []
    assert corrected == worked_exact


def test_budgets_validated(worked_exact):
    with pytest.raises(InvalidParameters):
        correct_line_sums(worked_exact, 8, 4)
    with pytest.raises(InvalidParameters):
        correct_line_sums(worked_exact, 3, 4)


def test_report_in_input_order(worked_measured):
    _, report = correct_line_sums(worked_measured, 7, 4)
    assert [c.direction for c in report.corrections] == [5, 5, 2, 2, 7, 7, 7]
    assert {(c.t, c.measured, c.corrected) for c in report.corrections if c.direction == 7} == {
        (-7, 2, 0), (-5, -4, 0), (-3, 2, 0)}
    assert report.directions[7] == (1, -2)
    assert report.guaranteed


def test_too_many_errors_for_budget():
    table = project(Grid.zeros(6, 6), [(1, 0), (0, 1), (1, 1), (1, -1), (2, 1)])
    measured = inject(table, ErrorSpec(((2, 0, 1), (2, 1, 3), (3, 0, 1))))
    corrected, report = correct_line_sums(measured, 2, 2)
    assert report.status is Status.ASSUMPTION_VIOLATED
    assert report.reason
    assert corrected != table
