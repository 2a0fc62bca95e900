import csv
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curveflow import eoc, eoc_study, example1, example2, run_with_errors
from curveflow.eoc import EocRow, EocTable, format_table, write_csv
from curveflow.errors import InvalidArgumentError


def test_no_steps_gives_zero_errors():
    acc = run_with_errors(example1(), 8, 0, 0.4, 1.0)
    assert acc.as_tuple() == (0.0, 0.0, 0.0, 0.0)


def test_errors_vanish_at_the_initial_level():
    # a single step: only the t_1 level contributes
    one = run_with_errors(example1(), 8, 1, 0.01, 1.0)
    assert all(e > 0 for e in one.as_tuple())
    skipped = run_with_errors(example1(), 8, 1, 0.01, 1.0, skip_final=True)
    assert skipped.as_tuple() == (0.0, 0.0, 0.0, 0.0)


def test_scenario_without_exact_solution_rejected():
    with pytest.raises(InvalidArgumentError):
        run_with_errors(example2(), 8, 4, 0.1, 1.0)


def test_sup_accumulators_are_monotone():
    errs = [run_with_errors(example1(), 10, n, 0.01 * n, 1.0) for n in range(1, 6)]
    for a, b in zip(errs, errs[1:]):
        assert b.er1 >= a.er1 and b.er3 >= a.er3
        assert b.er2 >= a.er2 and b.er4 >= a.er4


def test_eoc_of_ratio_sixteen():
    assert eoc([16.0, 1.0], [0.2, 0.1]) == pytest.approx([4.0], abs=1e-15)


@given(st.floats(0.5, 6.0), st.floats(1e-6, 1e3), st.integers(2, 6))
def test_eoc_recovers_power_law(p, c, n):
    hs = [0.5**k for k in range(1, n + 1)]
    errs = [c * h**p for h in hs]
    assert np.allclose(eoc(errs, hs), p, rtol=0, atol=1e-10)


def test_study_needs_two_levels():
    with pytest.raises(InvalidArgumentError):
        eoc_study(example1(), [(10, 20)], 0.4, 1.0)
    with pytest.raises(InvalidArgumentError):
        eoc_study(example1(), [(10, 20), (10, 40)], 0.4, 1.0)


def test_small_study_shape():
    table = eoc_study("example1", [(8, 16), (16, 64)], 0.4, 1.0, caption="tiny")
    assert [r.J for r in table.rows] == [8, 16]
    assert table.rows[0].orders is None
    assert len(table.rows[1].orders) == 4
    assert all(o > 1.0 for o in table.rows[1].orders)


def test_parallel_study_matches_serial():
    levels = [(8, 16), (16, 64)]
    a = eoc_study("example1", levels, 0.4, 1.0)
    b = eoc_study("example1", levels, 0.4, 1.0, jobs=2)
    assert [r.errors for r in a.rows] == [r.errors for r in b.rows]


def test_table_text_and_csv(tmp_path):
    rows = [EocRow(10, 80, (1e-3, 2e-3, 3e-3, 4e-3)),
            EocRow(20, 320, (1e-3 / 16, 2e-3 / 16, 3e-3 / 8, 4e-3 / 4), (4.0, 4.0, 3.0, 2.0))]
    table = EocTable(rows, 0.1, 0.8, caption="alpha = 0.1, dt = 0.4 h", scenario="example1")
    text = format_table(table)
    assert "alpha = 0.1, dt = 0.4 h" in text
    assert "4.00" in text and "3.00" in text
    path = tmp_path / "t.csv"
    write_csv(table, path)
    lines = path.read_text().splitlines()
    assert lines[1] == "# alpha = 0.1, dt = 0.4 h"
    body = list(csv.reader(l for l in lines if not l.startswith("#")))
    assert body[0][:4] == ["J", "N", "Er1", "eoc1"]
    assert float(body[2][2]) == 1e-3 / 16
    assert body[1][3] == "" and float(body[2][3]) == 4.0
    assert math.isclose(float(body[2][8]), 1e-3)
