import pytest

from qbessel import run_suite, summarize
from qbessel.verify import SUITES, IdentityReport, SuiteConfig


def test_suite_names():
    assert SUITES == ("diffeq", "wronskian", "ladder", "recurrence", "coeffs", "integral", "limits")
    with pytest.raises(ValueError):
        run_suite("nonsense")


def test_rows_are_complete():
    rows = run_suite("wronskian", q_values=[0.7])
    assert rows
    for r in rows:
        assert isinstance(r, IdentityReport)
        assert r.identity.startswith("wronskian:")
        assert {"kind", "nu", "z", "q"} <= set(r.params)
        assert r.passed == (r.rel_residual < r.tol)
        d = r.as_dict()
        assert set(d) == {"identity", "params", "abs_residual", "rel_residual", "tol", "passed", "note"}


def test_order_is_fixed():
    a = [r.as_dict() for r in run_suite("ladder", q_values=[0.6])]
    b = [r.as_dict() for r in run_suite("ladder", q_values=[0.6])]
    assert a == b


def test_tolerance_scale_can_fail_a_suite():
    rows = run_suite("recurrence", q_values=[0.8], tol_scale=1e-10)
    assert not all(r.passed for r in rows)


def test_errors_become_failed_rows():
    from qbessel.core import NotConverged
    cfg = SuiteConfig()

    def boom():
        raise NotConverged("no luck")

    cfg.add("demo:boom", {}, 1.0, boom)
    (row,) = cfg.rows
    assert not row.passed and "no luck" in row.note


def test_summary_counts():
    rows = [IdentityReport("x", {}, 0.0, 1e-12, 1e-9, True),
            IdentityReport("x", {}, 0.0, 1e-3, 1e-9, False),
            IdentityReport("y", {}, 0.0, 0.0, 1e-9, True)]
    s = summarize(rows)
    assert s == [dict(identity="x", checks=2, failed=1, worst_rel=1e-3),
                 dict(identity="y", checks=1, failed=0, worst_rel=0.0)]
