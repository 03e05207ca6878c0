import pytest

from lucascert import (
    UnknownCase,
    batch_report,
    case_26,
    case_210,
    case_2f1,
    case_apery_lucas,
    case_ids,
    results_to_csv,
    run_case,
)


def test_case_210_small_primes():
    for p, jmax in ((3, 20), (5, 10)):
        res = case_210(p, Jmax=jmax)
        assert res.passed, res.checks
        assert not res.excluded


def test_case_210_rejects_two():
    res = case_210(2)
    assert res.excluded
    assert res.passed  # excluded rows do not fail a batch


def test_case_26():
    for p, jmax in ((3, 15), (5, 8)):
        res = case_26(p, Jmax=jmax)
        assert res.passed, res.checks
    # j = 0 row is the trivial 1 = 1 congruence and is part of the sweep
    res0 = case_26(7, Jmax=0)
    assert res0.passed


def test_case_2f1_heights_p3():
    res = case_2f1(3, kmax=2, T=300)
    assert res.passed, [c for c in res.checks if not c[1]]
    assert res.orders["B_heights"] == [3, 12, 39]


def test_case_2f1_separability_p5():
    res = case_2f1(5, kmax=1, T=300)
    labels = {label: ok for label, ok, _ in res.checks}
    assert labels["separable"]
    assert labels["coprime"]


def test_case_2f1_identities_p7():
    res = case_2f1(7, kmax=1, T=500)
    labels = {label: ok for label, ok, _ in res.checks}
    for key in ("f2-from-f1", "trunc-link", "split-f1", "split-f1-sq", "self-power", "deg-P"):
        assert labels[key], key


def test_case_independence():
    res = run_case("independence", 5, T=300)
    assert res.passed, [c for c in res.checks if not c[1]]


def test_case_apery_lucas():
    res = case_apery_lucas(7, M=300)
    assert res.passed


def test_batch_report_nine_rows():
    results = batch_report([3, 5, 7], ["210", "26", "apery-lucas"])
    assert len(results) == 9
    assert all(r.passed for r in results)


def test_batch_report_empty_cases():
    assert batch_report([3, 5], []) == []


def test_batch_report_with_two_marks_excluded():
    results = batch_report([2], ["210"])
    assert len(results) == 1
    assert results[0].excluded
    assert results[0].passed


def test_batch_unknown_case():
    with pytest.raises(UnknownCase):
        batch_report([3], ["nosuch"])
    with pytest.raises(UnknownCase):
        run_case("nosuch", 3)


def test_csv_emission():
    results = batch_report([2, 3], ["210"])
    text = results_to_csv(results)
    lines = text.strip().splitlines()
    assert lines[0] == "case_id,p,check_label,pass,detail"
    assert any("excluded" in line for line in lines[1:])
    assert any(line.startswith("210,3,") for line in lines[1:])


def test_case_ids_stable():
    assert set(case_ids()) == {"210", "26", "2f1", "independence", "apery-lucas"}
