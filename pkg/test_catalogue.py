"""
test_catalogue.py — check dispatch, suite runs and the TSV report
"""
import os
import tempfile

from src.catalogue import CHECK_MAP, SUITE_DIGITS, SUITES, run_check, suite_of
from src.orchestrator import REPORT_COLUMNS, run_suite, suite_names, write_report


def test_catalogue_layout():
    assert set(SUITES) == set(SUITE_DIGITS)
    assert set(SUITES) == {"products", "regularization", "duality", "arctan", "parity", "values", "relations"}
    assert sum(len(ids) for ids in SUITES.values()) == len(CHECK_MAP)
    assert suite_of("P1") == "products"
    assert suite_of("pslq-zeta2") == "relations"


def test_run_check_keeps_catalogue_id():
    result = run_check("P1", 20)
    assert result.check_id == "P1" and result.passed
    assert run_check("round-trip", 20).passed


def test_unknown_check():
    for fn in (lambda: run_check("P9", 20), lambda: suite_of("P9")):
        try:
            fn()
        except Exception as e:
            assert "P9" in str(e)
            continue
        raise AssertionError("unknown check accepted")


def test_suite_names():
    assert suite_names("all") == list(SUITES)
    assert suite_names("duality") == ["duality"]
    try:
        suite_names("everything")
    except ValueError:
        return
    raise AssertionError("unknown suite accepted")


def test_products_suite_report():
    with tempfile.TemporaryDirectory() as tmp:
        url = "sqlite:///" + os.path.join(tmp, "store.db")
        runs = run_suite("products", url=url)
        assert [r.result.check_id for r in runs] == SUITES["products"]
        assert all(r.result.passed for r in runs)
        assert all(r.digits == SUITE_DIGITS["products"] for r in runs)

        path = write_report(runs, os.path.join(tmp, "report.tsv"))
        with open(path, encoding="utf-8") as f:
            lines = f.read().splitlines()
        assert lines[0] == f"# suite=products digits={SUITE_DIGITS['products']}"
        assert lines[1].split("\t") == list(REPORT_COLUMNS)
        assert len(lines) == 2 + len(runs)
        assert all(line.split("\t")[2] == "PASS" for line in lines[2:])


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"✅ {name}")
