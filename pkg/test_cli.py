"""
test_cli.py — exit codes of the ammv command line
"""
import json
import os
import tempfile

from ammv_cli import EXIT_BUDGET, EXIT_OK, EXIT_USAGE, main


def test_eval():
    assert main(["eval", "M(2)", "--digits", "20"]) == EXIT_OK
    assert main(["eval", "Z(b2,1)", "--digits", "20", "--show-word"]) == EXIT_OK


def test_parse_error_is_usage():
    assert main(["eval", "M(2,,3)"]) == EXIT_USAGE
    assert main(["eval", "M(0)"]) == EXIT_USAGE
    assert main(["product", "--kind", "shuffle", "M(1)", "M(2)"]) == EXIT_USAGE


def test_budget():
    assert main(["eval", "M(2)", "--digits", "61"]) == EXIT_BUDGET
    assert main(["harvest", "--weight", "5"]) == EXIT_BUDGET


def test_unknown_command():
    assert main(["integrate", "M(2)"]) == EXIT_USAGE
    assert main([]) == EXIT_USAGE


def test_products():
    assert main(["product", "--kind", "shuffle", "M(2)", "M(b1)"]) == EXIT_OK
    assert main(["product", "--kind", "stuffle", "M(cb2,1)", "M(3)"]) == EXIT_OK


def test_relations_written_as_json_lines():
    with tempfile.TemporaryDirectory() as tmp:
        out = os.path.join(tmp, "relations.jsonl")
        assert main(["dual", "M(2,c1,cb2)", "--digits", "20", "--out", out]) == EXIT_OK
        assert main(["dbsf", "M(2)", "M(2)", "--digits", "20", "--out", out]) == EXIT_OK
        assert main(["dual", "M(cb1)", "--digits", "20"]) == EXIT_OK
        with open(out, encoding="utf-8") as f:
            records = [json.loads(line) for line in f]
        assert [r["provenance"] for r in records] == ["duality", "finite-dbsf"]


def test_regularized_pair():
    assert main(["reg", "M(c1)", "M(b2)", "--digits", "20"]) == EXIT_OK


def test_pslq():
    assert main(["pslq", "zeta(2)", "pi^2", "--digits", "20"]) == EXIT_OK


def test_dims_without_harvest():
    with tempfile.TemporaryDirectory() as tmp:
        store = "sqlite:///" + os.path.join(tmp, "store.db")
        cache = "sqlite:///" + os.path.join(tmp, "cache.db")
        assert main(["dims", "--weight", "1", "--store", store, "--cache", cache, "--no-harvest"]) == EXIT_OK


def test_verify_duality_suite():
    with tempfile.TemporaryDirectory() as tmp:
        store = "sqlite:///" + os.path.join(tmp, "store.db")
        report = os.path.join(tmp, "report.tsv")
        assert main(["verify-paper", "--suite", "duality", "--report", report, "--store", store]) == EXIT_OK
        assert os.path.exists(report)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"✅ {name}")
