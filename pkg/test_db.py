"""
test_db.py — sqlite store for cached values, relations, run log and check runs
"""
import json
import os
import sqlite3
import tempfile

from src import db


def _url(tmp: str, name: str = "store.db") -> str:
    return "sqlite:///" + os.path.join(tmp, name)


def _record(index: str = "M(2)", provenance: str = "duality") -> dict:
    return {
        "weight": 2,
        "terms": [{"coeff": "1", "index": index}, {"coeff": "-1", "index": "M(cb2)"}],
        "provenance": provenance,
        "residual": "1.2e-25",
        "digits": 25,
        "note": "",
    }


# ---------------------------------------------------
# Evaluation cache
# ---------------------------------------------------
def test_cache_serves_equal_or_better_precision():
    with tempfile.TemporaryDirectory() as tmp:
        url = _url(tmp, "cache.db")
        db.init_db(url)
        assert db.cache_get("M(2)", 20, url) is None
        db.cache_put("M(2)", 30, "1.2337005501361698273543113749845", "1e-31", url)
        assert db.cache_get("M(2)", 20, url)[1] == "1e-31"
        assert db.cache_get("M(2)", 40, url) is None
        db.cache_put("M(2)", 30, "1.2337005501361698273543113749845", "1e-32", url)
        assert db.cache_size(url) == 1


# ---------------------------------------------------
# Relations
# ---------------------------------------------------
def test_relation_insert_is_idempotent():
    with tempfile.TemporaryDirectory() as tmp:
        url = _url(tmp)
        db.init_db(url)
        assert db.insert_relation(_record(), url)
        assert not db.insert_relation(_record(provenance="pslq"), url)
        assert db.insert_relation(_record("M(b2)"), url)

        rows = db.list_relations(2, url)
        assert len(rows) == 2 and rows[0] == _record()
        assert db.list_relations(3, url) == []
        assert db.count_relations(url) == [(2, "duality", 2)]


def test_export_appends_json_lines():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "relations.jsonl")
        db.export_jsonl([_record()], path)
        db.export_jsonl([_record("M(b2)")], path)
        with open(path, encoding="utf-8") as f:
            lines = [json.loads(line) for line in f]
        assert [rec["terms"][0]["index"] for rec in lines] == ["M(2)", "M(b2)"]


# ---------------------------------------------------
# Run log and check runs
# ---------------------------------------------------
def test_events_newest_first():
    with tempfile.TemporaryDirectory() as tmp:
        url = _url(tmp)
        db.init_db(url)
        db.log_event("SUITE_START", "products", url)
        db.log_event("SUITE_DONE", "products: 4 passed", url)
        events = db.recent_events(10, url)
        assert [e[1] for e in events] == ["SUITE_DONE", "SUITE_START"]
        assert len(db.recent_events(1, url)) == 1


def test_record_check():
    with tempfile.TemporaryDirectory() as tmp:
        url = _url(tmp)
        db.init_db(url)
        db.record_check("products", "P1", True, "0", 20, 0.1, url)
        with db.get_conn(url) as conn:
            row = conn.execute("SELECT suite, check_id, passed, digits FROM check_run").fetchone()
        assert row == ("products", "P1", 1, 20)


# ---------------------------------------------------
# Connections
# ---------------------------------------------------
def test_every_helper_closes_its_connection():
    opened = []
    real_get_conn = db.get_conn

    def tracking_get_conn(url=db.STORE_URL):
        conn = real_get_conn(url)
        opened.append(conn)
        return conn

    def is_closed(conn) -> bool:
        try:
            conn.execute("SELECT 1")
        except sqlite3.ProgrammingError:
            return True
        return False

    with tempfile.TemporaryDirectory() as tmp:
        url = _url(tmp)
        bare = _url(tmp, "bare.db")
        db.get_conn = tracking_get_conn
        try:
            db.init_db(url)
            db.cache_put("M(2)", 20, "1.23", "1e-21", url)
            db.cache_get("M(2)", 20, url)
            db.cache_size(url)
            db.insert_relation(_record(), url)
            db.list_relations(url=url)
            db.count_relations(url)
            db.log_event("suite", "start", url)
            db.recent_events(url=url)
            db.record_check("values", "v1", True, "0", 20, 0.1, url)
            # no schema: each query fails and still releases its connection
            for call in (lambda: db.cache_get("M(2)", 20, bare), lambda: db.cache_size(bare),
                         lambda: db.list_relations(url=bare), lambda: db.count_relations(bare),
                         lambda: db.recent_events(url=bare), lambda: db.log_event("x", "y", bare),
                         lambda: db.insert_relation(_record(), bare), lambda: db.cache_put("M(2)", 20, "1", "1", bare),
                         lambda: db.record_check("s", "c", False, "", 20, 0.0, bare)):
                try:
                    call()
                except sqlite3.OperationalError:
                    continue
                raise AssertionError("query on a database without tables succeeded")
        finally:
            db.get_conn = real_get_conn
        assert len(opened) == 19
        assert all(is_closed(conn) for conn in opened)


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_"):
            fn()
            print(f"✅ {name}")
