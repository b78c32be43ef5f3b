import json
import sqlite3
import threading
from contextlib import closing

from src.config import CACHE_URL, STORE_URL
from src.utils import now_iso, sqlite_path

SCHEMA = """
CREATE TABLE IF NOT EXISTS eval_cache (
    index_text TEXT NOT NULL,
    digits INTEGER NOT NULL,
    value TEXT NOT NULL,
    err TEXT NOT NULL,
    created_at TEXT,
    PRIMARY KEY (index_text, digits)
);

CREATE TABLE IF NOT EXISTS relation (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    weight INTEGER NOT NULL,
    terms TEXT NOT NULL UNIQUE,
    provenance TEXT NOT NULL,
    residual TEXT,
    digits INTEGER,
    note TEXT,
    created_at TEXT
);

CREATE TABLE IF NOT EXISTS run_log (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    event_type TEXT,
    message TEXT,
    timestamp TEXT
);

CREATE TABLE IF NOT EXISTS check_run (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    suite TEXT,
    check_id TEXT,
    passed INTEGER,
    residual TEXT,
    digits INTEGER,
    runtime REAL,
    created_at TEXT
);
"""

_write_lock = threading.Lock()


def get_conn(url: str = STORE_URL):
    """Get a new DB connection."""
    return sqlite3.connect(sqlite_path(url), timeout=30)


def init_db(url: str = STORE_URL):
    with closing(get_conn(url)) as conn:
        cur = conn.cursor()
        cur.executescript(SCHEMA)
        conn.commit()


# -------------------- Evaluation cache --------------------
def cache_get(index_text: str, digits: int, url: str = CACHE_URL):
    """Return (value, err) strings cached at >= digits, or None."""
    with closing(get_conn(url)) as conn:
        cur = conn.cursor()
        cur.execute(
            "SELECT value, err FROM eval_cache WHERE index_text = ? AND digits >= ? ORDER BY digits LIMIT 1",
            (index_text, digits),
        )
        return cur.fetchone()


def cache_put(index_text: str, digits: int, value: str, err: str, url: str = CACHE_URL):
    with _write_lock, closing(get_conn(url)) as conn:
        cur = conn.cursor()
        cur.execute(
            "INSERT OR REPLACE INTO eval_cache (index_text, digits, value, err, created_at) VALUES (?, ?, ?, ?, ?)",
            (index_text, digits, value, err, now_iso()),
        )
        conn.commit()


def cache_size(url: str = CACHE_URL) -> int:
    with closing(get_conn(url)) as conn:
        cur = conn.cursor()
        cur.execute("SELECT COUNT(*) FROM eval_cache")
        return cur.fetchone()[0]


# -------------------- Relations --------------------
def insert_relation(record: dict, url: str = STORE_URL) -> bool:
    """Store a relation record; returns False if the same terms are already stored."""
    terms = json.dumps([[t["coeff"], t["index"]] for t in record["terms"]])
    with _write_lock, closing(get_conn(url)) as conn:
        cur = conn.cursor()
        cur.execute(
            """
            INSERT OR IGNORE INTO relation (weight, terms, provenance, residual, digits, note, created_at)
            VALUES (?, ?, ?, ?, ?, ?, ?)
            """,
            (record["weight"], terms, record["provenance"], record.get("residual", ""),
             record.get("digits", 0), record.get("note", ""), now_iso()),
        )
        conn.commit()
        return cur.rowcount > 0


def list_relations(weight: int = None, url: str = STORE_URL):
    """Relation records, optionally for one weight, oldest first."""
    query = "SELECT weight, terms, provenance, residual, digits, note FROM relation"
    params = ()
    if weight is not None:
        query += " WHERE weight = ?"
        params = (weight,)
    with closing(get_conn(url)) as conn:
        cur = conn.cursor()
        cur.execute(query + " ORDER BY id", params)
        rows = cur.fetchall()
    return [
        {
            "weight": w,
            "terms": [{"coeff": c, "index": i} for c, i in json.loads(terms)],
            "provenance": prov,
            "residual": residual or "",
            "digits": digits or 0,
            "note": note or "",
        }
        for w, terms, prov, residual, digits, note in rows
    ]


def count_relations(url: str = STORE_URL):
    """(weight, provenance, count) rows."""
    with closing(get_conn(url)) as conn:
        cur = conn.cursor()
        cur.execute(
            "SELECT weight, provenance, COUNT(*) FROM relation GROUP BY weight, provenance ORDER BY weight, provenance"
        )
        return cur.fetchall()


def export_jsonl(records, path: str):
    with open(path, "a", encoding="utf-8") as f:
        for rec in records:
            f.write(json.dumps(rec) + "\n")


# -------------------- Run log --------------------
def log_event(event_type: str, message: str, url: str = STORE_URL):
    with closing(get_conn(url)) as conn:
        cur = conn.cursor()
        cur.execute(
            "INSERT INTO run_log (event_type, message, timestamp) VALUES (?, ?, ?)",
            (event_type, message, now_iso()),
        )
        conn.commit()


def recent_events(limit: int = 10, url: str = STORE_URL):
    with closing(get_conn(url)) as conn:
        cur = conn.cursor()
        cur.execute("SELECT timestamp, event_type, message FROM run_log ORDER BY id DESC LIMIT ?", (limit,))
        return cur.fetchall()


def record_check(suite: str, check_id: str, passed: bool, residual: str, digits: int, runtime: float,
                 url: str = STORE_URL):
    with closing(get_conn(url)) as conn:
        cur = conn.cursor()
        cur.execute(
            """
            INSERT INTO check_run (suite, check_id, passed, residual, digits, runtime, created_at)
            VALUES (?, ?, ?, ?, ?, ?, ?)
            """,
            (suite, check_id, int(passed), residual, digits, runtime, now_iso()),
        )
        conn.commit()
