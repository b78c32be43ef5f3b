import csv
import logging
import time
import traceback
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import List

from src import config, db
from src.catalogue import SUITE_DIGITS, SUITES, run_check
from src.checks import CheckResult

logger = logging.getLogger("ammv")

REPORT_COLUMNS = ("suite", "check_id", "status", "residual", "digits", "runtime_s", "detail")


@dataclass
class CheckRun:
    suite: str
    result: CheckResult
    digits: int
    runtime: float

    @property
    def status(self) -> str:
        return "PASS" if self.result.passed else "FAIL"

    def row(self):
        r = self.result
        return (self.suite, r.check_id, self.status, r.residual, self.digits, f"{self.runtime:.2f}", r.detail)


def log_event(event_type: str, message: str, url: str = None):
    """
    Logs run events to the store database for traceability.
    """
    try:
        url = url or config.STORE_URL
        db.init_db(url)
        db.log_event(event_type, message, url)
    except Exception as e:
        print(f"⚠️ Log insert failed: {e}")


def _timed(check_id: str, digits: int):
    """Worker entry point: a failing or crashing check becomes a FAIL row."""
    start = time.perf_counter()
    try:
        result = run_check(check_id, digits)
    except Exception as e:
        logger.error(f"check {check_id} raised: {e}\n{traceback.format_exc()}")
        result = CheckResult(check_id, False, "", f"error: {e}")
    return result, time.perf_counter() - start


def suite_names(name: str) -> List[str]:
    if name == "all":
        return list(SUITES)
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES) + ['all']}")
    return [name]


def run_suite(name: str, digits: int = None, jobs: int = 1, url: str = None) -> List[CheckRun]:
    """
    Runs every check of a suite (or of all suites) in catalogue order.
    With jobs > 1 checks run in worker processes; results keep catalogue order.
    """
    runs = []
    for suite in suite_names(name):
        d = digits or SUITE_DIGITS.get(suite, config.DEFAULT_DIGITS)
        ids = SUITES[suite]
        print(f"🧪 Suite {suite}: {len(ids)} checks at {d} digits")
        log_event("SUITE_START", f"{suite} digits={d} jobs={jobs}", url)

        if jobs > 1 and len(ids) > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                outcomes = list(pool.map(_timed, ids, [d] * len(ids)))
        else:
            outcomes = [_timed(check_id, d) for check_id in ids]

        for result, runtime in outcomes:
            run = CheckRun(suite, result, d, runtime)
            runs.append(run)
            print(f"{'✅' if result.passed else '❌'} {result.check_id}: {run.status} "
                  f"residual={result.residual or '-'} ({runtime:.1f}s)")
            try:
                db.record_check(suite, result.check_id, result.passed, result.residual, d, runtime,
                                url or config.STORE_URL)
            except Exception as e:
                print(f"⚠️ Check record failed: {e}")

        failed = sum(1 for r in runs if r.suite == suite and not r.result.passed)
        log_event("SUITE_DONE", f"{suite}: {len(ids) - failed} passed, {failed} failed", url)
        logger.info(f"suite {suite}: {len(ids) - failed}/{len(ids)} passed")
    return runs


def write_report(runs: List[CheckRun], path: str = None):
    """TSV report; the comment lines before the header give the digits used per suite."""
    path = path or config.REPORT_FILE
    with open(path, "w", newline="", encoding="utf-8") as f:
        for suite in dict.fromkeys(r.suite for r in runs):
            digits = next(r.digits for r in runs if r.suite == suite)
            f.write(f"# suite={suite} digits={digits}\n")
        writer = csv.writer(f, delimiter="\t", lineterminator="\n")
        writer.writerow(REPORT_COLUMNS)
        for run in runs:
            writer.writerow(run.row())
    return path
