import logging
from dataclasses import replace
from typing import Dict, List

from src.checks import CheckResult, arctan, duality, parity, products, regularization, relations, values

logger = logging.getLogger("ammv")

SUITE_MODULES = {
    "products": products,
    "regularization": regularization,
    "duality": duality,
    "arctan": arctan,
    "parity": parity,
    "values": values,
    "relations": relations,
}

# digits used when the caller does not ask for any
SUITE_DIGITS = {
    "products": 20,
    "regularization": 20,
    "duality": 20,
    "arctan": 30,
    "parity": 20,
    "values": 20,
    "relations": 25,
}

# ✅ Check Map
CHECK_MAP = {}
SUITES: Dict[str, List[str]] = {}
for _suite, _module in SUITE_MODULES.items():
    SUITES[_suite] = list(_module.CHECKS)
    for _check_id, _fn in _module.CHECKS.items():
        CHECK_MAP[_check_id] = _fn


def suite_of(check_id: str) -> str:
    for suite, ids in SUITES.items():
        if check_id in ids:
            return suite
    raise Exception(f"❌ Check '{check_id}' not found in CHECK_MAP.")


def run_check(check_id: str, digits: int) -> CheckResult:
    """
    Run a single catalogue check at the given precision.
    The returned result always carries the catalogue id.
    """
    fn = CHECK_MAP.get(check_id)

    if not fn:
        raise Exception(f"❌ Check '{check_id}' not found in CHECK_MAP.")

    logger.info(f"⚙️ running check {check_id} at {digits} digits")
    return replace(fn(digits), check_id=check_id)
