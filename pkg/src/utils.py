from datetime import datetime, timezone
import logging
import sys

from src.config import LOG_FILE

if hasattr(sys.stdout, "reconfigure"):
    sys.stdout.reconfigure(encoding='utf-8')


def now_iso():
    return datetime.now(timezone.utc).isoformat()


def sqlite_path(url: str) -> str:
    """Turn a sqlite:/// URL into a file path."""
    return url.replace("sqlite:///", "")


def setup_logger(log_file: str = LOG_FILE):
    logger = logging.getLogger("ammv")
    logger.setLevel(logging.INFO)

    if not logger.handlers:
        fh = logging.FileHandler(log_file, encoding="utf-8")
        fh.setLevel(logging.INFO)
        formatter = logging.Formatter('%(asctime)s - %(levelname)s - %(message)s')
        fh.setFormatter(formatter)
        logger.addHandler(fh)

    return logger
