import os
from dotenv import load_dotenv


load_dotenv(os.getenv('AMMV_ENV_FILE', '.env'))


def _flag(name: str, default: str = 'false') -> bool:
    return os.getenv(name, default).strip().lower() in ('1', 'true', 'yes', 'on')


DEFAULT_DIGITS = int(os.getenv('AMMV_DIGITS', '30'))
MAX_DIGITS = int(os.getenv('AMMV_MAX_DIGITS', '60'))
ALLOW_HIGH_PRECISION = _flag('AMMV_ALLOW_HIGH_PRECISION')
N0 = int(os.getenv('AMMV_N0', '64'))
MAX_LEVEL = int(os.getenv('AMMV_MAX_LEVEL', '10'))
MAX_WEIGHT = int(os.getenv('AMMV_MAX_WEIGHT', '4'))
ALLOW_LARGE_WEIGHT = _flag('AMMV_ALLOW_LARGE_WEIGHT')
CACHE_URL = os.getenv('AMMV_CACHE_URL', 'sqlite:///ammv_cache.db')
STORE_URL = os.getenv('AMMV_STORE_URL', 'sqlite:///ammv_store.db')
LOG_FILE = os.getenv('AMMV_LOG_FILE', 'ammv.log')
JOBS = int(os.getenv('AMMV_JOBS', '1'))
RESIDUAL_SLACK = int(os.getenv('AMMV_RESIDUAL_SLACK', '8'))
REPORT_FILE = os.getenv('AMMV_REPORT_FILE', 'verify_report.tsv')
