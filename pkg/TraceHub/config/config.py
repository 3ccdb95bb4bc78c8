import os
import psutil
from dotenv import load_dotenv, find_dotenv
from utils.logging_utils import log_message

# Load .env file (optional, defaults apply when missing)
dotenv_path = find_dotenv(usecwd=True)
if dotenv_path:
    load_dotenv(dotenv_path)

DEFAULT_SUPPORT_BOUND = 64
DEFAULT_ORACLE_WINDOW = 6
DEFAULT_ORACLE_MAX_TERMS = 4000
MAX_DEFAULT_WORKERS = 4

TRACE_SIGNS = ("right", "left")
OUTPUT_FORMATS = ("json", "text")

def _get_int(name, default, minimum=0):
    raw = os.getenv(name)
    if raw is None or raw.strip() == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        log_message(f"Invalid integer for {name}: {raw!r}. Using default {default}.", level="WARNING")
        return default
    if value < minimum:
        log_message(f"{name} must be at least {minimum}, got {value}. Using default {default}.", level="WARNING")
        return default
    return value

def _get_choice(name, default, choices):
    value = os.getenv(name, default).strip().lower()
    if value not in choices:
        log_message(f"Invalid value for {name}: {value!r}. Expected one of {', '.join(choices)}.", level="WARNING")
        return default
    return value

def get_support_bound():
    return _get_int('SUPPORT_BOUND', DEFAULT_SUPPORT_BOUND)

def get_trace_sign():
    return _get_choice('TRACE_SIGN', 'right', TRACE_SIGNS)

def get_max_workers():
    cores = psutil.cpu_count(logical=False) or 1
    return _get_int('MAX_WORKERS', min(MAX_DEFAULT_WORKERS, cores), minimum=1)

def get_oracle_window():
    return _get_int('ORACLE_WINDOW', DEFAULT_ORACLE_WINDOW)

def get_oracle_max_terms():
    return _get_int('ORACLE_MAX_TERMS', DEFAULT_ORACLE_MAX_TERMS, minimum=1)

def get_output_format():
    return _get_choice('OUTPUT_FORMAT', 'json', OUTPUT_FORMATS)

def is_certificate_check_enabled():
    return os.getenv('VERIFY_CERTIFICATES', 'true').lower() in ['true', '1', 'yes']
