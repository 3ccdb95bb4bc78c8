from datetime import datetime
import sys
import os
from dotenv import load_dotenv, find_dotenv

# Load environment variables from .env file
load_dotenv(find_dotenv(usecwd=True))

# Define log levels
LOG_LEVELS = {
    "DEBUG": 10,
    "INFO": 20,
    "WARNING": 30,
    "ERROR": 40,
    "CRITICAL": 50
}

RED_COLOR = "\033[91m"
YELLOW_COLOR = "\033[93m"
RESET_COLOR = "\033[0m"

def get_log_level():
    return LOG_LEVELS.get(os.getenv('LOG_LEVEL', 'INFO').upper(), 20)

def get_log_file():
    return os.getenv('LOG_FILE') or None

def log_message(message, level="INFO", output="stderr"):
    """Write a timestamped log line. stdout is reserved for result documents."""
    if LOG_LEVELS.get(level, 20) >= get_log_level():
        timestamp = datetime.now().strftime('%Y-%m-%d %H:%M:%S')
        log_entry = f"{timestamp} [{level}] {message}\n"
        log_file = get_log_file()
        if output == "stderr" and log_file:
            output = log_file
        if output == "stdout":
            sys.stdout.write(log_entry)
        elif output == "stderr":
            sys.stderr.write(log_entry)
        else:
            with open(output, 'a') as handle:
                handle.write(log_entry)

def print_color(text, color="red", stream=None):
    colors = {
        "red": RED_COLOR,
        "yellow": YELLOW_COLOR,
        "green": "\033[92m",
        "blue": "\033[94m",
    }
    stream = stream or sys.stderr
    if stream.isatty():
        stream.write(f"{colors.get(color, '')}{text}{RESET_COLOR}\n")
    else:
        stream.write(f"{text}\n")
