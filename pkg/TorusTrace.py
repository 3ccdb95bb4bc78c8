import os
import sys
import platform
import pkg_resources

# Script Metadata
SCRIPT_VERSION = "1.0"
SCRIPT_DATE = "2026-10-17"

# Define variables
ROOT_DIR = os.path.dirname(os.path.abspath(__file__))
SCRIPTS_FOLDER = os.path.join(ROOT_DIR, "TraceHub")
REQUIREMENTS_FILE = os.path.join(ROOT_DIR, "requirements.txt")
REQUIRED_PYTHON = "3.8"

# Function to print text with color
def print_color(text, color):
    colors = {
        "red": "\033[91m",
        "green": "\033[92m",
        "yellow": "\033[93m",
        "blue": "\033[94m",
        "end": "\033[0m",
    }
    if sys.stderr.isatty():
        sys.stderr.write(f"{colors.get(color, '')}{text}{colors.get('end', '')}\n")
    else:
        sys.stderr.write(f"{text}\n")

def read_requirements(path=REQUIREMENTS_FILE):
    requirements = []
    with open(path, 'r') as file:
        for line in file:
            line = line.split('#', 1)[0].strip()
            if line and not line.startswith('-'):
                requirements.append(line)
    return requirements

def missing_packages(requirements):
    """Requirement lines whose distribution is not installed at all."""
    installed = {dist.key for dist in pkg_resources.working_set}
    return [line for line in requirements if pkg_resources.Requirement.parse(line).key not in installed]

def check_python_and_dependencies(required_version=REQUIRED_PYTHON):
    current = tuple(sys.version_info[:2])
    if current < tuple(map(int, required_version.split('.'))):
        print_color(f"Python {required_version} or higher is required. Current version is {platform.python_version()}.", "red")
        return False

    if not os.path.exists(REQUIREMENTS_FILE):
        print_color("Error: requirements.txt file not found.", "red")
        return False

    missing = missing_packages(read_requirements())
    if missing:
        print_color(f"Missing packages: {', '.join(missing)}. Install them with: pip install -r requirements.txt", "red")
        return False
    return True

def main(argv=None):
    if not check_python_and_dependencies():
        return 1
    if SCRIPTS_FOLDER not in sys.path:
        sys.path.insert(0, SCRIPTS_FOLDER)
    from main import dispatch
    return dispatch(argv)

if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
