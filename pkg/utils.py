"""
Utility functions shared by the koszul-lab modules
"""
import json
import logging
from datetime import datetime
from typing import Any, Dict, Iterable, Iterator, List, Sequence


class KoszulLabError(Exception):
    """Base class for every error raised by koszul-lab"""
    exit_code = 1


class InputError(KoszulLabError):
    """Invalid graph, profile, vertex or file contents"""
    exit_code = 1


class LimitError(KoszulLabError):
    """An internal size limit was exceeded (closure cap, degree bound)"""
    exit_code = 2


def setup_logging(log_file: str = "koszul_lab.log", level: int = logging.INFO) -> logging.Logger:
    """Setup logging configuration"""
    handlers: List[logging.Handler] = [logging.StreamHandler()]
    if log_file:
        handlers.insert(0, logging.FileHandler(log_file))
    logging.basicConfig(
        level=level,
        format='%(asctime)s - %(levelname)s - %(message)s',
        handlers=handlers
    )
    return logging.getLogger(__name__)


def load_json_file(filepath: str, default: Any = None) -> Any:
    """Load data from JSON file with error handling"""
    try:
        with open(filepath, 'r') as f:
            return json.load(f)
    except FileNotFoundError:
        return default if default is not None else {}
    except json.JSONDecodeError as e:
        logging.error(f"Error parsing JSON file {filepath}: {e}")
        return default if default is not None else {}


def save_json_file(filepath: str, data: Any) -> bool:
    """Save data to JSON file with error handling"""
    try:
        with open(filepath, 'w') as f:
            json.dump(data, f, indent=2, sort_keys=True, default=str)
            f.write("\n")
        return True
    except Exception as e:
        logging.error(f"Error saving JSON file {filepath}: {e}")
        return False


def read_jsonl(filepath: str) -> Iterator[Dict]:
    """Yield one record per non-blank line; a bad line raises InputError naming it"""
    with open(filepath, 'r') as f:
        for line_no, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as e:
                raise InputError(f"{filepath}:{line_no}: invalid JSON ({e})")


def write_jsonl(filepath: str, records: Iterable[Dict]) -> int:
    """Write records as compact JSON lines, returns the record count"""
    count = 0
    with open(filepath, 'w') as f:
        for record in records:
            f.write(json.dumps(record, separators=(',', ':'), sort_keys=True))
            f.write("\n")
            count += 1
    return count


def parse_profile(text: str) -> List[int]:
    """Parse a layer profile string such as "1,2,2,2,1" """
    try:
        sizes = [int(part) for part in text.replace(' ', '').split(',') if part]
    except ValueError:
        raise InputError(f"Bad profile {text!r}: expected comma separated integers")
    if not sizes:
        raise InputError("Empty profile")
    if any(size < 1 for size in sizes):
        raise InputError(f"Bad profile {text!r}: every layer needs at least one vertex")
    return sizes


def format_profile(sizes: Sequence[int]) -> str:
    """Render a profile as "[1,2,2,2,1]" """
    return "[" + ",".join(str(size) for size in sizes) + "]"


def format_series(name: str, coefficients: Sequence[int]) -> str:
    """Render a series the way reports show it: h_B = [1, 3, 1]"""
    return f"{name} = [{', '.join(str(c) for c in coefficients)}]"


def get_timestamp() -> str:
    """Get current timestamp as string"""
    return datetime.now().strftime("%Y-%m-%d %H:%M:%S")
