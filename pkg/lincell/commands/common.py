import re
from typing import Any, Dict, List, Optional, Tuple

from ..env import Environment
from ..formats import encode_image, write_image, write_text
from ..grid import Grid

_SIZE = re.compile(r"^\s*(\d+)\s*[xX,]\s*(\d+)\s*$")
_RANGE = re.compile(r"^\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$")


def parse_size(text: str) -> Tuple[int, int]:
    match = _SIZE.match(text or "")
    if not match:
        raise ValueError(f"Size must look like MxN, got {text!r}")
    m, n = int(match.group(1)), int(match.group(2))
    if m <= 0 or n <= 0:
        raise ValueError(f"Size must be positive, got {text!r}")
    return m, n


def parse_point(text: str) -> Tuple[int, int]:
    match = _SIZE.match(text or "")
    if not match:
        raise ValueError(f"Point must look like ROW,COL, got {text!r}")
    return int(match.group(1)), int(match.group(2))


def parse_range(text: str) -> List[int]:
    match = _RANGE.match(text or "")
    if not match:
        raise ValueError(f"Range must look like A..B, got {text!r}")
    low = int(match.group(1))
    high = int(match.group(2)) if match.group(2) else low
    if low <= 0 or high < low:
        raise ValueError(f"Range {text!r} is empty or non-positive")
    return list(range(low, high + 1))


def parse_sizes(text: str) -> Tuple[List[int], List[int]]:
    """'2..6' for both axes, or 'A..BxC..D' for rows x columns."""
    parts = re.split(r"\s*[xX]\s*", text.strip())
    if len(parts) == 1:
        both = parse_range(parts[0])
        return both, both
    if len(parts) == 2:
        return parse_range(parts[0]), parse_range(parts[1])
    raise ValueError(f"Sizes must look like A..B or A..BxC..D, got {text!r}")


def parse_rule_list(text: str) -> List[int]:
    rules = []
    for token in re.split(r"[\s,]+", text.strip()):
        if not token:
            continue
        if not token.isdigit():
            raise ValueError(f"Rule list must hold decimal numbers, got {token!r}")
        rules.append(int(token))
    return rules


def emit_grid(env: Optional[Environment], g: Grid, output: Optional[str], fmt: Optional[str]) -> Dict[str, Any]:
    """Write g to output, or return it as P1 text for stdout."""
    if output:
        path = env.resolve(output) if env is not None else output
        write_image(g, path, fmt or "P4")
        return {"output": str(path)}
    return {"stdout": encode_image(g, fmt or "P1")}


def emit_text(env: Optional[Environment], text: str, output: Optional[str]) -> Dict[str, Any]:
    if output:
        path = env.resolve(output) if env is not None else output
        write_text(text, path)
        return {"output": str(path)}
    return {"stdout": text}


def grid_summary(g: Grid) -> Dict[str, Any]:
    return {"rows": g.rows, "cols": g.cols, "population": g.count(), "bounding_box": g.bounding_box()}


def failure(e: Exception) -> Dict[str, Any]:
    return {"ok": False, "data": None, "error": str(e)}
