"""Line-oriented ``key: value`` records, the structured output format."""

from __future__ import annotations

from .gf_linalg import Matrix
from .perm_engine import Permutation, format_cycles


def format_element(x) -> str:
    """Stable text form of a group element (1-based cycles for permutations)."""
    if isinstance(x, Permutation):
        return format_cycles(x)
    if isinstance(x, Matrix):
        return "[" + ", ".join("[" + " ".join(map(str, r)) + "]" for r in x.rows) + "]"
    if isinstance(x, tuple):
        return "(" + ", ".join(format_element(v) for v in x) + ")"
    return str(x)


def format_value(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple, set, frozenset)) and all(isinstance(x, int) for x in v):
        items = sorted(v) if isinstance(v, (set, frozenset)) else v
        return "{" + ",".join(map(str, items)) + "}"
    return str(v)


def format_records(pairs) -> str:
    """One ``key: value`` line per pair; a blank line ends the record."""
    lines = [f"{k}: {format_value(v)}" for k, v in pairs]
    return "\n".join(lines) + "\n"


def parse_records(text: str) -> list[dict[str, str]]:
    """Split text into records; keys keep their first-seen order."""
    out: list[dict[str, str]] = []
    cur: dict[str, str] = {}
    for line in text.splitlines():
        if not line.strip():
            if cur:
                out.append(cur)
                cur = {}
            continue
        key, sep, value = line.partition(": ")
        if not sep:
            key, value = line.rstrip(":"), ""
        cur[key.strip()] = value.strip()
    if cur:
        out.append(cur)
    return out
