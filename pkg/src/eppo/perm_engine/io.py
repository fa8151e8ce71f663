"""Plain-text group definitions.

A file holds the degree on the first non-comment line, then one generator per
line in 1-based disjoint-cycle notation::

    # the symmetric group S3
    3
    (1 2 3)
    (1 2)
"""

from __future__ import annotations

from pathlib import Path

from ..errors import ParseError
from .group import PermGroup
from .permutation import format_cycles, parse_cycles


def _content_lines(text: str) -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def parse_group(text: str, name: str | None = None) -> PermGroup:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty group definition")
    try:
        degree = int(lines[0])
    except ValueError:
        raise ParseError(f"expected a degree, got {lines[0]!r}") from None
    if degree < 1:
        raise ParseError("degree must be at least 1")
    gens = [parse_cycles(line, degree) for line in lines[1:]]
    return PermGroup(gens, degree, name=name)


def load_group(path, name: str | None = None) -> PermGroup:
    path = Path(path)
    return parse_group(path.read_text(), name=name or path.stem)


def format_group(G: PermGroup) -> str:
    lines = [f"# {G.name}, order {G.order}", str(G.degree)]
    lines += [format_cycles(g) for g in G.generators]
    return "\n".join(lines) + "\n"
