"""Permutations on ``{0, ..., n-1}``.

Products compose left to right: ``(a * b)(x) == b(a(x))``, so ``a * b`` means
"apply ``a``, then ``b``".  Points are 0-based here; the text helpers at the
bottom read and write the 1-based cycle notation used in reports and files.
"""

from __future__ import annotations

import re
from math import lcm

from ..errors import DegreeMismatch, ParseError


class Permutation:
    __slots__ = ("images", "_hash")

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def _trusted(cls, images: tuple) -> Permutation:
        p = object.__new__(cls)
        p.images = images
        p._hash = hash(images)
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls._trusted(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, degree: int, cycles) -> Permutation:
        img = list(range(degree))
        seen = set()
        for cyc in cycles:
            cyc = [int(c) for c in cyc]
            for c in cyc:
                if not 0 <= c < degree:
                    raise ValueError(f"point {c} outside 0..{degree - 1}")
                if c in seen:
                    raise ValueError(f"point {c} repeated in cycles")
                seen.add(c)
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                img[a] = b
        return cls._trusted(tuple(img))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        if len(other.images) != len(self.images):
            raise DegreeMismatch("cannot compose permutations of different degree")
        o = other.images
        return Permutation._trusted(tuple([o[i] for i in self.images]))

    def __invert__(self) -> Permutation:
        return self.inverse()

    def inverse(self) -> Permutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation._trusted(tuple(inv))

    def __pow__(self, e: int) -> Permutation:
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = Permutation.identity(self.degree)
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: Permutation) -> bool:
        return self.images < other.images

    @property
    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def moved_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i != j]

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each starting at its smallest point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start] or self.images[start] == start:
                continue
            cyc = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cyc.append(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return element_order(self)

    def is_even(self) -> bool:
        return sum(len(c) - 1 for c in self.cycles()) % 2 == 0

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r})"


def element_order(g: Permutation) -> int:
    """Least common multiple of the cycle lengths of ``g``."""
    return lcm(1, *(len(c) for c in g.cycles()))


# -- text format -------------------------------------------------------------

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def format_cycles(g: Permutation) -> str:
    """Disjoint-cycle notation with 1-based points; ``()`` for the identity."""
    cyc = g.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(str(p + 1) for p in c) + ")" for c in cyc)


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse 1-based disjoint-cycle notation such as ``(1 2 3)(4 5)``."""
    stripped = text.strip()
    leftover = _CYCLE_RE.sub("", stripped).strip()
    if leftover:
        raise ParseError(f"could not parse permutation {text!r}")
    cycles = []
    for body in _CYCLE_RE.findall(stripped):
        pts = [t for t in re.split(r"[\s,]+", body.strip()) if t]
        try:
            cyc = [int(t) - 1 for t in pts]
        except ValueError:
            raise ParseError(f"non-integer point in {text!r}") from None
        if cyc:
            cycles.append(cyc)
    try:
        return Permutation.from_cycles(degree, cycles)
    except ValueError as exc:
        raise ParseError(f"{text!r}: {exc}") from None
