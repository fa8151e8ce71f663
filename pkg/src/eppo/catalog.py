"""Concrete permutation representations of the simple EPPO-groups and M9.

Matrix groups are turned into permutation groups straight away: PSL2(q) acts
on the projective line, PSL3(4) on the projective plane over GF(4), the
Suzuki groups on their ovoid in projective 3-space, and M9 on the affine
plane over GF(3).  Projective points are normalized so that the first
nonzero coordinate is 1 and then numbered in lexicographic order, which
fixes point labels across runs.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from importlib import resources
from math import gcd
from typing import Callable

from .errors import ParseError
from .gf_linalg import FieldSpec, Matrix, field_make, field_of_order
from .numbers import factorint, isprime
from .perm_engine import PermGroup, Permutation
from .records import parse_records

FIXTURE = "catalog_fixture.txt"


# -- projective geometry helpers ---------------------------------------------------


def normalize(f: FieldSpec, v) -> tuple[int, ...]:
    """Scale ``v`` so its first nonzero coordinate is 1."""
    lead = next(x for x in v if x)
    inv = f.inv(lead)
    return tuple(f.mul(inv, x) for x in v)


def _perm_on_points(points: list, act) -> Permutation:
    pos = {pt: i for i, pt in enumerate(points)}
    return Permutation([pos[act(pt)] for pt in points])


def matrix_action(points: list, M: Matrix, f: FieldSpec) -> Permutation:
    """Permutation induced by ``v -> M v`` on normalized projective points."""
    return _perm_on_points(points, lambda v: normalize(f, M.apply(v)))


def projective_orbit(f: FieldSpec, gens: list[Matrix], start) -> list[tuple[int, ...]]:
    seen = {normalize(f, start)}
    queue = list(seen)
    for v in queue:
        for g in gens:
            w = normalize(f, g.apply(v))
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return sorted(seen)


# -- A5 and PSL2 -------------------------------------------------------------------


def a5() -> PermGroup:
    gens = [Permutation.from_cycles(5, [[0, 1, 2, 3, 4]]), Permutation.from_cycles(5, [[0, 1, 2]])]
    return PermGroup(gens, 5, name="A5")


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // gcd(2, q - 1)


def psl2(q: int) -> PermGroup:
    """PSL2(q) on the projective line ``GF(q) + {inf}``; ``inf`` is the last point.

    Generated by ``x -> x + 1``, ``x -> -1/x`` and ``x -> z^2 x`` for a
    primitive ``z``.  The first two suffice for prime ``q``; the third is
    needed over extension fields, where translations by 1 only reach the
    prime subfield.
    """
    try:
        f = field_of_order(q)
    except ValueError as exc:
        raise ValueError(f"unsupported q = {q}: {exc}") from None
    inf = q

    def translate(x):
        return inf if x == inf else f.add(x, 1)

    def invert(x):
        if x == inf:
            return 0
        if x == 0:
            return inf
        return f.neg(f.inv(x))

    z2 = f.mul(f.primitive_element(), f.primitive_element())

    def scale(x):
        return inf if x == inf else f.mul(z2, x)

    points = list(range(q + 1))
    gens = [_perm_on_points(points, h) for h in (translate, invert, scale)]
    gens = [g for g in gens if not g.is_identity]
    return PermGroup(gens, q + 1, name=f"PSL2({q})")


# -- PSL3(4) ---------------------------------------------------------------------


def psl3_4() -> PermGroup:
    """PSL3(4) on the 21 points of the projective plane over GF(4).

    Generated by the transvections ``I + t E_ij`` with ``t`` in ``{1, w}``,
    which generate SL3(4); the scalars of determinant 1 act trivially.
    """
    f = field_make(2, 2)
    points = sorted({normalize(f, v) for v in _nonzero_vectors(f, 3)})
    gens = []
    for i in range(3):
        for j in range(3):
            if i == j:
                continue
            for t in (1, 2):
                rows = [[1 if r == c else 0 for c in range(3)] for r in range(3)]
                rows[i][j] = t
                gens.append(matrix_action(points, Matrix(f, rows), f))
    return PermGroup(gens, len(points), name="PSL3(4)")


def _nonzero_vectors(f: FieldSpec, n: int):
    from itertools import product

    for v in product(range(f.q), repeat=n):
        if any(v):
            yield v


# -- Suzuki groups -----------------------------------------------------------------


def suzuki_order(q: int) -> int:
    return q * q * (q * q + 1) * (q - 1)


def suzuki_matrices(q: int) -> tuple[FieldSpec, list[Matrix]]:
    """Generators of Sz(q) < Sp4(q), ``q = 2^(2m+1)``.

    ``S(a, b)`` is the lower unitriangular family with
    ``theta(x) = x^(2^(m+1))``; ``d`` is the torus element built from a
    primitive ``k``; ``T`` is the antidiagonal involution.
    """
    f = field_of_order(q)
    if f.p != 2 or f.k % 2 == 0:
        raise ValueError(f"Suzuki groups need q = 2^(2m+1), got {q}")
    m = (f.k - 1) // 2

    def theta(x):
        return f.pow(x, 2 ** (m + 1))

    def S(a, b):
        ta = theta(a)
        r3 = [b, ta, 1, 0]
        c0 = f.add(f.add(f.mul(f.pow(a, 2), ta), f.mul(a, b)), theta(b))
        c1 = f.add(f.mul(a, ta), b)
        return Matrix(f, [[1, 0, 0, 0], [a, 1, 0, 0], r3, [c0, c1, a, 1]])

    k = f.primitive_element()
    e = 2**m
    d = Matrix.diagonal(f, [f.pow(k, 1 + e), f.pow(k, e), f.pow(k, -e), f.pow(k, -1 - e)])
    T = Matrix.permutation(f, [3, 2, 1, 0])
    return f, [S(1, 0), S(0, 1), d, T]


def suzuki_spectrum_bound(q: int) -> tuple[int, ...]:
    """Divisors of 4, ``q - 1`` and ``q +- r + 1`` with ``r = sqrt(2q)``."""
    r = int(round((2 * q) ** 0.5))
    out = set()
    for n in (4, q - 1, q + r + 1, q - r + 1):
        out.update(d for d in range(1, n + 1) if n % d == 0)
    return tuple(sorted(out))


def suzuki(q: int) -> PermGroup:
    """Sz(q) for ``q`` in {8, 32}, acting on the ``q^2 + 1`` ovoid points."""
    if q not in (8, 32):
        raise ValueError(f"unsupported Suzuki group Sz({q}); choose 8 or 32")
    f, mats = suzuki_matrices(q)
    points = projective_orbit(f, mats, (0, 0, 0, 1))
    if len(points) != q * q + 1:
        raise AssertionError(f"ovoid has {len(points)} points, expected {q * q + 1}")
    gens = [matrix_action(points, M, f) for M in mats]
    return PermGroup(gens, len(points), name=f"Sz({q})")


# -- M9 ---------------------------------------------------------------------------------


def m9() -> PermGroup:
    """The affine group ``GF(3)^2 x| Q8`` on the 9 vectors, ordered lexicographically."""
    f = field_make(3)
    points = [(a, b) for a in range(3) for b in range(3)]
    shifts = [(1, 0), (0, 1)]
    gens = [
        _perm_on_points(points, lambda v, s=s: tuple((x + y) % 3 for x, y in zip(v, s)))
        for s in shifts
    ]
    for M in (Matrix(f, [[0, 2], [1, 0]]), Matrix(f, [[1, 1], [1, 2]])):
        gens.append(_perm_on_points(points, M.apply))
    return PermGroup(gens, 9, name="M9")


# -- the list ---------------------------------------------------------------------


@dataclass
class CatalogEntry:
    name: str
    expected_order: int
    degree: int
    builder: Callable[[], PermGroup] = field(repr=False)
    expected_spectrum: tuple[int, ...] | None = None
    spectrum_mode: str = "exact"

    def build(self) -> PermGroup:
        G = self.builder()
        G.name = self.name
        return G


_SIMPLE = [
    ("A5", 60, 5, a5),
    ("PSL2(7)", psl2_order(7), 8, lambda: psl2(7)),
    ("PSL2(8)", psl2_order(8), 9, lambda: psl2(8)),
    ("PSL2(9)", psl2_order(9), 10, lambda: psl2(9)),
    ("PSL2(17)", psl2_order(17), 18, lambda: psl2(17)),
    ("PSL3(4)", 4**3 * (4**3 - 1) * (4**2 - 1) // 3, 21, psl3_4),
    ("Sz(8)", suzuki_order(8), 65, lambda: suzuki(8)),
    ("Sz(32)", suzuki_order(32), 1025, lambda: suzuki(32)),
]


def load_fixture(path=None) -> dict[str, dict[str, str]]:
    """Stored orders and spectra, keyed by entry name."""
    if path is None:
        text = resources.files("eppo.data").joinpath(FIXTURE).read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return {r["name"]: r for r in parse_records(text) if "name" in r}


def _parse_set(text: str) -> tuple[int, ...]:
    return tuple(sorted(int(x) for x in text.strip("{}").split(",") if x.strip()))


def simple_eppo_list(fixture=None) -> list[CatalogEntry]:
    """The eight non-abelian simple EPPO-groups, with stored expectations."""
    fx = load_fixture(fixture)
    out = []
    for name, order, degree, builder in _SIMPLE:
        rec = fx.get(name, {})
        spec = _parse_set(rec["spectrum"]) if "spectrum" in rec else None
        mode = rec.get("spectrum_mode", "exact")
        out.append(CatalogEntry(name, order, degree, builder, spec, mode))
    return out


def extra_entries(fixture=None) -> list[CatalogEntry]:
    fx = load_fixture(fixture)
    rec = fx.get("M9", {})
    spec = _parse_set(rec["spectrum"]) if "spectrum" in rec else None
    return [CatalogEntry("M9", 72, 9, m9, spec, rec.get("spectrum_mode", "exact"))]


_ALIASES = {
    "A5": "A5",
    "M9": "M9",
    "SZ8": "Sz(8)",
    "SZ(8)": "Sz(8)",
    "SZ32": "Sz(32)",
    "SZ(32)": "Sz(32)",
    "PSL34": "PSL3(4)",
    "PSL3(4)": "PSL3(4)",
}


def build(name: str) -> PermGroup:
    """Build a catalog group by name: ``A5``, ``M9``, ``PSL3(4)``, ``Sz8``, ``PSL2(q)``..."""
    key = re.sub(r"\s+", "", name).upper()
    canon = _ALIASES.get(key)
    if canon is not None:
        entry = next(e for e in simple_eppo_list() + extra_entries() if e.name == canon)
        return entry.build()
    m = re.fullmatch(r"PSL2\((\d+)\)|PSL2_(\d+)|PSL2\D?(\d+)", key)
    if m:
        q = int(next(g for g in m.groups() if g))
        f = factorint(q)
        if len(f) != 1:
            raise ParseError(f"PSL2 needs a prime power, got {q}")
        try:
            return psl2(q)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
    raise ParseError(f"unknown catalog group {name!r}")


def names() -> list[str]:
    return [e.name for e in simple_eppo_list()] + ["M9"]


def is_supported_prime_field(q: int) -> bool:
    return isprime(q)
