"""Group constructions: metacyclic groups, vector-space semidirect products,
generalized quaternion groups, and a few small standard families.

Everything here produces a :class:`TableGroup`, a group whose elements are
labels (tuples or matrices) and whose product is a vectorized rule on element
indices.  Table groups plug into every perm_engine algorithm through the same
``FiniteGroup`` interface, and can also be turned into a regular permutation
group.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import CapExceeded, ParseError
from .gf_linalg import (
    FieldSpec,
    Matrix,
    field_make,
    field_of_order,
    has_eigenvalue_one,
    load_matrix_group,
    matrix_group_closure,
)
from .numbers import isprime, multiplicative_order
from .perm_engine import FiniteGroup, PermGroup, Permutation
from .perm_engine.table import FunctionTable, as_index

DEFAULT_CAP = 100_000


class TableGroup(FiniteGroup):
    """A group on an explicit list of labels with an index-level product rule.

    ``mul`` takes two integer index arrays and returns the index array of the
    products.  ``gens`` are indices of a generating set.
    """

    def __init__(self, labels: list, mul, identity: int, gens, name: str = "G", inverse=None):
        self.labels = list(labels)
        self.name = name
        self._gens = [int(g) for g in gens]
        self._ftable = FunctionTable(self.labels, mul, int(identity), self._gens, inverse)

    @classmethod
    def from_cayley(cls, labels: list, cayley: np.ndarray, gens, name: str = "G") -> TableGroup:
        cayley = as_index(cayley)
        ident = int(np.flatnonzero((cayley == np.arange(len(labels))).all(axis=1))[0])
        return cls(labels, lambda a, b: cayley[a, b], ident, gens, name=name)

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def identity(self):
        return self.labels[self._ftable.identity]

    @property
    def generators(self) -> list:
        return [self.labels[g] for g in self._gens]

    def index(self, x) -> int:
        return self._ftable.index(x)

    def multiply(self, a, b):
        t = self._ftable
        return self.labels[int(t.mul(t.index(a), t.index(b)))]

    def invert(self, a):
        t = self._ftable
        return self.labels[int(t.inv[t.index(a)])]

    def _build_table(self) -> FunctionTable:
        return self._ftable

    def check_axioms(self, samples: int = 1000, seed: int = 0) -> bool:
        """Identity and inverses exhaustively, associativity on random triples."""
        t = self._ftable
        idx = t.all
        e = t.identity
        if not (np.array_equal(t.mul(idx, e), idx) and np.array_equal(t.mul(e, idx), idx)):
            return False
        if not (t.mul(idx, t.inv) == e).all():
            return False
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, t.size, size=(3, samples))
        return bool((t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c))).all())

    def regular_representation(self) -> PermGroup:
        """Right regular action ``x -> x g`` on the element indices."""
        t = self._ftable
        gens = [Permutation(t.mul(t.all, g).tolist()) for g in self._gens]
        return PermGroup(gens, max(1, t.size), name=self.name)


# -- small families -------------------------------------------------------------


def cyclic_group(n: int) -> TableGroup:
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    return TableGroup(list(range(n)), lambda a, b: (a + b) % n, 0, [1 % n] if n > 1 else [],
                      name=f"C{n}")


def dihedral_group(order: int) -> TableGroup:
    """Dihedral group of the given order on pairs ``(rotation, reflection)``."""
    if order < 4 or order % 2:
        raise ValueError("dihedral group order must be even and at least 4")
    n = order // 2

    def mul(a, b):
        i, j = np.divmod(a, 2)
        k, l = np.divmod(b, 2)
        sign = 1 - 2 * j
        return ((i + sign * k) % n) * 2 + (j + l) % 2

    labels = [(i, j) for i in range(n) for j in range(2)]
    return TableGroup(labels, mul, 0, [2, 1], name=f"D{order}")


def symmetric_group(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("degree must be positive")
    gens = []
    if n > 1:
        gens.append(Permutation.from_cycles(n, [list(range(n))]))
        gens.append(Permutation.from_cycles(n, [[0, 1]]))
    return PermGroup(gens, n, name=f"S{n}")


def alternating_group(n: int) -> PermGroup:
    if n < 3:
        return PermGroup([], max(n, 1), name=f"A{n}")
    gens = [Permutation.from_cycles(n, [[i, i + 1, i + 2]]) for i in range(n - 2)]
    return PermGroup(gens, n, name=f"A{n}")


def matrix_group(gens: list[Matrix], name: str = "G", cap: int = DEFAULT_CAP) -> TableGroup:
    """The group generated by invertible matrices, as a table group."""
    elems = matrix_group_closure(gens, cap)
    pos = {m: i for i, m in enumerate(elems)}
    cayley = np.array([[pos[x @ y] for y in elems] for x in elems], dtype=np.int64)
    return TableGroup(elems, lambda a, b: cayley[a, b], 0, [pos[g] for g in gens], name=name)


def sl2_3() -> TableGroup:
    f = field_make(3)
    return matrix_group([Matrix(f, [[1, 1], [0, 1]]), Matrix(f, [[1, 0], [1, 1]])], name="SL2(3)")


# -- metacyclic -------------------------------------------------------------------


def find_metacyclic_r(p: int, alpha: int, q: int, beta: int) -> int | None:
    """Smallest ``r`` whose multiplicative order mod ``p^alpha`` is ``q^beta``."""
    if p == q or not (isprime(p) and isprime(q)):
        raise ValueError("p and q must be distinct primes")
    m, target = p**alpha, q**beta
    if ((p - 1) * p ** (alpha - 1)) % target:
        return None
    for r in range(2, m):
        if r % p and multiplicative_order(r, m) == target:
            return r
    return None


def metacyclic_rs(p: int, alpha: int, q: int, beta: int) -> list[int]:
    """Every ``r`` in ``[2, p^alpha)`` prime to ``p`` with ``r^(q^beta) = 1``."""
    m, e = p**alpha, q**beta
    return [r for r in range(2, m) if r % p and pow(r, e, m) == 1]


@dataclass(frozen=True)
class MetacyclicSpec:
    p: int
    alpha: int
    q: int
    beta: int
    r: int

    @property
    def r_order(self) -> int:
        return multiplicative_order(self.r, self.p**self.alpha)

    @property
    def eppo_expected(self) -> bool:
        return self.r_order == self.q**self.beta

    def __str__(self) -> str:
        return f"metacyclic p={self.p} a={self.alpha} q={self.q} b={self.beta} r={self.r}"


def metacyclic_spec(p: int, alpha: int, q: int, beta: int, r: int | None = None) -> MetacyclicSpec:
    if r is None:
        r = find_metacyclic_r(p, alpha, q, beta)
        if r is None:
            raise ValueError(f"no r has order {q}^{beta} modulo {p}^{alpha}")
    return MetacyclicSpec(p, alpha, q, beta, r)


def metacyclic_group(spec: MetacyclicSpec) -> TableGroup:
    """``<a, b | a^(p^alpha), b^(q^beta), b^-1 a b = a^r>`` on pairs ``(i, j)``.

    The product is ``(i, j)(k, l) = (i + k r^j, j + l)``.  Read as ``a^i b^j``
    this encodes ``b a b^-1 = a^r``, which is the stated relation with ``b``
    replaced by ``b^-1``; both define the same group.
    """
    p, alpha, q, beta, r = spec.p, spec.alpha, spec.q, spec.beta, spec.r
    if not (isprime(p) and isprime(q)) or p == q:
        raise ValueError("p and q must be distinct primes")
    if alpha < 1 or beta < 1:
        raise ValueError("alpha and beta must be positive")
    P, Q = p**alpha, q**beta
    if r % p == 0:
        raise ValueError(f"r = {r} is not prime to {p}")
    if pow(r, Q, P) != 1:
        raise ValueError(f"r^(q^beta) = {r}^{Q} is not 1 modulo {P}")
    rpow = np.array([pow(r, j, P) for j in range(Q)], dtype=np.int64)

    def mul(x, y):
        i, j = np.divmod(x, Q)
        k, l = np.divmod(y, Q)
        return ((i + k * rpow[j]) % P) * Q + (j + l) % Q

    labels = [(i, j) for i in range(P) for j in range(Q)]
    return TableGroup(labels, mul, 0, [Q, 1], name=str(spec))


# -- semidirect products --------------------------------------------------------


@dataclass
class SemidirectSpec:
    """``N = GF(q)^m`` extended by a group ``H`` of matrices acting on the left.

    With ``cyclic_order`` set, ``H`` is the abstract cyclic group of that order
    acting through its single generator matrix; the action need not be faithful.
    """

    field: FieldSpec
    dim: int
    h_generators: list[Matrix]
    cyclic_order: int | None = None
    label: str = ""
    cap: int = DEFAULT_CAP

    def __post_init__(self):
        for g in self.h_generators:
            if g.field != self.field or g.nrows != self.dim or not g.is_square:
                raise ValueError("H generator does not act on GF(q)^m")
        if self.cyclic_order is not None:
            if len(self.h_generators) != 1:
                raise ValueError("an abstract cyclic H needs exactly one generator matrix")
            g = self.h_generators[0]
            if not (g**self.cyclic_order).is_identity():
                raise ValueError("generator matrix order does not divide cyclic_order")

    def h_elements(self) -> tuple[list[Matrix], np.ndarray]:
        """The action matrices of the elements of ``H`` and H's Cayley table."""
        if self.cyclic_order is not None:
            n = self.cyclic_order
            g = self.h_generators[0]
            mats = [g**k for k in range(n)]
            idx = np.arange(n)
            return mats, (idx[:, None] + idx[None, :]) % n
        if not self.h_generators:
            return [Matrix.identity(self.field, self.dim)], np.zeros((1, 1), dtype=np.int64)
        mats = matrix_group_closure(self.h_generators, self.cap)
        pos = {m: i for i, m in enumerate(mats)}
        return mats, np.array([[pos[x @ y] for y in mats] for x in mats], dtype=np.int64)

    def __str__(self) -> str:
        return self.label or f"semidirect q={self.field.q} m={self.dim}"


class FixedPointFreeReport(NamedTuple):
    fixed_point_free: bool
    faithful: bool
    h_order: int
    image_order: int


def fixed_point_free(spec: SemidirectSpec) -> FixedPointFreeReport:
    """Whether no non-identity element of ``H`` has eigenvalue 1 on ``N``.

    The quantifier runs over abstract elements of ``H``, so an element in the
    kernel of a non-faithful action counts as having eigenvalue 1.
    """
    mats, _ = spec.h_elements()
    image = set(mats)
    ident = Matrix.identity(spec.field, spec.dim)
    fpf = all(not has_eigenvalue_one(m) for i, m in enumerate(mats) if i != 0)
    if mats and mats[0] != ident:
        raise AssertionError("first H element must be the identity")
    return FixedPointFreeReport(fpf, len(image) == len(mats), len(mats), len(image))


def semidirect_product(spec: SemidirectSpec) -> TableGroup:
    """``N x| H`` on pairs ``(v, h)`` with ``(v, h)(w, k) = (v + h.w, hk)``."""
    f, m = spec.field, spec.dim
    mats, hmul = spec.h_elements()
    nh = len(mats)
    vecs = list(_vectors(f, m))
    nv = len(vecs)
    if nv * nh > spec.cap:
        raise CapExceeded(f"semidirect product of order {nv * nh} exceeds cap {spec.cap}")
    vpos = {v: i for i, v in enumerate(vecs)}
    add = np.array([[vpos[tuple(f.add(a, b) for a, b in zip(v, w))] for w in vecs] for v in vecs],
                   dtype=np.int64)
    act = np.array([[vpos[h.apply(w)] for w in vecs] for h in mats], dtype=np.int64)

    def mul(x, y):
        v, h = np.divmod(x, nh)
        w, k = np.divmod(y, nh)
        return add[v, act[h, w]] * nh + hmul[h, k]

    labels = [(v, i) for v in vecs for i in range(nh)]
    gens = [vpos[_unit(m, i)] * nh for i in range(m)]
    if spec.cyclic_order is not None:
        gens.append(1 % nh)
    else:
        pos = {mat: i for i, mat in enumerate(mats)}
        gens += [pos[g] for g in spec.h_generators]
    return TableGroup(labels, mul, 0, gens, name=str(spec))


def _unit(m: int, i: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(m))


def _vectors(f: FieldSpec, m: int):
    from itertools import product

    return product(range(f.q), repeat=m)


def scalar_matrix(f: FieldSpec, m: int, c: int) -> Matrix:
    return Matrix.diagonal(f, [c] * m)


def singer_matrix(f: FieldSpec, m: int, power: int = 1) -> Matrix:
    """Multiplication by ``x^power`` on ``GF(q^m)`` written over ``GF(q)``.

    Uses the companion matrix of the field's fixed modulus, so for ``m > 1`` the
    base matrix has order ``q^m - 1``.
    """
    if m == 1:
        return Matrix(f, [[f.pow(f.primitive_element(), power)]])
    if f.k != 1:
        raise ValueError("Singer matrices are built over prime fields")
    big = field_make(f.p, m)
    return Matrix.companion(f, list(big.modulus[:-1])) ** power


def quaternion_matrices(f: FieldSpec) -> list[Matrix]:
    """Generators ``i, j`` of a quaternion group of 2x2 matrices over an odd prime field."""
    if f.k != 1 or f.p == 2:
        raise ValueError("need an odd prime field")
    p = f.p
    if f.p == 3:
        return [Matrix(f, [[0, 2], [1, 0]]), Matrix(f, [[1, 1], [1, 2]])]
    # find a, b with a^2 + b^2 = -1; then i = [[0,-1],[1,0]], j = [[a,b],[b,-a]]
    for a in range(p):
        for b in range(p):
            if (a * a + b * b + 1) % p == 0:
                return [Matrix(f, [[0, p - 1], [1, 0]]), Matrix(f, [[a, b], [b, (-a) % p]])]
    raise ValueError("no solution to a^2 + b^2 = -1")


def named_h(name: str, q: int, m: int) -> SemidirectSpec:
    """Stock acting groups for spec strings: ``Q8``, ``C4`` (rotation), ``Cn`` (Singer power)."""
    f = field_of_order(q)
    key = name.upper()
    if key == "Q8":
        if m != 2:
            raise ValueError("Q8 acts on a 2-dimensional space")
        return SemidirectSpec(f, 2, quaternion_matrices(f), label=f"semidirect q={q} m=2 H=Q8")
    mt = re.fullmatch(r"C(\d+)", key)
    if mt:
        n = int(mt.group(1))
        if key == "C4" and m == 2 and f.p % 4 == 3:
            gen = Matrix.companion(f, [1, 0])  # x^2 + 1
        else:
            full = q**m - 1
            if full % n:
                raise ValueError(f"GF({q}^{m})* has no cyclic subgroup of order {n}")
            gen = singer_matrix(f, m, full // n)
        return SemidirectSpec(f, m, [gen], label=f"semidirect q={q} m={m} H={name}")
    raise ValueError(f"unknown acting group {name!r}")


# -- generalized quaternion ---------------------------------------------------------


def generalized_quaternion(n: int) -> TableGroup:
    """``Q_{2^n}`` on pairs ``(i, j) = a^i b^j`` with ``b^2 = a^(2^(n-2))`` and ``b^-1 a b = a^-1``."""
    if n < 3:
        raise ValueError("generalized quaternion groups need n >= 3")
    M = 2 ** (n - 1)
    half = M // 2

    def mul(x, y):
        i, j = np.divmod(x, 2)
        k, l = np.divmod(y, 2)
        sign = 1 - 2 * j
        return ((i + sign * k + j * l * half) % M) * 2 + (j + l) % 2

    labels = [(i, j) for i in range(M) for j in range(2)]
    return TableGroup(labels, mul, 0, [2, 1], name=f"Q{2**n}")


# -- spec strings -------------------------------------------------------------------


def _kv(text: str) -> dict[str, str]:
    out = {}
    for tok in text.split():
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k.strip().lower()] = v.strip()
    return out


def _int(d: dict, key: str, default=None) -> int:
    if key not in d:
        if default is None:
            raise ParseError(f"missing parameter {key}=")
        return default
    try:
        return int(d[key])
    except ValueError:
        raise ParseError(f"parameter {key} must be an integer, got {d[key]!r}") from None


def parse_constructor(text: str) -> FiniteGroup:
    """Build a group from ``metacyclic ...``, ``semidirect ...`` or ``genquat n=...``."""
    text = text.strip()
    kind, _, rest = text.partition(" ")
    kind = kind.lower()
    d = _kv(rest)
    try:
        if kind == "metacyclic":
            p, a, q, b = _int(d, "p"), _int(d, "a", 1), _int(d, "q"), _int(d, "b", 1)
            r = _int(d, "r") if "r" in d else None
            return metacyclic_group(metacyclic_spec(p, a, q, b, r))
        if kind == "semidirect":
            q, m = _int(d, "q"), _int(d, "m", 1)
            h = d.get("h", "C2")
            if h.lower().startswith("file:"):
                f, gens = load_matrix_group(h[5:])
                if f.q != q:
                    raise ParseError(f"matrix file is over GF({f.q}), expected GF({q})")
                spec = SemidirectSpec(f, m, gens, label=f"semidirect q={q} m={m} H={h}")
            else:
                spec = named_h(h, q, m)
            return semidirect_product(spec)
        if kind in ("genquat", "quaternion"):
            return generalized_quaternion(_int(d, "n"))
        if kind == "cyclic":
            return cyclic_group(_int(d, "n"))
        if kind == "dihedral":
            return dihedral_group(_int(d, "n"))
        if kind == "symmetric":
            return symmetric_group(_int(d, "n"))
    except ParseError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    raise ParseError(f"unknown constructor {kind!r}")
