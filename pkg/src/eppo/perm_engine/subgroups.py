"""Brute-force subgroup algorithms over enumerated groups.

Subgroups are boolean masks over the parent's element table, plus a small
generating set.  Centralizers, normalizers and classes are computed by
scanning every element with vectorized products; normal subgroups are built
from normal closures of conjugacy classes and their joins.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from ..errors import NotAMember
from ..numbers import p_part, prime_power_base
from .group import FiniteGroup, PermGroup
from .permutation import Permutation
from .table import GroupTable, SubTable, as_index


class Subgroup(FiniteGroup):
    """A subgroup of an enumerated group, stored as a mask over its elements."""

    def __init__(self, parent: FiniteGroup, mask: np.ndarray, gens=None, name: str | None = None):
        self.parent = parent
        self.mask = np.asarray(mask, dtype=bool)
        self._gen_idx = None if gens is None else [int(g) for g in gens]
        self.name = name or f"subgroup of {parent.name}"

    @property
    def ptable(self) -> GroupTable:
        return self.parent.table()

    @property
    def order(self) -> int:
        return int(self.mask.sum())

    @property
    def members(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    @property
    def gen_indices(self) -> list[int]:
        if self._gen_idx is None:
            self._gen_idx = _greedy_generators(self.ptable, self.members)
        return list(self._gen_idx)

    @property
    def generators(self) -> list:
        t = self.ptable
        return [t.element(i) for i in self.gen_indices]

    @property
    def identity(self):
        return self.parent.identity

    def multiply(self, a, b):
        return self.parent.multiply(a, b)

    def invert(self, a):
        return self.parent.invert(a)

    def _build_table(self) -> SubTable:
        return SubTable(self.ptable, self.members, self.gen_indices)

    def contains(self, x) -> bool:
        try:
            return bool(self.mask[self.ptable.index(x)])
        except (KeyError, ValueError):
            return False

    @property
    def key(self) -> bytes:
        return np.packbits(self.mask).tobytes()

    def __le__(self, other: Subgroup) -> bool:
        return bool(np.all(other.mask[self.mask]))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subgroup)
            and other.parent is self.parent
            and np.array_equal(self.mask, other.mask)
        )

    def __hash__(self) -> int:
        return hash(self.key)

    def is_normal(self) -> bool:
        t = self.ptable
        gens = as_index(self.gen_indices)
        if gens.size == 0:
            return True
        conj = t.conj(gens[:, None], t.gens[None, :])
        return bool(self.mask[conj].all())


@dataclass
class ConjugacyClass:
    representative: object
    size: int
    element_order: int
    rep_index: int
    members: np.ndarray = field(repr=False)


# -- generation ---------------------------------------------------------------


def _extend(t: GroupTable, mask: np.ndarray, gens: list[int], new) -> tuple[np.ndarray, list[int]]:
    """Close ``mask`` (a subgroup generated by ``gens``) under extra generators."""
    mask = mask.copy()
    gens = list(gens)
    for g in as_index(new).ravel():
        g = int(g)
        if mask[g]:
            continue
        gens.append(g)
        garr = as_index(gens)
        prod = t.mul(np.flatnonzero(mask), g)
        frontier = np.unique(prod[~mask[prod]])
        mask[frontier] = True
        while frontier.size:
            prod = t.mul(frontier[:, None], garr[None, :]).ravel()
            frontier = np.unique(prod[~mask[prod]])
            mask[frontier] = True
    return mask, gens


def _trivial_mask(t: GroupTable) -> np.ndarray:
    m = np.zeros(t.size, dtype=bool)
    m[t.identity] = True
    return m


def _greedy_generators(t: GroupTable, members: np.ndarray) -> list[int]:
    mask = _trivial_mask(t)
    gens: list[int] = []
    # high-order elements first keeps the generating set short
    order = members[np.argsort(-t.orders[members], kind="stable")]
    for x in order:
        if not mask[x]:
            mask, gens = _extend(t, mask, gens, [x])
    return gens


def _index_of(G: FiniteGroup, x) -> int:
    t = G.table()
    try:
        return t.index(x)
    except (KeyError, ValueError):
        raise NotAMember(f"{x!r} is not an element of {G.name}") from None


def subgroup_generated(G: FiniteGroup, elements, name: str | None = None) -> Subgroup:
    t = G.table()
    idx = [_index_of(G, x) for x in elements]
    mask, gens = _extend(t, _trivial_mask(t), [], idx)
    return Subgroup(G, mask, gens, name=name)


def _subgroup_from_indices(G: FiniteGroup, idx, name=None) -> Subgroup:
    t = G.table()
    mask, gens = _extend(t, _trivial_mask(t), [], idx)
    return Subgroup(G, mask, gens, name=name)


def cyclic_subgroup(G: FiniteGroup, x) -> Subgroup:
    return subgroup_generated(G, [x], name=f"<x> in {G.name}")


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    t = G.table()
    return Subgroup(G, _trivial_mask(t), [], name="1")


def whole_group(G: FiniteGroup) -> Subgroup:
    t = G.table()
    mask, gens = _extend(t, _trivial_mask(t), [], t.gens)
    return Subgroup(G, mask, gens, name=G.name)


def _normal_closure(t: GroupTable, mask: np.ndarray, gens: list[int], new) -> tuple[np.ndarray, list[int]]:
    mask, gens = _extend(t, mask, gens, new)
    if t.gens.size == 0:
        return mask, gens
    while True:
        conj = t.conj(as_index(gens)[:, None], t.gens[None, :]).ravel()
        missing = np.unique(conj[~mask[conj]])
        if missing.size == 0:
            return mask, gens
        mask, gens = _extend(t, mask, gens, missing)


def normal_closure(G: FiniteGroup, elements) -> Subgroup:
    t = G.table()
    idx = [_index_of(G, x) for x in elements]
    mask, gens = _normal_closure(t, _trivial_mask(t), [], idx)
    return Subgroup(G, mask, gens)


# -- centralizers, classes -------------------------------------------------------


def centralizer(G: FiniteGroup, g) -> Subgroup:
    """All elements of ``G`` commuting with ``g``, by scanning the group."""
    t = G.table("centralizer")
    i = _index_of(G, g)
    return Subgroup(G, t.commutes_with(i), name=f"C({G.name}, x)")


def centralizer_mask(t: GroupTable, i: int) -> np.ndarray:
    return t.commutes_with(i)


def center(G: FiniteGroup) -> Subgroup:
    t = G.table("center")
    mask = np.ones(t.size, dtype=bool)
    for g in t.gens:
        mask &= t.commutes_with(int(g))
    return Subgroup(G, mask, name=f"Z({G.name})")


def normalizer(G: FiniteGroup, H: Subgroup) -> Subgroup:
    t = G.table("normalizer")
    return Subgroup(G, _normalizer_mask(t, H.mask, H.gen_indices), name=f"N({H.name})")


def _normalizer_mask(t: GroupTable, mask: np.ndarray, gens: list[int]) -> np.ndarray:
    out = np.ones(t.size, dtype=bool)
    for h in gens:
        out &= mask[t.conj(h, t.all)]
    return out


def _components(t: GroupTable, targets: list[np.ndarray]) -> np.ndarray:
    """Label elements by connected component of the graph i -> targets[k][i]."""
    n = t.size
    if not targets:
        return np.arange(n)
    rows = np.concatenate([t.all] * len(targets))
    cols = np.concatenate(targets)
    graph = coo_matrix((np.ones(rows.size, dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


def conjugacy_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    """Classes sorted by (element order, smallest member index)."""
    cached = G.cache.get("classes")
    if cached is not None:
        return cached
    t = G.table("conjugacy classes")
    labels = _components(t, [t.conj(t.all, int(g)) for g in t.gens])
    reps = np.full(labels.max() + 1, t.size, dtype=np.int64)
    np.minimum.at(reps, labels, t.all)
    classes = []
    for lab in np.unique(labels):
        members = np.flatnonzero(labels == lab)
        rep = int(reps[lab])
        classes.append(
            ConjugacyClass(t.element(rep), int(members.size), int(t.orders[rep]), rep, members)
        )
    classes.sort(key=lambda c: (c.element_order, c.rep_index))
    G.cache["classes"] = classes
    return classes


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every normal subgroup, sorted by order.

    The normal closure of one class representative is the smallest normal
    subgroup containing that class, and every normal subgroup is a join of
    such closures.
    """
    cached = G.cache.get("normal")
    if cached is not None:
        return cached
    t = G.table("normal subgroups")
    found: dict[bytes, Subgroup] = {}

    def add(mask, gens) -> bool:
        sub = Subgroup(G, mask, gens)
        if sub.key in found:
            return False
        found[sub.key] = sub
        return True

    add(_trivial_mask(t), [])
    for c in conjugacy_classes(G):
        if c.rep_index != t.identity:
            add(*_normal_closure(t, _trivial_mask(t), [], [c.rep_index]))
    tried = set()
    changed = True
    while changed:
        changed = False
        for a, b in combinations(list(found.values()), 2):
            if (a.key, b.key) in tried or a <= b or b <= a:
                continue
            tried.add((a.key, b.key))
            mask, gens = _extend(t, a.mask, a.gen_indices, b.gen_indices)
            changed |= add(mask, gens)
    out = sorted(found.values(), key=lambda s: (s.order, s.key))
    G.cache["normal"] = out
    return out


def is_abelian(G: FiniteGroup) -> bool:
    t = G.table()
    g = t.gens
    if g.size == 0:
        return True
    return bool((t.mul(g[:, None], g[None, :]) == t.mul(g[None, :], g[:, None])).all())


def is_simple(G: FiniteGroup, nonabelian: bool = False) -> bool:
    """Exactly two normal subgroups; optionally also require non-abelian."""
    if G.order == 1:
        return False
    if nonabelian and is_abelian(G):
        return False
    return len(normal_subgroups(G)) == 2


# -- series -----------------------------------------------------------------


def _commutator_closure(t: GroupTable, xs, ys) -> tuple[np.ndarray, list[int]]:
    xs, ys = as_index(xs), as_index(ys)
    if xs.size == 0 or ys.size == 0:
        return _trivial_mask(t), []
    comms = np.unique(t.commutator(xs[:, None], ys[None, :]).ravel())
    return _normal_closure(t, _trivial_mask(t), [], comms)


def derived_subgroup(G: FiniteGroup, H: Subgroup | None = None) -> Subgroup:
    t = G.table("derived subgroup")
    gens = t.gens if H is None else as_index(H.gen_indices)
    return Subgroup(G, *_commutator_closure(t, gens, gens))


def derived_series(G: FiniteGroup) -> list[Subgroup]:
    series = [whole_group(G)]
    while True:
        nxt = derived_subgroup(G, series[-1])
        if nxt.order == series[-1].order:
            return series
        series.append(nxt)


def is_solvable(G: FiniteGroup) -> bool:
    return derived_series(G)[-1].order == 1


def lower_central_series(G: FiniteGroup) -> list[Subgroup]:
    t = G.table("lower central series")
    series = [whole_group(G)]
    while True:
        nxt = Subgroup(G, *_commutator_closure(t, series[-1].gen_indices, t.gens))
        if nxt.order == series[-1].order:
            return series
        series.append(nxt)


def nilpotency_class(G: FiniteGroup) -> int:
    """Length of the lower central series; raises for non-nilpotent groups."""
    series = lower_central_series(G)
    if series[-1].order != 1:
        raise ValueError(f"{G.name} is not nilpotent")
    return len(series) - 1


# -- Sylow -----------------------------------------------------------------


def sylow_subgroup(G: FiniteGroup, p: int, seed: int = 0, max_attempts: int = 1000) -> Subgroup:
    """A Sylow p-subgroup grown one normalizing p-element at a time.

    A p-element ``x`` normalizing a p-subgroup ``P`` gives the p-group ``P<x>``;
    if ``P`` is not yet Sylow such an ``x`` outside ``P`` always exists.
    """
    target = p_part(G.order, p)
    if target == 1:
        raise ValueError(f"{p} does not divide |{G.name}| = {G.order}")
    t = G.table("Sylow subgroup")
    rng = np.random.default_rng(seed)
    orders = t.orders
    is_p_elem = np.isin(orders, [o for o in np.unique(orders) if prime_power_base(int(o)) == p])
    mask, gens = _trivial_mask(t), []
    for _ in range(max_attempts):
        if mask.sum() == target:
            return Subgroup(G, mask, gens, name=f"Sylow {p}-subgroup of {G.name}")
        cand = np.flatnonzero(_normalizer_mask(t, mask, gens) & is_p_elem & ~mask)
        if cand.size == 0:
            mask, gens = _trivial_mask(t), []
            continue
        mask, gens = _extend(t, mask, gens, [int(rng.choice(cand))])
    raise RuntimeError(f"Sylow {p}-subgroup search did not converge in {max_attempts} attempts")


# -- recognizers ------------------------------------------------------------


def is_cyclic(G: FiniteGroup) -> bool:
    return bool((G.table().orders == G.order).any())


def is_p_group(G: FiniteGroup, p: int | None = None) -> bool:
    if G.order == 1:
        return True
    base = prime_power_base(G.order)
    return base is not None and (p is None or base == p)


def is_generalized_quaternion(G: FiniteGroup) -> bool:
    """Order ``2^n`` with ``n >= 3``, exactly one involution, and not cyclic.

    A 2-group with a unique involution is cyclic or generalized quaternion,
    so the non-cyclic condition is what separates the two.
    """
    n = G.order
    if n < 8 or prime_power_base(n) != 2:
        return False
    orders = G.table().orders
    return int((orders == 2).sum()) == 1 and not bool((orders == n).any())


# -- quotients and permutation helpers ------------------------------------------


def coset_labels(G: FiniteGroup, N: Subgroup) -> np.ndarray:
    """Label each element by its coset ``Nx``; labels ordered by first element."""
    t = G.table("quotient")
    ngens = N.gen_indices
    labels = _components(t, [t.mul(int(n), t.all) for n in ngens])
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.argsort(np.argsort(first))
    return rank[inverse]


def quotient(G: FiniteGroup, N: Subgroup, name: str | None = None) -> FiniteGroup:
    """``G/N`` as a permutation group acting regularly on the cosets of ``N``."""
    if not N.is_normal():
        raise ValueError("quotient by a non-normal subgroup")
    name = name or f"{G.name}/N"
    if N.order == 1:
        return G
    t = G.table("quotient")
    labels = coset_labels(G, N)
    m = int(labels.max()) + 1
    if m == 1:
        return PermGroup([], 1, name=name)
    first = np.zeros(m, dtype=np.int64)
    first[labels[::-1]] = t.all[::-1]
    gens = [Permutation(labels[t.mul(first, int(g))]) for g in t.gens]
    return PermGroup(gens, m, name=name)


def stabilizer(G: PermGroup, point: int) -> Subgroup:
    t = G.table("stabilizer")
    return Subgroup(G, t.perms[:, point] == point, name=f"stabilizer of {point + 1}")
