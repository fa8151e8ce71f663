"""Indexed, vectorized views of enumerated groups.

Every enumerated group gets a :class:`GroupTable`: elements are numbered
``0..size-1`` and products are computed on whole numpy index arrays at once.
All brute-force algorithms in this package work on these index arrays.
"""

from __future__ import annotations

import numpy as np

from ..numbers import factorint


def as_index(a) -> np.ndarray:
    return np.asarray(a, dtype=np.int64)


def perm_orders(perms: np.ndarray, points=None) -> np.ndarray:
    """Element orders of a batch of permutations (rows), via cycle lengths.

    If ``points`` is a base of a group containing every row, only the cycles
    through those points are followed: an element whose power fixes the base
    is the identity, so the lcm of those cycle lengths is already the order.
    """
    count, n = perms.shape
    if n == 0 or count == 0:
        return np.ones(count, dtype=np.int64)
    pts = np.arange(n) if points is None else np.asarray(points, dtype=np.int64)
    if pts.size == 0:
        return np.ones(count, dtype=np.int64)
    rows = np.arange(count)[:, None]
    start = np.broadcast_to(pts, (count, pts.size))
    cur = perms[:, pts].astype(np.int64)
    cycle_len = np.zeros((count, pts.size), dtype=np.int64)
    k = 1
    while True:
        back = (cur == start) & (cycle_len == 0)
        cycle_len[back] = k
        if (cycle_len > 0).all():
            break
        cur = perms[rows, cur].astype(np.int64)
        k += 1
    return np.lcm.reduce(cycle_len, axis=1)


class GroupTable:
    """Base class; subclasses provide ``mul``, ``element`` and ``index``."""

    size: int
    identity: int
    gens: np.ndarray

    def mul(self, a, b) -> np.ndarray:
        raise NotImplementedError

    def element(self, i: int):
        raise NotImplementedError

    def index(self, x) -> int:
        raise NotImplementedError

    @property
    def all(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    @property
    def inv(self) -> np.ndarray:
        if getattr(self, "_inv", None) is None:
            # x^-1 == x^(|x|-1)
            self._inv = self.power(self.all, self.orders - 1)
        return self._inv

    def power(self, a, e) -> np.ndarray:
        a, e = np.broadcast_arrays(as_index(a), as_index(e))
        result = np.full(a.shape, self.identity, dtype=np.int64)
        base = a.copy()
        e = e.copy()
        while True:
            odd = (e & 1) == 1
            if odd.any():
                result[odd] = self.mul(result[odd], base[odd])
            e >>= 1
            live = e > 0
            if not live.any():
                return result
            base[live] = self.mul(base[live], base[live])

    @property
    def orders(self) -> np.ndarray:
        if getattr(self, "_orders", None) is None:
            self._orders = self._compute_orders()
        return self._orders

    def _compute_orders(self) -> np.ndarray:
        # Start from e = |G| and strip prime factors while x^(e/p) == 1.
        e = np.full(self.size, self.size, dtype=np.int64)
        idx = self.all
        for p, k in sorted(factorint(self.size).items()):
            for _ in range(k):
                cand = np.flatnonzero(e % p == 0)
                if cand.size == 0:
                    break
                hit = self.power(idx[cand], e[cand] // p) == self.identity
                e[cand[hit]] //= p
        return e

    def conj(self, x, g) -> np.ndarray:
        """``g^-1 x g`` elementwise."""
        x, g = np.broadcast_arrays(as_index(x), as_index(g))
        return self.mul(self.mul(self.inv[g], x), g)

    def commutator(self, x, y) -> np.ndarray:
        """``x^-1 y^-1 x y`` elementwise."""
        x, y = np.broadcast_arrays(as_index(x), as_index(y))
        inv = self.inv
        return self.mul(self.mul(inv[x], inv[y]), self.mul(x, y))

    def commutes_with(self, g: int) -> np.ndarray:
        """Boolean mask of elements commuting with ``g``."""
        idx = self.all
        return self.mul(idx, g) == self.mul(g, idx)


class PermTable(GroupTable):
    """Table for a permutation group, keyed by images of the base points.

    An element of a permutation group is determined by the images of its
    base, so products only ever need to gather ``len(base)`` columns.
    """

    def __init__(self, perms: np.ndarray, base: list[int], gen_perms: list):
        n = perms.shape[1]
        self.degree = n
        self.base = list(base)
        k = len(self.base)
        self._fast = k == 0 or n**k < 2**62
        if self._fast:
            self._weights = np.array([n**i for i in range(k)], dtype=np.int64)
            keys = perms[:, self.base].astype(np.int64) @ self._weights
            order = np.argsort(keys, kind="stable")
            self.perms = perms[order]
            self._keys = keys[order]
        else:
            rows = [bytes(r) for r in perms[:, self.base].astype(np.int32)]
            order = sorted(range(len(rows)), key=rows.__getitem__)
            self.perms = perms[order]
            self._dict = {rows[j]: i for i, j in enumerate(order)}
        self.size = self.perms.shape[0]
        self.identity = int(self._lookup(np.array(self.base, dtype=np.int64)))
        self.gens = as_index([self.index(g) for g in gen_perms])

    def _lookup(self, base_images: np.ndarray) -> np.ndarray:
        if self._fast:
            if not self.base:
                return np.zeros(base_images.shape[:-1], dtype=np.int64)
            keys = base_images.astype(np.int64) @ self._weights
            pos = np.searchsorted(self._keys, keys)
            pos = np.minimum(pos, self.size - 1)
            if not np.array_equal(self._keys[pos], keys):
                raise KeyError("permutation not in table")
            return pos
        flat = base_images.reshape(-1, base_images.shape[-1]).astype(np.int32)
        out = np.array([self._dict[bytes(r)] for r in flat], dtype=np.int64)
        return out.reshape(base_images.shape[:-1])

    def _compute_orders(self) -> np.ndarray:
        step = max(1, 2**22 // max(1, self.degree))
        return np.concatenate(
            [perm_orders(self.perms[i : i + step], self.base) for i in range(0, self.size, step)]
        )

    def mul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(as_index(a), as_index(b))
        if not self.base:
            return np.zeros(a.shape, dtype=np.int64)
        # (a*b)(x) = b(a(x)); only base images are needed for the lookup
        a_base = self.perms[a][..., self.base]
        return self._lookup(self.perms[b[..., None], a_base])

    def element(self, i: int):
        from .permutation import Permutation

        return Permutation._trusted(tuple(int(v) for v in self.perms[i]))

    def index(self, x) -> int:
        img = np.asarray(x.images, dtype=np.int64)
        if img.shape != (self.degree,):
            raise KeyError("permutation of wrong degree")
        i = int(self._lookup(img[self.base]))
        if not np.array_equal(self.perms[i], img):
            raise KeyError("permutation not in table")
        return i


class SubTable(GroupTable):
    """Table of a subgroup, expressed through its parent's table."""

    def __init__(self, parent: GroupTable, members: np.ndarray, gens):
        self.parent = parent
        self.members = as_index(members)
        self.size = int(self.members.size)
        self._local = np.full(parent.size, -1, dtype=np.int64)
        self._local[self.members] = np.arange(self.size)
        self.identity = int(self._local[parent.identity])
        self.gens = self._local[as_index(gens)] if len(gens) else as_index([])
        self._orders = parent.orders[self.members]

    def mul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(as_index(a), as_index(b))
        return self._local[self.parent.mul(self.members[a], self.members[b])]

    def element(self, i: int):
        return self.parent.element(int(self.members[i]))

    def index(self, x) -> int:
        j = int(self._local[self.parent.index(x)])
        if j < 0:
            raise KeyError("element not in subgroup")
        return j


class FunctionTable(GroupTable):
    """Table defined by a vectorized multiplication rule on indices."""

    def __init__(self, labels: list, mul, identity: int, gens, inverse=None):
        self.labels = labels
        self._mul = mul
        self.size = len(labels)
        self.identity = identity
        self.gens = as_index(gens)
        self._pos = {lab: i for i, lab in enumerate(labels)}
        if inverse is not None:
            self._inv = as_index(inverse)

    def mul(self, a, b) -> np.ndarray:
        a, b = np.broadcast_arrays(as_index(a), as_index(b))
        return as_index(self._mul(a, b))

    def element(self, i: int):
        return self.labels[i]

    def index(self, x) -> int:
        return self._pos[x]
