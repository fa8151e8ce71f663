"""Finite groups: the shared interface and the permutation-group implementation."""

from __future__ import annotations

from math import prod

import numpy as np

from ..errors import DegreeMismatch, ThresholdExceeded
from .limits import LIMITS
from .permutation import Permutation, format_cycles
from .table import GroupTable, PermTable, perm_orders


class FiniteGroup:
    """Uniform interface over permutation groups, table groups and subgroups.

    Subclasses implement ``order``, ``identity``, ``multiply``, ``invert``,
    ``generators`` and ``_build_table``.  Everything that needs the full
    element list goes through :meth:`table`, which enforces the enumeration
    threshold.
    """

    name: str = "G"

    @property
    def order(self) -> int:
        raise NotImplementedError

    @property
    def identity(self):
        raise NotImplementedError

    @property
    def generators(self) -> list:
        raise NotImplementedError

    def multiply(self, a, b):
        raise NotImplementedError

    def invert(self, a):
        raise NotImplementedError

    def _build_table(self) -> GroupTable:
        raise NotImplementedError

    def table(self, what: str = "enumeration", threshold: int | None = None) -> GroupTable:
        limit = LIMITS.threshold if threshold is None else threshold
        if self.order > limit:
            raise ThresholdExceeded(f"{what} of {self.name}", self.order, limit)
        t = self.__dict__.get("_table")
        if t is None:
            t = self._build_table()
            self.__dict__["_table"] = t
        return t

    @property
    def cache(self) -> dict:
        """Per-group memo for derived data (classes, normal subgroups, ...)."""
        return self.__dict__.setdefault("_cache", {})

    def elements(self):
        t = self.table()
        for i in range(t.size):
            yield t.element(i)

    def contains(self, x) -> bool:
        t = self.table("membership")
        try:
            t.index(x)
        except (KeyError, ValueError):
            return False
        return True

    def element_order(self, x) -> int:
        t = self.table()
        return int(t.orders[t.index(x)])

    def sample(self, count: int, rng: np.random.Generator):
        """Orders of ``count`` uniformly random elements.

        Returns ``(orders, examples)``: the order of every sample, and the
        first sampled element of each distinct order.
        """
        t = self.table("sampling")
        idx = rng.integers(0, t.size, size=count)
        orders = t.orders[idx]
        return orders, _first_examples(orders, lambda i: t.element(int(idx[i])))

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name} of order {self.order}>"


def _first_examples(orders: np.ndarray, element_at) -> dict:
    vals, first = np.unique(orders, return_index=True)
    return {int(v): element_at(int(i)) for v, i in zip(vals, first)}


class StabilizerChain:
    """Base, strong generators and explicit orbit transversals.

    Built with the deterministic Schreier-Sims algorithm.  Base points are
    chosen as the lowest point moved by the generator that forced a new level.
    """

    def __init__(self, gens: list[Permutation], degree: int):
        self.degree = degree
        self.base: list[int] = []
        self.levels: list[list[Permutation]] = []
        self.trans: list[dict[int, Permutation]] = []
        self._tinv: list[dict[int, Permutation]] = []
        self._run([g for g in dict.fromkeys(gens) if not g.is_identity])

    def _orbit(self, level: int) -> None:
        bp = self.base[level]
        gens = self.levels[level]
        u = {bp: Permutation.identity(self.degree)}
        queue = [bp]
        for x in queue:
            ux = u[x]
            for s in gens:
                y = s.images[x]
                if y not in u:
                    u[y] = ux * s
                    queue.append(y)
        self.trans[level] = u
        self._tinv[level] = {}

    def _uinv(self, level: int, point: int) -> Permutation:
        d = self._tinv[level]
        v = d.get(point)
        if v is None:
            v = d[point] = self.trans[level][point].inverse()
        return v

    def _new_level(self, g: Permutation) -> None:
        self.base.append(g.moved_points()[0])
        self.levels.append([])
        self.trans.append({})
        self._tinv.append({})

    def strip(self, g: Permutation, start: int = 0) -> tuple[Permutation, int]:
        for level in range(start, len(self.base)):
            beta = g.images[self.base[level]]
            if beta not in self.trans[level]:
                return g, level
            g = g * self._uinv(level, beta)
        return g, len(self.base)

    def _run(self, gens: list[Permutation]) -> None:
        for g in gens:
            if all(g.images[b] == b for b in self.base):
                self._new_level(g)
        for level in range(len(self.base)):
            fixed = self.base[:level]
            self.levels[level] = [g for g in gens if all(g.images[b] == b for b in fixed)]
            self._orbit(level)
        i = len(self.base) - 1
        while i >= 0:
            i = self._scan_level(i)

    def _scan_level(self, i: int) -> int:
        """Sift every Schreier generator of level ``i``; return the next level."""
        trans = self.trans[i]
        for b, ub in list(trans.items()):
            for s in list(self.levels[i]):
                bs = s.images[b]
                g = ub * s
                if g == trans[bs]:
                    continue
                g = g * self._uinv(i, bs)
                h, j = self.strip(g, i + 1)
                if j < len(self.base) or not h.is_identity:
                    if j == len(self.base):
                        self._new_level(h)
                    for level in range(i + 1, j + 1):
                        self.levels[level].append(h)
                        self._orbit(level)
                    return j
        return i - 1

    @property
    def order(self) -> int:
        return prod(len(t) for t in self.trans)

    @property
    def strong_generators(self) -> list[Permutation]:
        return list(self.levels[0]) if self.levels else []

    def transversal_arrays(self) -> list[np.ndarray]:
        dtype = np.int16 if self.degree < 2**15 else np.int32
        out = []
        for t in self.trans:
            rows = [t[p].images for p in sorted(t)]
            out.append(np.array(rows, dtype=dtype))
        return out


class PermGroup(FiniteGroup):
    """A permutation group given by generators, with a stabilizer chain."""

    def __init__(self, generators, degree: int, name: str | None = None):
        if degree < 1:
            raise ValueError("degree must be at least 1")
        gens = list(generators)
        for g in gens:
            if not isinstance(g, Permutation):
                raise TypeError(f"generator {g!r} is not a Permutation")
            if g.degree != degree:
                raise DegreeMismatch(
                    f"generator {format_cycles(g)} has degree {g.degree}, expected {degree}"
                )
        self.degree = degree
        self._generators = gens
        self.name = name or "G"
        self.chain = StabilizerChain(gens, degree)

    @property
    def order(self) -> int:
        return self.chain.order

    @property
    def generators(self) -> list[Permutation]:
        return list(self._generators)

    @property
    def base(self) -> list[int]:
        return list(self.chain.base)

    @property
    def strong_generators(self) -> list[Permutation]:
        return self.chain.strong_generators

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def multiply(self, a: Permutation, b: Permutation) -> Permutation:
        return a * b

    def invert(self, a: Permutation) -> Permutation:
        return a.inverse()

    def contains(self, g: Permutation) -> bool:
        """Membership by sifting through the stabilizer chain."""
        if g.degree != self.degree:
            raise DegreeMismatch(f"degree {g.degree} does not match group degree {self.degree}")
        h, j = self.chain.strip(g)
        return j == len(self.chain.base) and h.is_identity

    def _transversals(self) -> list[np.ndarray]:
        arrs = self.__dict__.get("_tarrays")
        if arrs is None:
            arrs = self.__dict__["_tarrays"] = self.chain.transversal_arrays()
        return arrs

    def _build_table(self) -> PermTable:
        arrs = self._transversals()
        dtype = np.int16 if self.degree < 2**15 else np.int32
        if not arrs:
            perms = np.arange(self.degree, dtype=dtype)[None, :]
        else:
            perms = arrs[-1]
            for t in reversed(arrs[:-1]):
                # x in the deeper stabilizer first, then the coset representative
                perms = t[:, perms].reshape(-1, self.degree)
        return PermTable(perms, self.base, self._generators)

    def random_perms(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform random elements as rows: one random coset representative per level."""
        arrs = self._transversals()
        if not arrs:
            return np.broadcast_to(np.arange(self.degree), (count, self.degree)).copy()
        out = arrs[-1][rng.integers(0, len(arrs[-1]), size=count)]
        for t in reversed(arrs[:-1]):
            u = t[rng.integers(0, len(t), size=count)]
            out = np.take_along_axis(u, out.astype(np.int64), axis=1)
        return out

    def sample(self, count: int, rng: np.random.Generator, chunk: int = 8192):
        if self.order <= LIMITS.threshold:
            return super().sample(count, rng)
        orders = []
        examples: dict[int, Permutation] = {}
        done = 0
        while done < count:
            rows = self.random_perms(min(chunk, count - done), rng)
            part = perm_orders(rows, self.base)
            for o, ex in _first_examples(part, lambda i: Permutation._trusted(
                    tuple(int(v) for v in rows[i]))).items():
                examples.setdefault(o, ex)
            orders.append(part)
            done += len(rows)
        flat = np.concatenate(orders) if orders else np.zeros(0, dtype=np.int64)
        return flat, examples

    def orbit(self, point: int) -> list[int]:
        seen = {point}
        queue = [point]
        for x in queue:
            for g in self._generators:
                y = g.images[x]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return sorted(seen)

    def is_transitive(self) -> bool:
        return len(self.orbit(0)) == self.degree

    def to_text(self) -> str:
        from .io import format_group

        return format_group(self)


def group_from_generators(gens, degree: int, name: str | None = None) -> PermGroup:
    return PermGroup(gens, degree, name=name)
