"""The test corpus: catalog groups, the constructor grids, and small classics.

Each entry knows how to build its group and, where theory gives one, the
EPPO verdict it should have.  Groups are built fresh on every call so that
repeated runs share no state.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import catalog
from .constructors import (
    MetacyclicSpec,
    SemidirectSpec,
    cyclic_group,
    dihedral_group,
    fixed_point_free,
    generalized_quaternion,
    matrix_group,
    metacyclic_group,
    metacyclic_rs,
    named_h,
    quaternion_matrices,
    scalar_matrix,
    semidirect_product,
    singer_matrix,
    sl2_3,
    symmetric_group,
)
from .eppo_core import is_eppo
from .gf_linalg import Matrix, field_make
from .numbers import is_prime_power
from .perm_engine import LIMITS, FiniteGroup

GRID_PRIMES = (2, 3, 5, 7, 13, 17)


@dataclass
class CorpusEntry:
    name: str
    kind: str
    builder: Callable[[], FiniteGroup]
    expected_eppo: bool | None = None

    def build(self) -> FiniteGroup:
        G = self.builder()
        G.name = self.name
        return G


def metacyclic_grid(primes=GRID_PRIMES, exps=(1, 2)) -> list[MetacyclicSpec]:
    """Every ``(p, alpha, q, beta, r)`` for which the relations define a group."""
    out = []
    for p in primes:
        for q in primes:
            if p == q:
                continue
            for alpha in exps:
                for beta in exps:
                    for r in metacyclic_rs(p, alpha, q, beta):
                        out.append(MetacyclicSpec(p, alpha, q, beta, r))
    return out


def semidirect_grid() -> list[SemidirectSpec]:
    """Actions of coprime groups on ``GF(q)^m`` for ``q`` in {3, 5}, ``m`` in {1, 2}.

    Includes actions with a fixed vector and non-faithful actions of abstract
    cyclic groups as negative controls.
    """
    f3, f5 = field_make(3), field_make(5)
    S = SemidirectSpec
    specs = [
        S(f3, 1, [Matrix(f3, [[2]])], label="GF(3) x| C2"),
        S(f3, 1, [], label="GF(3) x| 1"),
        S(f3, 1, [Matrix(f3, [[1]])], cyclic_order=2, label="GF(3) x| C2 trivial"),
        S(f3, 1, [Matrix(f3, [[2]])], cyclic_order=4, label="GF(3) x| C4 via C2"),
        S(f3, 2, [scalar_matrix(f3, 2, 2)], label="GF(3)^2 x| -1"),
        named_h("C4", 3, 2),
        named_h("C8", 3, 2),
        named_h("Q8", 3, 2),
        S(f3, 2, [Matrix.diagonal(f3, [1, 2])], label="GF(3)^2 x| diag(1,-1)"),
        S(f3, 2, [Matrix.permutation(f3, [1, 0])], label="GF(3)^2 x| swap"),
        S(f3, 2, [Matrix.companion(f3, [1, 0])], cyclic_order=8, label="GF(3)^2 x| C8 via C4"),
        S(f3, 2, [scalar_matrix(f3, 2, 2)], cyclic_order=4, label="GF(3)^2 x| C4 via -1"),
        S(f5, 1, [Matrix(f5, [[2]])], label="GF(5) x| C4"),
        S(f5, 1, [Matrix(f5, [[4]])], label="GF(5) x| C2"),
        S(f5, 1, [Matrix(f5, [[2]])], cyclic_order=8, label="GF(5) x| C8 via C4"),
        S(f5, 1, [Matrix(f5, [[1]])], cyclic_order=2, label="GF(5) x| C2 trivial"),
        S(f5, 2, [singer_matrix(f5, 2, 8)], label="GF(5)^2 x| C3"),
        S(f5, 2, [singer_matrix(f5, 2, 3)], label="GF(5)^2 x| C8"),
        S(f5, 2, quaternion_matrices(f5), label="GF(5)^2 x| Q8"),
        S(f5, 2, [singer_matrix(f5, 2, 4)], label="GF(5)^2 x| C6"),
        S(f5, 2, [singer_matrix(f5, 2, 2)], label="GF(5)^2 x| C12"),
        S(f5, 2, [Matrix.diagonal(f5, [1, 4])], label="GF(5)^2 x| diag(1,-1)"),
        S(f5, 2, [Matrix.permutation(f5, [1, 0])], label="GF(5)^2 x| swap"),
        S(f5, 2, [singer_matrix(f5, 2, 8)], cyclic_order=6, label="GF(5)^2 x| C6 via C3"),
    ]
    return specs


def acting_group(spec: SemidirectSpec) -> FiniteGroup:
    """The abstract group ``H`` of a semidirect spec, built on its own."""
    if spec.cyclic_order is not None:
        return cyclic_group(spec.cyclic_order)
    if not spec.h_generators:
        return cyclic_group(1)
    return matrix_group(spec.h_generators, name="H")


def semidirect_expected(spec: SemidirectSpec) -> bool:
    """``H`` is EPPO, acts faithfully, and no nontrivial element fixes a vector."""
    rep = fixed_point_free(spec)
    return is_eppo(acting_group(spec)) and rep.faithful and rep.fixed_point_free


def small_groups() -> list[CorpusEntry]:
    out = [
        CorpusEntry("C6", "small", lambda: cyclic_group(6), False),
        CorpusEntry("C30", "small", lambda: cyclic_group(30), False),
        CorpusEntry("S3", "small", lambda: symmetric_group(3), True),
        CorpusEntry("S4", "small", lambda: symmetric_group(4), True),
        CorpusEntry("SL2(3)", "small", sl2_3, False),
        CorpusEntry("Q8", "small", lambda: generalized_quaternion(3), True),
        CorpusEntry("Q16", "small", lambda: generalized_quaternion(4), True),
    ]
    for n in range(8, 25, 2):
        # D_n is EPPO iff its rotation subgroup C_{n/2} is a p-group
        out.append(CorpusEntry(f"D{n}", "small", lambda n=n: dihedral_group(n),
                               is_prime_power(n // 2)))
    return out


def catalog_entries(max_order: int | None = None) -> list[CorpusEntry]:
    """Catalog groups up to ``max_order``; PSL2(5) is left out since it is A5 again."""
    limit = LIMITS.threshold if max_order is None else max_order
    out = []
    for e in catalog.simple_eppo_list() + catalog.extra_entries():
        if e.expected_order <= limit:
            out.append(CorpusEntry(e.name, "catalog", e.builder, True))
    return out


def corpus(max_catalog_order: int | None = None) -> list[CorpusEntry]:
    out = catalog_entries(max_catalog_order)
    for s in metacyclic_grid():
        out.append(CorpusEntry(str(s), "metacyclic", lambda s=s: metacyclic_group(s),
                               s.eppo_expected))
    for s in semidirect_grid():
        out.append(CorpusEntry(str(s), "semidirect", lambda s=s: semidirect_product(s), None))
    out += small_groups()
    return out
