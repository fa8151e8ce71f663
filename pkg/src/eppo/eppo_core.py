"""The EPPO property: element-order spectra, four independent decision
procedures, a sampled variant for large groups, and the divisibility checks
that hold in every EPPO-group.

An EPPO-group is a finite group in which every element has prime power order.
The four procedures test, respectively:

* ``exhaustive`` -- every element order is 1 or a prime power;
* ``commuting-pairs`` -- no two nontrivial elements of coprime orders commute;
* ``centralizer`` -- ``C(x) & C(y) = 1`` for nontrivial ``x, y`` of coprime
  orders;
* ``sylow-centralizer`` -- centralizers of p-subgroups are p-groups.

The last one quantifies over all nontrivial p-subgroups ``A``.  It is
checked on elements ``x`` of prime order ``p`` only: if ``x`` lies in ``A``
then ``C(A) <= C(x)``, so ``C(x)`` being a p-group forces ``C(A)`` to be a
p-group and therefore to lie in some Sylow p-subgroup; conversely
``A = <x>`` is one of the subgroups quantified over.  Class representatives
suffice because conjugation preserves both order and centralizer size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import HypothesisUnmet, ThresholdExceeded
from .numbers import is_prime_power, isprime, p_part, prime_divisors, prime_power_base
from .perm_engine import LIMITS, FiniteGroup, Subgroup, conjugacy_classes
from .records import format_element

METHODS = ("exhaustive", "commuting-pairs", "centralizer", "sylow-centralizer", "sampled")


def divisor_closure(orders) -> list[int]:
    out = set()
    for n in orders:
        n = int(n)
        out.update(d for d in range(1, n + 1) if n % d == 0)
    return sorted(out | {1})


@dataclass
class Spectrum:
    """The set of element orders, or a sampled lower bound for it."""

    orders: tuple[int, ...]
    all_prime_power: bool
    witness_composite: tuple | None = None
    sampled: bool = False
    sample_count: int | None = None
    seed: int | None = None

    def __contains__(self, n: int) -> bool:
        return n in self.orders

    def records(self) -> list[tuple[str, object]]:
        out = [
            ("spectrum", self.orders),
            ("spectrum_mode", "sampled" if self.sampled else "exact"),
            ("all_prime_power", self.all_prime_power),
        ]
        if self.sampled:
            out += [("sample_count", self.sample_count), ("seed", self.seed)]
        if self.witness_composite is not None:
            x, o = self.witness_composite
            out += [("composite_element", format_element(x)), ("composite_order", o)]
        return out


def _composite(orders) -> list[int]:
    return sorted(int(o) for o in set(np.asarray(orders).tolist()) if not is_prime_power(int(o)))


def spectrum(G: FiniteGroup) -> Spectrum:
    """Exact set of element orders by enumerating ``G``.

    The witness, if any, is the first element of the largest composite order.
    """
    t = G.table("spectrum")
    orders = t.orders
    values = tuple(int(v) for v in np.unique(orders))
    bad = _composite(values)
    witness = None
    if bad:
        i = int(np.flatnonzero(orders == bad[-1])[0])
        witness = (t.element(i), bad[-1])
    return Spectrum(values, not bad, witness)


def spectrum_sampled(G: FiniteGroup, n: int, seed: int = 0) -> Spectrum:
    """Orders of ``n`` uniformly random elements, closed under divisors.

    Every power of a sampled element is an element too, so the divisor
    closure is still a subset of the true spectrum.
    """
    if n <= 0:
        return Spectrum((1,), True, None, True, 0, seed)
    rng = np.random.default_rng(seed)
    orders, examples = G.sample(n, rng)
    values = tuple(divisor_closure(np.unique(orders).tolist()))
    bad = _composite(examples)
    witness = (examples[bad[-1]], bad[-1]) if bad else None
    return Spectrum(values, not _composite(values), witness, True, n, seed)


@dataclass
class EppoVerdict:
    """Outcome of one EPPO procedure.

    ``is_eppo`` is True or False for the definitive methods.  A sampled run
    reports False with a witness when it meets a composite order, and None
    ("sampled-consistent") otherwise; it never reports True.
    """

    is_eppo: bool | None
    method: str
    witness: dict | None = None
    sample_count: int | None = None
    seed: int | None = None

    @property
    def status(self) -> str:
        if self.is_eppo is None:
            return "sampled-consistent"
        return "eppo" if self.is_eppo else "not-eppo"

    def records(self) -> list[tuple[str, object]]:
        """Keys carry the method name so several verdicts fit in one record."""
        m = self.method.replace("-", "_")
        out = [(f"{m}_verdict", self.status)]
        if self.sample_count is not None:
            out += [(f"{m}_sample_count", self.sample_count), (f"{m}_seed", self.seed)]
        for k, v in (self.witness or {}).items():
            out.append((f"{m}_witness_{k}", v))
        return out


def _check_pairwise(G: FiniteGroup) -> None:
    if G.order > LIMITS.pairwise:
        raise ThresholdExceeded(f"commuting-pairs check of {G.name}", G.order, LIMITS.pairwise)


def is_eppo_exhaustive(G: FiniteGroup) -> EppoVerdict:
    s = spectrum(G)
    if s.all_prime_power:
        return EppoVerdict(True, "exhaustive")
    x, o = s.witness_composite
    return EppoVerdict(False, "exhaustive", {"element": format_element(x), "order": o})


def is_eppo_commuting_pairs(G: FiniteGroup, block: int = 256) -> EppoVerdict:
    """Search for commuting nontrivial ``x, y`` with coprime orders."""
    _check_pairwise(G)
    t = G.table("commuting-pairs check")
    orders = t.orders
    idx = t.all
    nontrivial = orders > 1
    for start in range(0, t.size, block):
        xs = idx[start:start + block]
        xs = xs[nontrivial[xs]]
        if xs.size == 0:
            continue
        commute = t.mul(xs[:, None], idx[None, :]) == t.mul(idx[None, :], xs[:, None])
        coprime = np.gcd(orders[xs][:, None], orders[None, :]) == 1
        hit = commute & coprime & nontrivial[None, :]
        if hit.any():
            r, c = np.argwhere(hit)[0]
            x, y = int(xs[r]), int(c)
            return EppoVerdict(False, "commuting-pairs", {
                "x": format_element(t.element(x)), "x_order": int(orders[x]),
                "y": format_element(t.element(y)), "y_order": int(orders[y]),
            })
    return EppoVerdict(True, "commuting-pairs")


def is_eppo_centralizer(G: FiniteGroup) -> EppoVerdict:
    """Check ``C(x) & C(y) = 1`` for nontrivial ``x, y`` with coprime orders.

    ``x`` runs over class representatives.  A nontrivial intersection
    contains some ``g`` of prime order, and then ``y`` lies in ``C(g)``.  The
    orders occurring in ``C(g)`` depend only on the class of ``g``, so they
    are computed once per class and looked up for every ``g`` in ``C(x)``.
    """
    t = G.table("centralizer check")
    orders = t.orders
    classes = conjugacy_classes(G)
    class_of = np.empty(t.size, dtype=np.int64)
    for k, c in enumerate(classes):
        class_of[c.members] = k
    cent_orders: dict[int, np.ndarray] = {}
    for k, c in enumerate(classes):
        if isprime(c.element_order):
            cent_orders[k] = np.unique(orders[t.commutes_with(c.rep_index)])
    prime_order = np.isin(orders, [o for o in np.unique(orders) if isprime(int(o))])
    for c in classes:
        x = c.rep_index
        ox = c.element_order
        if ox == 1:
            continue
        for g in np.flatnonzero(t.commutes_with(x) & prime_order):
            found = cent_orders[int(class_of[g])]
            if not ((np.gcd(found, ox) == 1) & (found > 1)).any():
                continue
            hit = t.commutes_with(int(g)) & (np.gcd(orders, ox) == 1) & (orders > 1)
            y = int(np.flatnonzero(hit)[0])
            return EppoVerdict(False, "centralizer", {
                "x": format_element(t.element(x)), "x_order": ox,
                "y": format_element(t.element(y)), "y_order": int(orders[y]),
                "common": format_element(t.element(int(g))),
            })
    return EppoVerdict(True, "centralizer")


def is_eppo_sylow_centralizer(G: FiniteGroup) -> EppoVerdict:
    """Every element of prime order ``p`` has a p-group as centralizer."""
    t = G.table("Sylow-centralizer check")
    for c in conjugacy_classes(G):
        p = c.element_order
        if not isprime(p):
            continue
        size = int(t.commutes_with(c.rep_index).sum())
        if prime_power_base(size) != p:
            return EppoVerdict(False, "sylow-centralizer", {
                "element": format_element(c.representative), "order": p,
                "centralizer_order": size,
            })
    return EppoVerdict(True, "sylow-centralizer")


def is_eppo_sampled(G: FiniteGroup, n: int, seed: int = 0) -> EppoVerdict:
    s = spectrum_sampled(G, n, seed)
    if s.witness_composite is None:
        return EppoVerdict(None, "sampled", None, n, seed)
    x, o = s.witness_composite
    return EppoVerdict(False, "sampled", {"element": format_element(x), "order": o}, n, seed)


PREDICATES = {
    "exhaustive": is_eppo_exhaustive,
    "commuting-pairs": is_eppo_commuting_pairs,
    "centralizer": is_eppo_centralizer,
    "sylow-centralizer": is_eppo_sylow_centralizer,
}


def applicable_predicates(G: FiniteGroup) -> list[str]:
    """Names of the definitive methods whose thresholds admit ``G``."""
    if G.order > LIMITS.threshold:
        return []
    names = ["exhaustive", "centralizer", "sylow-centralizer"]
    if G.order <= LIMITS.pairwise:
        names.insert(1, "commuting-pairs")
    return names


def all_verdicts(G: FiniteGroup) -> list[EppoVerdict]:
    return [PREDICATES[m](G) for m in applicable_predicates(G)]


def is_eppo(G: FiniteGroup) -> bool:
    return bool(is_eppo_exhaustive(G).is_eppo)


# -- counting -----------------------------------------------------------------


def count_elements_of_order(G: FiniteGroup, d: int) -> int:
    return int((G.table("element count").orders == d).sum())


def check_counting_theorem(G: FiniteGroup, H: FiniteGroup, d: int) -> bool:
    """In an EPPO-group, ``|H|`` divides the number of elements of order ``d``
    whenever ``gcd(|H|, d) = 1``."""
    if d < 1:
        raise ValueError("d must be positive")
    if gcd(H.order, d) != 1:
        raise HypothesisUnmet(f"gcd(|H|, d) = gcd({H.order}, {d}) is not 1")
    if not is_eppo(G):
        raise HypothesisUnmet(f"{G.name} is not an EPPO-group")
    return count_elements_of_order(G, d) % H.order == 0


def coprime_part_product(G: FiniteGroup, N: FiniteGroup) -> int:
    """Product of the full p-parts of ``|G|`` over primes not dividing ``|N|``."""
    out = 1
    for p in prime_divisors(G.order):
        if N.order % p:
            out *= p_part(G.order, p)
    return out


def check_corollary_divisibility(G: FiniteGroup, N: Subgroup) -> bool:
    """For normal ``N != 1`` of an EPPO-group, the coprime p-parts divide ``|N| - 1``."""
    if not N.is_normal():
        raise HypothesisUnmet("N is not normal in G")
    if N.order == 1:
        raise HypothesisUnmet("N is trivial")
    if not is_eppo(G):
        raise HypothesisUnmet(f"{G.name} is not an EPPO-group")
    return (N.order - 1) % coprime_part_product(G, N) == 0


@dataclass
class CheckReport:
    """Everything ``check`` prints for one group."""

    name: str
    order: int
    spectrum: Spectrum
    verdicts: list[EppoVerdict] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        definitive = {v.is_eppo for v in self.verdicts if v.is_eppo is not None}
        return len(definitive) <= 1

    @property
    def is_eppo(self) -> bool | None:
        for v in self.verdicts:
            if v.is_eppo is not None:
                return v.is_eppo
        return None

    def records(self) -> list[tuple[str, object]]:
        out = [("group", self.name), ("order", self.order)]
        out += self.spectrum.records()
        for v in self.verdicts:
            out += v.records()
        out.append(("predicates_agree", self.consistent))
        return out
