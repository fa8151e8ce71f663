"""Structure of EPPO-groups as executable checks.

Chief series and their factor patterns for solvable EPPO-groups with two
prime divisors, the shape of coprime subgroups, consequences of a
generalized quaternion Sylow 2-subgroup, the exponent identity for groups
of order ``p^a q^b``, supersolvability, the arithmetic constraints on
2-group extensions of simple EPPO-groups, and a classifier.

Reports are lists of clauses, each with a status of ``applied``,
``passed``, ``vacuous``, ``failed`` or ``flagged``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import HypothesisUnmet
from .eppo_core import Spectrum, is_eppo, spectrum, spectrum_sampled
from .numbers import factorint, multiplicative_order, p_part, prime_divisors, prime_power_base
from .perm_engine import (
    LIMITS,
    FiniteGroup,
    Subgroup,
    center,
    is_abelian,
    is_cyclic,
    is_generalized_quaternion,
    is_simple,
    is_solvable,
    nilpotency_class,
    normal_subgroups,
    sylow_subgroup,
)
from .records import format_element

__all__ = [
    "Clause",
    "ChiefSeriesReport",
    "PatternReport",
    "ClassificationRecord",
    "chief_series",
    "chief_pattern_check",
    "hall_shape_check",
    "quaternion_sylow_check",
    "noncentral_abelian_normal",
    "exponent_order_check",
    "is_supersolvable",
    "supersolvable_iff_check",
    "nilpotency_class",
    "extension_constraints",
    "smallest_extension_exponent",
    "classify",
]


@dataclass
class Clause:
    name: str
    status: str
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "failed"


def _factor_pair(n: int) -> tuple[int, int] | None:
    f = factorint(n)
    if len(f) != 1:
        return None
    (p, e), = f.items()
    return p, e


def format_factors(factors: list[int]) -> str:
    """``[2,2,2; 3^2]``: runs of one prime separated by semicolons."""
    groups: list[list[str]] = []
    last = None
    for n in factors:
        pe = _factor_pair(n)
        p = pe[0] if pe else n
        text = str(n) if pe is None or pe[1] == 1 else f"{pe[0]}^{pe[1]}"
        if p != last:
            groups.append([])
            last = p
        groups[-1].append(text)
    return "[" + "; ".join(",".join(g) for g in groups) + "]"


@dataclass
class ChiefSeriesReport:
    """Chief factor orders from the top of ``G`` down to 1."""

    factors: list[int]
    series_orders: list[int]
    pattern_match: str | None = None
    parameters: dict = field(default_factory=dict)

    @property
    def prime_powers(self) -> list[tuple[int, int] | None]:
        return [_factor_pair(n) for n in self.factors]

    def __str__(self) -> str:
        return format_factors(self.factors)


def _chief_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """``1 = C_s < ... < C_0 = G`` bottom-up, each step minimal among normal subgroups."""
    normals = normal_subgroups(G)
    cur = normals[0]
    chain = [cur]
    while cur.order < G.order:
        above = [N for N in normals if N.order > cur.order and cur <= N]
        cur = above[0]  # sorted by order, so this one is minimal
        chain.append(cur)
    return chain


def chief_series(G: FiniteGroup) -> ChiefSeriesReport:
    """A chief series of ``G``, listed from the top.

    Built from the bottom: each step adjoins the smallest normal subgroup of
    ``G`` strictly containing the current one, so every factor is a minimal
    normal subgroup of the corresponding quotient.
    """
    chain = _chief_subgroups(G)
    orders = [N.order for N in reversed(chain)]
    factors = [a // b for a, b in zip(orders, orders[1:])]
    return ChiefSeriesReport(factors, orders)


# -- chief series patterns -----------------------------------------------------


@dataclass
class PatternReport:
    applicable: bool
    case: str | None = None
    clauses: list[Clause] = field(default_factory=list)
    parameters: dict = field(default_factory=dict)
    chief: ChiefSeriesReport | None = None
    reason: str = ""

    @property
    def passed(self) -> bool:
        return self.applicable and all(c.ok for c in self.clauses)

    def records(self) -> list[tuple[str, object]]:
        out = [("applicable", self.applicable)]
        if not self.applicable:
            return out + [("reason", self.reason)]
        out += [("case", self.case), ("chief_series", str(self.chief))]
        out += [(k, v) for k, v in self.parameters.items()]
        out += [(f"clause {c.name}", f"{c.status} {c.detail}".strip()) for c in self.clauses]
        return out


def normal_q_subgroup(G: FiniteGroup, q: int) -> Subgroup:
    """``O_q(G)``: the largest normal subgroup of q-power order."""
    best = normal_subgroups(G)[0]
    for N in normal_subgroups(G):
        if N.order > best.order and prime_power_base(N.order) == q:
            best = N
    return best


def _check(name: str, cond: bool, detail: str = "") -> Clause:
    return Clause(name, "passed" if cond else "failed", detail)


def chief_pattern_check(G: FiniteGroup) -> PatternReport:
    """Match the chief series of a solvable EPPO-group with two prime divisors.

    ``q`` is the prime with ``O_q(G) != 1`` and ``p`` the other one.  The
    quaternion case is tried first, then ``O_q(G)`` equal to the Sylow
    q-subgroup, then the general case.
    """
    primes = prime_divisors(G.order)
    if len(primes) != 2:
        return PatternReport(False, reason=f"|pi(G)| = {len(primes)}, need 2")
    if not is_eppo(G):
        return PatternReport(False, reason="not an EPPO-group")
    if not is_solvable(G):
        return PatternReport(False, reason="not solvable")
    cands = [r for r in primes if normal_q_subgroup(G, r).order > 1]
    if len(cands) != 1:
        return PatternReport(False, reason=f"expected one prime with O_q(G) != 1, got {cands}")
    q = cands[0]
    p = next(r for r in primes if r != q)
    Q = normal_q_subgroup(G, q)
    chief = chief_series(G)
    fac = chief.factors
    alpha = factorint(G.order)[p]
    beta = factorint(G.order)[q]
    params = {"p": p, "q": q, "alpha": alpha, "beta": beta}
    clauses: list[Clause] = []
    S2 = sylow_subgroup(G, 2) if 2 in primes else None

    if S2 is not None and is_generalized_quaternion(S2):
        case = "quaternion"
        b = multiplicative_order(q, 2 ** (alpha - 1))
        head, tail = fac[:alpha], fac[alpha:]
        bs = [_factor_pair(n)[1] if _factor_pair(n) and _factor_pair(n)[0] == q else None
              for n in tail]
        params.update(b=b, b_i=bs)
        clauses.append(_check("two-block shape", p == 2 and head == [2] * alpha
                              and all(x is not None for x in bs),
                              f"{format_factors(fac)}"))
        clauses.append(_check("b divides b_i", all(x and x % b == 0 for x in bs)))
        clauses.append(_check("b_i > 1", all(x and x > 1 for x in bs)))
    elif Q.order == p_part(G.order, q):
        case = "sylow"
        b = multiplicative_order(q, p**alpha)
        k = len(fac) - alpha
        params.update(b=b, k=k)
        clauses.append(_check("shape p^alpha then (q^b)^k",
                              fac[:alpha] == [p] * alpha and fac[alpha:] == [q**b] * k,
                              format_factors(fac)))
        clauses.append(_check("beta = k b", beta == k * b, f"{beta} = {k}*{b}"))
        cls = nilpotency_class(Q)
        params["nilpotency_class"] = cls
        clauses.append(_check("class(Q) <= k", cls <= k, f"{cls} <= {k}"))
    else:
        case = "general"
        gamma = (G.order // Q.order) // p**alpha
        gamma = factorint(gamma).get(q, 0)
        b = multiplicative_order(q, p**alpha)
        tail = fac[gamma + alpha:]
        bs = [_factor_pair(n)[1] if _factor_pair(n) and _factor_pair(n)[0] == q else None
              for n in tail]
        params.update(gamma=gamma, b=b, b_i=bs)
        clauses.append(_check("shape q^gamma, p^alpha, q^b_i",
                              fac[:gamma] == [q] * gamma
                              and fac[gamma:gamma + alpha] == [p] * alpha
                              and all(x is not None for x in bs),
                              format_factors(fac)))
        clauses.append(_check("q^gamma divides p - 1", (p - 1) % q**gamma == 0))
        clauses.append(_check("p^alpha divides q^b - 1", (q**b - 1) % p**alpha == 0))
        clauses.append(_check("b divides b_i", all(x and x % b == 0 for x in bs)))
        # The derivation of gamma < b is not fully justified in the source,
        # so a violation is flagged rather than failed.
        clauses.append(Clause("gamma < b", "passed" if gamma < b else "flagged",
                              f"{gamma} < {b}"))
    chief.pattern_match = case
    chief.parameters = params
    return PatternReport(True, case, clauses, params, chief)


# -- coprime subgroups and quaternion Sylow subgroups ------------------------------


def hall_shape_check(G: FiniteGroup, q: int) -> bool:
    """Subgroups of order prime to ``q`` are cyclic p-groups or generalized quaternion.

    Tested on every cyclic subgroup ``<x>`` with ``q`` not dividing ``|x|`` and
    on every Sylow p-subgroup with ``p != q``; quaternion is allowed for
    ``p = 2`` only.
    """
    if not is_eppo(G):
        raise HypothesisUnmet(f"{G.name} is not an EPPO-group")
    if normal_q_subgroup(G, q).order == 1:
        raise HypothesisUnmet(f"{G.name} has no nontrivial normal {q}-subgroup")
    orders = G.table().orders
    if not all(prime_power_base(int(o)) is not None for o in np.unique(orders) if o > 1 and o % q):
        return False
    for p in prime_divisors(G.order):
        if p == q:
            continue
        P = sylow_subgroup(G, p)
        if not (is_cyclic(P) or (p == 2 and is_generalized_quaternion(P))):
            return False
    return True


def quaternion_sylow_check(G: FiniteGroup) -> list[Clause]:
    """Consequences of a quaternion Sylow 2-subgroup and of normal q-subgroups."""
    if not is_eppo(G):
        raise HypothesisUnmet(f"{G.name} is not an EPPO-group")
    primes = prime_divisors(G.order)
    out = []
    if 2 in primes and is_generalized_quaternion(sylow_subgroup(G, 2)):
        odd = [r for r in primes if r != 2]
        normal_odd = all(normal_q_subgroup(G, r).order == p_part(G.order, r) for r in odd)
        out.append(_check("quaternion Sylow 2", len(primes) <= 2 and normal_odd,
                          f"primes {primes}, odd Sylow normal: {normal_odd}"))
    else:
        out.append(Clause("quaternion Sylow 2", "vacuous"))
    S2_abelian = 2 not in primes or is_abelian(sylow_subgroup(G, 2))
    solvable = None
    for q in primes:
        Q = normal_q_subgroup(G, q)
        if Q.order == 1:
            continue
        conds = {
            "(i) q odd": q != 2,
            "(ii) Q is Sylow": Q.order == p_part(G.order, q),
            "(iii) abelian Sylow 2": S2_abelian,
        }
        met = [k for k, v in conds.items() if v]
        if not met:
            out.append(Clause(f"normal {q}-subgroup", "vacuous", "no condition holds"))
            continue
        if solvable is None:
            solvable = is_solvable(G)
        out.append(_check(f"normal {q}-subgroup", solvable, f"{', '.join(met)}; solvable: {solvable}"))
    if len(out) == 1:
        out.append(Clause("normal q-subgroup", "vacuous", "no nontrivial normal p-subgroup"))
    return out


# -- normal abelian subgroups, exponent arithmetic ---------------------------------


def noncentral_abelian_normal(G: FiniteGroup) -> Subgroup | None:
    """A normal abelian subgroup not inside the center; None would refute the lemma."""
    if is_abelian(G):
        raise HypothesisUnmet(f"{G.name} is abelian")
    if not is_solvable(G):
        raise HypothesisUnmet(f"{G.name} is not solvable")
    if not is_eppo(G):
        raise HypothesisUnmet(f"{G.name} is not an EPPO-group")
    Z = center(G)
    for N in normal_subgroups(G):
        if not (N <= Z) and is_abelian(N):
            return N
    return None


@dataclass
class ExponentOrderReport:
    p: int
    alpha: int
    q: int
    beta: int
    exponent: int
    self_centralizing: bool

    @property
    def holds(self) -> bool:
        return self.beta == self.exponent


def _exponent_roles(G: FiniteGroup) -> tuple[int, int, Subgroup] | None:
    primes = prime_divisors(G.order)
    if len(primes) != 2:
        return None
    normals = normal_subgroups(G)
    for q in primes:
        p = next(r for r in primes if r != q)
        Q = next((N for N in normals if N.order == p_part(G.order, q)), None)
        if Q is None:
            continue
        minimal = not any(1 < N.order < Q.order and N <= Q for N in normals)
        if minimal and is_cyclic(sylow_subgroup(G, p)):
            return p, q, Q
    return None


def exponent_order_check(G: FiniteGroup) -> ExponentOrderReport:
    """For ``|G| = p^a q^b`` with cyclic Sylow p and minimal normal Sylow q,
    ``b`` is the multiplicative order of ``q`` mod ``p^a``.

    Also records whether ``C(Q) = Q``; in an EPPO-group this always holds.
    """
    roles = _exponent_roles(G)
    if roles is None:
        raise HypothesisUnmet("need |G| = p^a q^b, cyclic Sylow p, minimal normal Sylow q")
    p, q, Q = roles
    f = factorint(G.order)
    CQ = _centralizer_of_subgroup(G, Q)
    selfc = CQ.order == Q.order and Q <= CQ
    if not selfc and is_eppo(G):
        raise AssertionError("EPPO-group with C(Q) != Q")
    if not selfc:
        raise HypothesisUnmet("C(Q) != Q")
    return ExponentOrderReport(p, f[p], q, f[q], multiplicative_order(q, p ** f[p]), selfc)


def _centralizer_of_subgroup(G: FiniteGroup, H: Subgroup) -> Subgroup:
    t = G.table()
    mask = np.ones(t.size, dtype=bool)
    for g in H.gen_indices:
        mask &= t.commutes_with(g)
    return Subgroup(G, mask)


# -- supersolvability --------------------------------------------------------------


def is_supersolvable(G: FiniteGroup) -> bool:
    """Solvable with every chief factor of prime order."""
    if not is_solvable(G):
        return False
    return all(f == 1 or _factor_pair(f) and _factor_pair(f)[1] == 1
               for f in chief_series(G).factors)


def has_normal_prime_subgroup(G: FiniteGroup) -> bool:
    return any(prime_power_base(N.order) == N.order for N in normal_subgroups(G) if N.order > 1)


def supersolvable_iff_check(G: FiniteGroup) -> bool:
    """Supersolvable iff there is a normal subgroup of prime order."""
    if not is_eppo(G):
        raise HypothesisUnmet(f"{G.name} is not an EPPO-group")
    return is_supersolvable(G) == has_normal_prime_subgroup(G)


# -- extensions of simple groups by 2-groups ---------------------------------------

EXTENSION_PRODUCTS = {
    "PSL2(5)": 3 * 5,
    "PSL2(8)": 3**2 * 7,
    "PSL2(17)": 3**2 * 17,
    "Sz(8)": 5 * 7 * 13,
    "Sz(32)": 5**2 * 31 * 41,
}


def _extension_product(simple_id: str) -> int:
    key = simple_id.replace(" ", "")
    aliases = {"SZ8": "Sz(8)", "SZ32": "Sz(32)"}
    key = aliases.get(key.upper(), key)
    if key not in EXTENSION_PRODUCTS:
        raise ValueError(f"unsupported simple group {simple_id!r}; "
                         f"choose from {', '.join(EXTENSION_PRODUCTS)}")
    return EXTENSION_PRODUCTS[key]


def extension_constraints(simple_id: str, t_order: int) -> bool:
    """Whether the required product divides ``|T| - 1`` for a 2-group ``T``."""
    m = _extension_product(simple_id)
    if t_order < 1 or t_order & (t_order - 1):
        raise ValueError(f"|T| = {t_order} is not a power of 2")
    return (t_order - 1) % m == 0


def smallest_extension_exponent(simple_id: str, max_k: int = 64) -> int | None:
    """Least ``k >= 1`` with ``extension_constraints(simple_id, 2^k)``."""
    for k in range(1, max_k + 1):
        if extension_constraints(simple_id, 2**k):
            return k
    return None


def t_class_bound(T: FiniteGroup) -> bool:
    """Nilpotency class of a concrete 2-group ``T`` is at most 2.

    This is one reading of the class-length condition on ``T``; the other
    (conjugacy class lengths) is not implemented.
    """
    if prime_power_base(T.order) not in (None, 2) or (T.order > 1 and prime_power_base(T.order) != 2):
        raise HypothesisUnmet("T is not a 2-group")
    return nilpotency_class(T) <= 2


# -- classifier ---------------------------------------------------------------------

VERDICTS = ("not-eppo", "solvable-eppo", "simple-eppo", "a5-recognized", "eppo-unclassified")


@dataclass
class ClassificationRecord:
    verdict: str
    order: int
    spectrum: Spectrum
    name: str | None = None
    simple: bool | None = None
    solvable: bool | None = None
    witness: dict | None = None
    chief: ChiefSeriesReport | None = None
    evidence: dict = field(default_factory=dict)

    def records(self) -> list[tuple[str, object]]:
        out = [("verdict", self.verdict)]
        if self.name:
            out.append(("identified_as", self.name))
        out += [("order", self.order), ("primes", prime_divisors(self.order) if self.order > 1 else [])]
        out += self.spectrum.records()
        out += [("simple", self.simple), ("solvable", self.solvable)]
        if self.chief is not None:
            out.append(("chief_series", str(self.chief)))
            if self.chief.pattern_match:
                out.append(("pattern", self.chief.pattern_match))
        for k, v in (self.witness or {}).items():
            out.append((f"witness_{k}", v))
        for k, v in self.evidence.items():
            out.append((f"evidence_{k}", v))
        return out


def _catalog_match(order: int, spec: Spectrum, fixture=None):
    from .catalog import simple_eppo_list, suzuki_spectrum_bound

    for e in simple_eppo_list(fixture):
        if e.expected_order != order:
            continue
        if spec.sampled:
            bound = e.expected_spectrum or (suzuki_spectrum_bound(32) if e.name == "Sz(32)" else ())
            if set(spec.orders) <= set(bound):
                return e
        elif e.expected_spectrum is not None and tuple(spec.orders) == tuple(e.expected_spectrum):
            return e
    return None


def classify(G: FiniteGroup, sample_n: int = 100_000, seed: int = 0, fixture=None) -> ClassificationRecord:
    """EPPO check, then the A5 recognizer, solvable structure, or catalog match."""
    exact = G.order <= LIMITS.threshold
    spec = spectrum(G) if exact else spectrum_sampled(G, sample_n, seed)
    if spec.witness_composite is not None:
        x, o = spec.witness_composite
        return ClassificationRecord("not-eppo", G.order, spec,
                                    witness={"element": format_element(x), "order": o})
    primes = prime_divisors(G.order) if G.order > 1 else []
    if not exact:
        e = _catalog_match(G.order, spec, fixture)
        ev = {"mode": "sampled-consistent"}
        if e is not None:
            return ClassificationRecord("simple-eppo", G.order, spec, name=e.name, evidence=ev)
        return ClassificationRecord("eppo-unclassified", G.order, spec, evidence=ev)
    solvable = is_solvable(G)
    simple = is_simple(G, nonabelian=True)
    if len(primes) >= 3 and all(o == 1 or prime_power_base(o) == o for o in spec.orders):
        ev = {
            "order_60": G.order == 60,
            "spectrum_1235": tuple(spec.orders) == (1, 2, 3, 5),
            "simple": simple,
        }
        return ClassificationRecord("a5-recognized", G.order, spec, name="A5", simple=simple,
                                    solvable=solvable, evidence=ev)
    if solvable:
        rep = chief_pattern_check(G) if len(primes) == 2 else None
        chief = rep.chief if rep is not None and rep.applicable else chief_series(G)
        return ClassificationRecord("solvable-eppo", G.order, spec, simple=simple,
                                    solvable=True, chief=chief)
    if simple:
        e = _catalog_match(G.order, spec, fixture)
        if e is not None:
            return ClassificationRecord("simple-eppo", G.order, spec, name=e.name, simple=True,
                                        solvable=False)
    return ClassificationRecord("eppo-unclassified", G.order, spec, simple=simple, solvable=solvable)


# Numbered names from the published operation list, kept for callers that use them.
verify_theorem_2_4 = chief_pattern_check
theorem_2_3_check = quaternion_sylow_check
lemma_2_1_witness = noncentral_abelian_normal
lemma_2_4_check = exponent_order_check
corollary_2_1_check = supersolvable_iff_check
