"""The acceptance suite: eleven criteria, each returning a pass/fail result
with a short deterministic detail string.

Details never contain timings, so two runs with the same configuration
produce identical reports.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from . import catalog
from .constructors import metacyclic_group, semidirect_product
from .corpus import corpus, metacyclic_grid, semidirect_expected, semidirect_grid
from .eppo_core import (
    all_verdicts,
    check_corollary_divisibility,
    check_counting_theorem,
    count_elements_of_order,
    is_eppo,
    is_eppo_exhaustive,
    spectrum,
    spectrum_sampled,
)
from .errors import HypothesisUnmet
from .gf_linalg import Matrix, field_make, is_monomial, monomial_lemma_check
from .numbers import prime_divisors
from .perm_engine import (
    LIMITS,
    conjugacy_classes,
    cyclic_subgroup,
    is_abelian,
    is_solvable,
    normal_subgroups,
    sylow_subgroup,
)
from .records import format_records
from .structure_analysis import (
    classify,
    supersolvable_iff_check,
    has_normal_prime_subgroup,
    hall_shape_check,
    is_supersolvable,
    noncentral_abelian_normal,
    exponent_order_check,
    smallest_extension_exponent,
    extension_constraints,
    quaternion_sylow_check,
    chief_pattern_check,
)


@dataclass
class RunOptions:
    seed: int = 0
    sample_n: int = 100_000
    skip_sampled: bool = False
    fixture: str | None = None


@dataclass
class CriterionResult:
    id: int
    name: str
    passed: bool
    detail: str

    def records(self) -> list[tuple[str, object]]:
        return [("criterion", self.id), ("name", self.name),
                ("status", "pass" if self.passed else "fail"), ("detail", self.detail)]

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} [{self.id}] {self.name}: {self.detail}"


def _fail_list(items: list[str], limit: int = 5) -> str:
    more = f" (+{len(items) - limit} more)" if len(items) > limit else ""
    return "; ".join(items[:limit]) + more


# -- 1 ------------------------------------------------------------------------------------


def criterion_1(opts: RunOptions) -> CriterionResult:
    """Catalog orders, exhaustive EPPO checks, and the sampled Sz(32) check."""
    problems = []
    notes = []
    try:
        entries = catalog.simple_eppo_list(opts.fixture)
        fx = catalog.load_fixture(opts.fixture)
    except (OSError, KeyError, ValueError) as exc:
        return CriterionResult(1, "catalog verification", False, f"fixture unreadable: {exc}")
    if len(entries) != 8:
        problems.append(f"{len(entries)} entries")
    for e in entries:
        G = e.build()
        rec = fx.get(e.name, {})
        if G.order != e.expected_order:
            problems.append(f"{e.name} order {G.order} != {e.expected_order}")
        if rec.get("order") != str(e.expected_order):
            problems.append(f"{e.name} fixture order {rec.get('order')}")
        if G.order <= LIMITS.threshold:
            s = spectrum(G)
            failing = [v.method for v in all_verdicts(G) if not v.is_eppo]
            if failing:
                problems.append(f"{e.name} not EPPO by {','.join(failing)}")
            if e.expected_spectrum != s.orders:
                problems.append(f"{e.name} spectrum {s.orders} != fixture {e.expected_spectrum}")
        elif opts.skip_sampled:
            notes.append(f"{e.name} sampled check skipped")
        else:
            bound = catalog.suzuki_spectrum_bound(32)
            if e.expected_spectrum != bound:
                problems.append(f"{e.name} fixture bound {e.expected_spectrum} != {bound}")
            s = spectrum_sampled(G, opts.sample_n, opts.seed)
            if not (set(s.orders) <= set(bound) and s.all_prime_power):
                problems.append(f"{e.name} sampled spectrum {s.orders}")
            notes.append(f"{e.name} sampled {opts.sample_n} (seed {opts.seed}): "
                         f"{{{','.join(map(str, s.orders))}}}")
    orders = ",".join(str(e.expected_order) for e in entries)
    detail = _fail_list(problems) if problems else f"orders {orders}; " + "; ".join(notes)
    return CriterionResult(1, "catalog verification", not problems, detail.rstrip("; "))


# -- 2 ------------------------------------------------------------------------------------


def criterion_2(opts: RunOptions) -> CriterionResult:
    """All applicable EPPO predicates agree on the corpus."""
    entries = corpus()
    problems = []
    checked = 0
    must = {"SL2(3)": False, "C6": False, "C30": False, "S4": True}
    for e in entries:
        G = e.build()
        vs = all_verdicts(G)
        checked += 1
        if len({v.is_eppo for v in vs}) != 1:
            problems.append(f"{e.name} disagree {[(v.method, v.is_eppo) for v in vs]}")
            continue
        verdict = vs[0].is_eppo
        if any(v.is_eppo is False and not v.witness for v in vs):
            problems.append(f"{e.name} missing witness")
        if e.name in must and verdict != must[e.name]:
            problems.append(f"{e.name} verdict {verdict}")
        if e.expected_eppo is not None and verdict != e.expected_eppo:
            problems.append(f"{e.name} expected {e.expected_eppo}")
    if checked < 25:
        problems.append(f"corpus has only {checked} groups")
    detail = _fail_list(problems) if problems else f"{checked} groups, all predicates agree"
    return CriterionResult(2, "predicate equivalence", not problems, detail)


# -- 3 ------------------------------------------------------------------------------------


def criterion_3(opts: RunOptions) -> CriterionResult:
    """Metacyclic groups are EPPO exactly when ord(r mod p^alpha) = q^beta."""
    problems = []
    yes = no = 0
    for s in metacyclic_grid():
        got = bool(is_eppo_exhaustive(metacyclic_group(s)).is_eppo)
        want = _order_mod(s.r, s.p**s.alpha) == s.q**s.beta
        if got != want:
            problems.append(str(s))
        yes += got
        no += not got
    detail = _fail_list(problems) if problems else f"{yes + no} specs: {yes} EPPO, {no} not, 0 exceptions"
    return CriterionResult(3, "metacyclic iff", not problems, detail)


def _order_mod(r: int, m: int) -> int:
    # independent of the library: plain repeated multiplication
    x, k = r % m, 1
    while x != 1:
        x = x * r % m
        k += 1
    return k


# -- 4 ------------------------------------------------------------------------------------


def criterion_4(opts: RunOptions) -> CriterionResult:
    """Divisibility of order counts and the coprime p-part condition."""
    problems = []
    groups = checks = 0
    for e in corpus():
        G = e.build()
        if not is_eppo(G):
            continue
        groups += 1
        spec = spectrum(G).orders
        non_order = next(d for d in range(2, 10 * G.order) if d not in spec)
        ds = [d for d in spec if d > 1] + [non_order]
        subgroups = [cyclic_subgroup(G, c.representative) for c in conjugacy_classes(G)]
        subgroups += [sylow_subgroup(G, p, seed=opts.seed) for p in prime_divisors(G.order)]
        for H in subgroups:
            for d in ds:
                if gcd(H.order, d) != 1:
                    continue
                checks += 1
                if not check_counting_theorem(G, H, d):
                    problems.append(f"{e.name} |H|={H.order} d={d} "
                                    f"count={count_elements_of_order(G, d)}")
        for N in normal_subgroups(G):
            if 1 < N.order < G.order:
                checks += 1
                if not check_corollary_divisibility(G, N):
                    problems.append(f"{e.name} N of order {N.order}")
    detail = _fail_list(problems) if problems else f"{groups} EPPO groups, {checks} divisibilities hold"
    return CriterionResult(4, "counting divisibility", not problems, detail)


# -- 5 ------------------------------------------------------------------------------------


def criterion_5(opts: RunOptions) -> CriterionResult:
    """Semidirect product EPPO iff H EPPO, faithful and fixed-point-free."""
    problems = []
    yes = no = 0
    for s in semidirect_grid():
        got = is_eppo(semidirect_product(s))
        if got != semidirect_expected(s):
            problems.append(str(s))
        yes += got
        no += not got
    detail = _fail_list(problems) if problems else f"{yes + no} specs: {yes} EPPO, {no} not, 0 exceptions"
    return CriterionResult(5, "semidirect iff", not problems, detail)


# -- 6 ------------------------------------------------------------------------------------

MONOMIAL_FIELDS = ((2, 1), (3, 1), (5, 1), (7, 1), (11, 1), (13, 1), (2, 2), (2, 3), (3, 2))


def random_monomial(rng: np.random.Generator):
    """A non-diagonal monomial ``M`` with ``M^p = I``: p-cycles with entry product 1."""
    n = int(rng.integers(2, 7))
    p = int(rng.choice([r for r in (2, 3, 5) if r <= n]))
    f = field_make(*MONOMIAL_FIELDS[int(rng.integers(len(MONOMIAL_FIELDS)))])
    roots = [x for x in range(1, f.q) if f.pow(x, p) == 1]
    cycles = int(rng.integers(1, n // p + 1))
    pts = [int(x) for x in rng.permutation(n)]
    sigma = list(range(n))
    entries = [0] * n
    for c in range(cycles):
        cyc = pts[c * p:(c + 1) * p]
        vals = [int(rng.integers(1, f.q)) for _ in range(p - 1)]
        prod = 1
        for v in vals:
            prod = f.mul(prod, v)
        vals.append(f.inv(prod))
        for i, a in enumerate(cyc):
            sigma[a] = cyc[(i + 1) % p]
            entries[a] = vals[i]
    for a in pts[cycles * p:]:
        entries[a] = roots[int(rng.integers(len(roots)))]
    rows = [[entries[i] if j == sigma[i] else 0 for j in range(n)] for i in range(n)]
    return Matrix(f, rows), p


def criterion_6(opts: RunOptions, count: int = 1000) -> CriterionResult:
    rng = np.random.default_rng(opts.seed)
    problems = []
    for k in range(count):
        M, p = random_monomial(rng)
        ident = Matrix.identity(M.field, M.nrows)
        if not is_monomial(M) or M.is_diagonal() or not (M**p).is_identity():
            problems.append(f"sample {k} malformed")
            continue
        if (ident - M).det() != 0 or not monomial_lemma_check(M, p):
            problems.append(f"sample {k}: {M!r}")
    detail = _fail_list(problems) if problems else f"{count} matrices, det(I - M) = 0 for all"
    return CriterionResult(6, "monomial eigenvalue 1", not problems, detail)


# -- 7 ------------------------------------------------------------------------------------


def criterion_7(opts: RunOptions) -> CriterionResult:
    problems = []
    pattern_groups = 0
    ss_counts = {True: 0, False: 0}
    m9_ok = False
    for e in corpus():
        G = e.build()
        if not is_eppo(G):
            continue
        for c in quaternion_sylow_check(G):
            if not c.ok:
                problems.append(f"{e.name} {c.name}")
        if not supersolvable_iff_check(G):
            problems.append(f"{e.name} supersolvable {is_supersolvable(G)} vs "
                            f"normal prime {has_normal_prime_subgroup(G)}")
        ss_counts[is_supersolvable(G)] += 1
        if not is_solvable(G):
            continue
        if not is_abelian(G) and noncentral_abelian_normal(G) is None:
            problems.append(f"{e.name} no normal abelian non-central subgroup")
        if len(prime_divisors(G.order)) != 2:
            continue
        pattern_groups += 1
        rep = chief_pattern_check(G)
        if not rep.passed:
            problems.append(f"{e.name} pattern {rep.case} {rep.chief}")
        q = rep.parameters.get("q")
        if q is None or not hall_shape_check(G, q):
            problems.append(f"{e.name} coprime subgroup shape")
        try:
            exp = exponent_order_check(G)
            if not exp.holds:
                problems.append(f"{e.name} exponent {exp.beta} != {exp.exponent}")
        except HypothesisUnmet:
            pass
        if e.name == "M9":
            m9_ok = (rep.case == "quaternion" and rep.chief.factors == [2, 2, 2, 9]
                     and rep.parameters["b"] == 2 and rep.parameters["b_i"] == [2])
    if not m9_ok:
        problems.append("M9 signature")
    if not (ss_counts[True] and ss_counts[False]):
        problems.append(f"supersolvable split {ss_counts}")
    detail = (_fail_list(problems) if problems else
              f"{pattern_groups} two-prime groups match; M9 [2,2,2; 3^2] b=2; "
              f"supersolvable {ss_counts[True]}, not {ss_counts[False]}")
    return CriterionResult(7, "solvable structure", not problems, detail)


# -- 8 ------------------------------------------------------------------------------------


def criterion_8(opts: RunOptions) -> CriterionResult:
    problems = []
    notes = []
    for q, want in ((5, True), (7, True), (17, True), (13, False), (31, False), (127, False)):
        G = catalog.psl2(q)
        if G.order > LIMITS.threshold:
            notes.append(f"PSL2({q}) above threshold")
            continue
        v = is_eppo_exhaustive(G)
        if v.is_eppo != want or (not want and not v.witness):
            problems.append(f"PSL2({q})")
        notes.append(f"PSL2({q}) {'EPPO' if v.is_eppo else 'order ' + str(v.witness['order'])}")
    for name in ("PSL2(9)", "M9", "PSL3(4)"):
        G = catalog.build(name)
        if not is_eppo_exhaustive(G).is_eppo:
            problems.append(name)
    m9 = catalog.m9()
    t = m9.table()
    two_fixed = (t.perms[:, 0] == 0) & (t.perms[:, 1] == 1)
    if not (m9.order == 72 and m9.is_transitive() and int(two_fixed.sum()) == 1):
        problems.append("M9 not sharply 2-transitive")
    detail = _fail_list(problems) if problems else "; ".join(notes) + "; PSL2(9), M9, PSL3(4) EPPO"
    return CriterionResult(8, "boundary groups", not problems, detail)


# -- 9 ------------------------------------------------------------------------------------


def criterion_9(opts: RunOptions) -> CriterionResult:
    problems = []
    recognized = []
    for e in corpus():
        rec = classify(e.build(), opts.sample_n, opts.seed, opts.fixture)
        if rec.verdict == "a5-recognized":
            recognized.append(e.name)
            if not all(rec.evidence.values()):
                problems.append(f"{e.name} evidence {rec.evidence}")
        if e.name == "C30" and rec.verdict != "not-eppo":
            problems.append(f"C30 {rec.verdict}")
        if e.name == "PSL2(7)" and not (rec.verdict == "simple-eppo" and rec.name == "PSL2(7)"):
            problems.append(f"PSL2(7) {rec.verdict}")
    if recognized != ["A5"]:
        problems.append(f"recognized {recognized}")
    detail = _fail_list(problems) if problems else "only A5 recognized; C30 and PSL2(7) rejected"
    return CriterionResult(9, "A5 recognizer", not problems, detail)


# -- 10 -----------------------------------------------------------------------------------

_FACTORS = {
    "PSL2(5)": (3, 5),
    "PSL2(8)": (9, 7),
    "PSL2(17)": (9, 17),
    "Sz(8)": (5, 7, 13),
    "Sz(32)": (25, 31, 41),
}


def criterion_10(opts: RunOptions) -> CriterionResult:
    problems = []
    found = {}
    for sid, factors in _FACTORS.items():
        for k in range(0, 65):
            brute = all((2**k - 1) % f == 0 for f in factors)
            if extension_constraints(sid, 2**k) != brute:
                problems.append(f"{sid} k={k}")
        k = smallest_extension_exponent(sid)
        brute_k = next((k for k in range(1, 65) if all((2**k - 1) % f == 0 for f in factors)), None)
        if k != brute_k:
            problems.append(f"{sid} smallest {k} != {brute_k}")
        found[sid] = k
    for sid, k in (("PSL2(5)", 4), ("PSL2(8)", 6), ("Sz(8)", 12)):
        if not extension_constraints(sid, 2**k):
            problems.append(f"{sid} 2^{k}")
    detail = (_fail_list(problems) if problems else
              "smallest k: " + ", ".join(f"{s} {k}" for s, k in found.items()))
    return CriterionResult(10, "extension arithmetic", not problems, detail)


# -- 11 -----------------------------------------------------------------------------------


def determinism_panel(opts: RunOptions) -> str:
    """Structured records for a fixed panel of groups, used to test reproducibility."""
    from .cli import check_records

    parts = []
    for src in ("catalog:A5", "catalog:M9", "metacyclic p=5 a=1 q=2 b=2 r=4", "genquat n=4"):
        parts.append(format_records(check_records(src, opts.sample_n, opts.seed)))
    if not opts.skip_sampled:
        parts.append(format_records(spectrum_sampled(catalog.build("Sz32"), 2000, opts.seed).records()))
    return "\n".join(parts)


def criterion_11(opts: RunOptions) -> CriterionResult:
    a = determinism_panel(opts)
    b = determinism_panel(opts)
    ok = a == b
    detail = f"panel reports identical ({len(a)} bytes)" if ok else "panel reports differ"
    return CriterionResult(11, "determinism", ok, detail)


CRITERIA = [
    criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
    criterion_7, criterion_8, criterion_9, criterion_10, criterion_11,
]


def run_all(opts: RunOptions, only=None) -> list[CriterionResult]:
    out = []
    for k, fn in enumerate(CRITERIA, start=1):
        if only and k not in only:
            continue
        try:
            out.append(fn(opts))
        except Exception as exc:  # a crash is a failure of that criterion, not of the run
            out.append(CriterionResult(k, fn.__name__, False, f"error: {type(exc).__name__}: {exc}"))
    return out


def report(results: list[CriterionResult], opts: RunOptions) -> str:
    parts = [format_records([("seed", opts.seed), ("sample_n", opts.sample_n),
                             ("skip_sampled", opts.skip_sampled)])]
    parts += [format_records(r.records()) for r in results]
    failed = [r.id for r in results if not r.passed]
    parts.append(format_records([
        ("passed", f"{len(results) - len(failed)}/{len(results)}"),
        ("failed", ",".join(map(str, failed)) or "none"),
    ]))
    return "\n".join(parts)
