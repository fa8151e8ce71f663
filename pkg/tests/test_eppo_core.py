import numpy as np
import pytest

from eppo.catalog import a5, psl2
from eppo.constructors import (
    MetacyclicSpec,
    cyclic_group,
    generalized_quaternion,
    metacyclic_group,
    sl2_3,
    symmetric_group,
)
from eppo.corpus import corpus
from eppo.eppo_core import (
    check_corollary_divisibility,
    check_counting_theorem,
    count_elements_of_order,
    divisor_closure,
    is_eppo,
    is_eppo_centralizer,
    is_eppo_commuting_pairs,
    is_eppo_exhaustive,
    is_eppo_sampled,
    is_eppo_sylow_centralizer,
    spectrum,
    spectrum_sampled,
)
from eppo.errors import HypothesisUnmet, ThresholdExceeded
from eppo.numbers import is_prime_power
from eppo.perm_engine import (
    cyclic_subgroup,
    limits,
    normal_subgroups,
    quotient,
    sylow_subgroup,
    trivial_subgroup,
    whole_group,
)


def test_spectrum_examples():
    assert spectrum(a5()).orders == (1, 2, 3, 5)
    assert spectrum(cyclic_group(6)).orders == (1, 2, 3, 6)
    assert spectrum(psl2(7)).orders == (1, 2, 3, 4, 7)


def test_sampled_spectrum():
    assert spectrum_sampled(a5(), 0).orders == (1,)
    s = spectrum_sampled(a5(), 10_000, seed=1)
    assert s.orders == (1, 2, 3, 5) and s.sampled and s.seed == 1
    assert spectrum_sampled(a5(), 200, seed=5).orders == spectrum_sampled(a5(), 200, seed=5).orders


def test_spectra_are_divisor_closed():
    for e in corpus()[:40]:
        orders = spectrum(e.build()).orders
        assert divisor_closure(orders) == list(orders)


def test_exhaustive_examples():
    assert is_eppo_exhaustive(symmetric_group(3)).is_eppo
    v = is_eppo_exhaustive(cyclic_group(6))
    assert v.is_eppo is False and v.witness["order"] == 6
    v = is_eppo_exhaustive(sl2_3())
    assert v.is_eppo is False and v.witness["order"] == 6


def test_commuting_pairs_examples():
    assert is_eppo_commuting_pairs(symmetric_group(3)).is_eppo
    v = is_eppo_commuting_pairs(cyclic_group(6))
    assert not v.is_eppo
    assert {v.witness["x_order"], v.witness["y_order"]} == {2, 3}
    assert is_eppo_commuting_pairs(generalized_quaternion(3)).is_eppo
    with limits(pairwise=10), pytest.raises(ThresholdExceeded):
        is_eppo_commuting_pairs(a5())


def test_centralizer_examples():
    assert is_eppo_centralizer(symmetric_group(3)).is_eppo
    assert not is_eppo_centralizer(cyclic_group(6)).is_eppo
    assert is_eppo_centralizer(a5()).is_eppo


def test_sylow_centralizer_examples():
    assert is_eppo_sylow_centralizer(a5()).is_eppo
    v = is_eppo_sylow_centralizer(cyclic_group(6))
    assert not v.is_eppo and v.witness["centralizer_order"] == 6
    assert is_eppo_sylow_centralizer(psl2(9)).is_eppo


def test_sampled_verdict_never_claims_eppo():
    v = is_eppo_sampled(a5(), 1000, seed=2)
    assert v.is_eppo is None and v.status == "sampled-consistent"
    v = is_eppo_sampled(cyclic_group(30), 1000, seed=2)
    assert v.is_eppo is False and is_prime_power(v.witness["order"]) is False


def test_count_examples():
    assert count_elements_of_order(a5(), 1) == 1
    assert count_elements_of_order(symmetric_group(3), 2) == 3
    assert count_elements_of_order(a5(), 5) == 24


def test_counting_theorem_examples():
    S3 = symmetric_group(3)
    A3 = normal_subgroups(S3)[1]
    assert check_counting_theorem(S3, A3, 2)
    assert check_counting_theorem(S3, trivial_subgroup(S3), 3)
    assert check_counting_theorem(a5(), sylow_subgroup(a5(), 2), 5)
    with pytest.raises(HypothesisUnmet):
        check_counting_theorem(S3, A3, 3)
    with pytest.raises(HypothesisUnmet):
        check_counting_theorem(cyclic_group(6), trivial_subgroup(cyclic_group(6)), 2)


def test_corollary_examples():
    S3 = symmetric_group(3)
    assert check_corollary_divisibility(S3, normal_subgroups(S3)[1])
    assert check_corollary_divisibility(S3, whole_group(S3))
    F20 = metacyclic_group(MetacyclicSpec(5, 1, 2, 2, 2))
    C5 = next(N for N in normal_subgroups(F20) if N.order == 5)
    assert check_corollary_divisibility(F20, C5)
    with pytest.raises(HypothesisUnmet):
        check_corollary_divisibility(S3, cyclic_subgroup(S3, S3.generators[1]))
    with pytest.raises(HypothesisUnmet):
        check_corollary_divisibility(S3, trivial_subgroup(S3))


def test_subgroups_and_quotients_of_eppo_groups_are_eppo():
    rng = np.random.default_rng(0)
    for e in corpus():
        G = e.build()
        if G.order > 400 or not is_eppo(G):
            continue
        for N in normal_subgroups(G):
            assert is_eppo(quotient(G, N)), (e.name, N.order)
        t = G.table()
        for i in rng.integers(0, t.size, size=5):
            assert is_eppo(cyclic_subgroup(G, t.element(int(i))))
