import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eppo.catalog import a5, psl2, suzuki
from eppo.constructors import generalized_quaternion, symmetric_group
from eppo.errors import ParseError, ThresholdExceeded
from eppo.perm_engine import (
    PermGroup,
    Permutation,
    center,
    centralizer,
    conjugacy_classes,
    derived_series,
    element_order,
    enumerate_elements,
    format_group,
    is_simple,
    is_solvable,
    limits,
    membership,
    normal_subgroups,
    parse_cycles,
    parse_group,
    quotient,
    sylow_subgroup,
)


def P(n, *cycles):
    return Permutation.from_cycles(n, [list(c) for c in cycles])


def brute_closure(gens, n):
    seen = {Permutation.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def test_order_examples():
    assert PermGroup([], 5).order == 1
    assert PermGroup([P(5, (0, 1, 2, 3, 4))], 5).order == 5
    assert PermGroup([P(5, (0, 1, 2, 3, 4)), P(5, (0, 1, 2))], 5).order == 60


def test_element_order_examples():
    assert element_order(Permutation.identity(5)) == 1
    assert element_order(P(5, (0, 1), (2, 3, 4))) == 6
    assert element_order(P(5, (0, 1, 2, 3, 4))) == 5


def test_composition_is_left_to_right():
    a, b = P(3, (0, 1)), P(3, (1, 2))
    assert (a * b)(0) == b(a(0))


perm_lists = st.lists(st.permutations(range(6)), min_size=1, max_size=3)


@given(perm_lists)
def test_schreier_sims_matches_closure(images):
    gens = [Permutation(list(im)) for im in images]
    G = PermGroup(gens, 6)
    elems = brute_closure(gens, 6)
    assert G.order == len(elems)
    assert set(enumerate_elements(G)) == elems
    for g in itertools.islice(elems, 10):
        assert membership(G, g)


@given(perm_lists)
def test_class_equation(images):
    G = PermGroup([Permutation(list(im)) for im in images], 6)
    classes = conjugacy_classes(G)
    assert sum(c.size for c in classes) == G.order
    assert all(G.order % c.size == 0 for c in classes)
    assert all(G.order % N.order == 0 for N in normal_subgroups(G))


def test_enumeration_refused_above_threshold():
    with pytest.raises(ThresholdExceeded, match="threshold"):
        next(enumerate_elements(suzuki(32)))
    with limits(threshold=10), pytest.raises(ThresholdExceeded):
        a5().table()


def test_membership_examples():
    G = a5()
    assert membership(G, Permutation.identity(5))
    assert not membership(G, P(5, (0, 1)))
    assert all(membership(G, g) for g in G.generators)


def test_centralizers():
    G = a5()
    assert centralizer(G, Permutation.identity(5)).order == 60
    assert centralizer(G, P(5, (0, 1, 2, 3, 4))).order == 5
    assert centralizer(symmetric_group(3), P(3, (0, 1))).order == 2


def test_class_sizes():
    assert sorted(c.size for c in conjugacy_classes(a5())) == [1, 12, 12, 15, 20]
    assert sorted(c.size for c in conjugacy_classes(symmetric_group(3))) == [1, 2, 3]
    C5 = PermGroup([P(5, (0, 1, 2, 3, 4))], 5)
    assert all(c.size == 1 for c in conjugacy_classes(C5))


def test_normal_subgroups_and_simplicity():
    assert [N.order for N in normal_subgroups(a5())] == [1, 60]
    assert [N.order for N in normal_subgroups(symmetric_group(3))] == [1, 3, 6]
    assert [N.order for N in normal_subgroups(symmetric_group(4))] == [1, 4, 12, 24]
    assert is_simple(a5())
    assert center(a5()).order == 1
    assert center(generalized_quaternion(3)).order == 2


def test_derived_series():
    assert not is_solvable(a5())
    assert [H.order for H in derived_series(symmetric_group(3))] == [6, 3, 1]


def test_sylow_orders():
    assert sylow_subgroup(a5(), 2).order == 4
    assert sylow_subgroup(psl2(7), 7).order == 7
    Q = generalized_quaternion(4)
    assert sylow_subgroup(Q, 2).order == 16


def test_quotient_order():
    S4 = symmetric_group(4)
    V = normal_subgroups(S4)[1]
    assert quotient(S4, V).order == 6


def test_group_file_roundtrip():
    G = a5()
    H = parse_group(format_group(G))
    assert H.order == 60
    assert set(H.generators) == set(G.generators)


def test_group_file_format():
    G = parse_group("# the cyclic group of order 6\n6\n(1 2 3 4 5 6)\n")
    assert G.order == 6
    assert parse_cycles("(1 2)(3 4)", 4) == P(4, (0, 1), (2, 3))
    with pytest.raises(ParseError):
        parse_group("3\n(1 2 4)\n")


def test_sample_is_seeded():
    G = psl2(17)
    a, _ = G.sample(500, np.random.default_rng(3))
    b, _ = G.sample(500, np.random.default_rng(3))
    assert np.array_equal(a, b)
    assert set(np.unique(a)) <= {1, 2, 3, 4, 8, 9, 17}
