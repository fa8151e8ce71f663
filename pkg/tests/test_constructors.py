import pytest
from hypothesis import given
from hypothesis import strategies as st

from eppo.constructors import (
    MetacyclicSpec,
    SemidirectSpec,
    cyclic_group,
    dihedral_group,
    find_metacyclic_r,
    fixed_point_free,
    generalized_quaternion,
    metacyclic_group,
    metacyclic_rs,
    named_h,
    parse_constructor,
    quaternion_matrices,
    semidirect_product,
    sl2_3,
)
from eppo.corpus import metacyclic_grid
from eppo.eppo_core import is_eppo, spectrum
from eppo.errors import ParseError
from eppo.gf_linalg import Matrix, field_make
from eppo.perm_engine import is_generalized_quaternion, is_p_group, sylow_subgroup

PRIMES = (2, 3, 5, 7, 13, 17)


def brute_mult_order(r, m):
    return next(k for k in range(1, m + 1) if pow(r, k, m) == 1)


@pytest.mark.parametrize("p", PRIMES)
@pytest.mark.parametrize("q", PRIMES)
@pytest.mark.parametrize("alpha,beta", [(1, 1), (1, 2), (2, 1), (2, 2)])
def test_find_r_matches_brute_force(p, q, alpha, beta):
    if p == q:
        return
    m = p**alpha
    valid = [r for r in range(2, m) if r % p and brute_mult_order(r, m) == q**beta]
    assert find_metacyclic_r(p, alpha, q, beta) == (valid[0] if valid else None)
    assert (find_metacyclic_r(p, alpha, q, beta) is not None) == ((p - 1) % q**beta == 0)


def test_find_r_examples():
    assert find_metacyclic_r(3, 1, 2, 1) == 2
    assert find_metacyclic_r(7, 1, 3, 1) == 2
    assert find_metacyclic_r(5, 1, 3, 1) is None


def test_metacyclic_examples():
    G = metacyclic_group(MetacyclicSpec(3, 1, 2, 1, 2))
    assert G.order == 6 and spectrum(G).orders == (1, 2, 3)
    F20 = metacyclic_group(MetacyclicSpec(5, 1, 2, 2, 2))
    assert F20.order == 20 and spectrum(F20).orders == (1, 2, 4, 5)
    bad = metacyclic_group(MetacyclicSpec(5, 1, 2, 2, 4))
    assert not is_eppo(bad)
    assert 10 in spectrum(bad).orders


def test_metacyclic_rejects_invalid_r():
    with pytest.raises(ValueError):
        metacyclic_group(MetacyclicSpec(7, 1, 3, 1, 3))


@given(st.sampled_from(metacyclic_grid()))
def test_metacyclic_tables_are_groups(spec):
    G = metacyclic_group(spec)
    assert G.order == spec.p**spec.alpha * spec.q**spec.beta
    assert G.check_axioms(samples=300)
    a, b = G.generators
    assert G.multiply(G.multiply(b, a), G.invert(b)) == _power(G, a, spec.r)


def _power(G, x, e):
    out = G.identity
    for _ in range(e):
        out = G.multiply(out, x)
    return out


def test_metacyclic_rs_contains_valid_orders():
    for r in metacyclic_rs(13, 1, 2, 2):
        assert brute_mult_order(r, 13) in (1, 2, 4)


@pytest.mark.parametrize("build", [lambda: cyclic_group(12), lambda: dihedral_group(18), sl2_3,
                                   lambda: generalized_quaternion(5),
                                   lambda: semidirect_product(named_h("Q8", 5, 2))])
def test_table_groups_satisfy_axioms(build):
    G = build()
    assert G.check_axioms()
    R = G.regular_representation()
    assert R.order == G.order


def test_fixed_point_free_examples():
    f = field_make(3)
    assert fixed_point_free(SemidirectSpec(f, 2, [])).fixed_point_free
    assert fixed_point_free(named_h("C4", 3, 2)).fixed_point_free
    swap = SemidirectSpec(f, 2, [Matrix.permutation(f, [1, 0])])
    assert not fixed_point_free(swap).fixed_point_free


def test_semidirect_examples():
    G = semidirect_product(named_h("C4", 3, 2))
    assert G.order == 36 and is_eppo(G)
    M = semidirect_product(named_h("Q8", 3, 2))
    assert M.order == 72 and is_eppo(M)
    assert spectrum(M).orders == (1, 2, 3, 4)
    f = field_make(3)
    trivial = semidirect_product(SemidirectSpec(f, 1, [Matrix(f, [[1]])], cyclic_order=2))
    assert trivial.order == 6 and not is_eppo(trivial)
    rep = fixed_point_free(SemidirectSpec(f, 1, [Matrix(f, [[1]])], cyclic_order=2))
    assert not rep.faithful


@pytest.mark.parametrize("q", [3, 5, 7, 11])
def test_quaternion_matrices(q):
    f = field_make(q)
    i, j = quaternion_matrices(f)
    minus = Matrix.identity(f, 2).scale(q - 1)
    assert i @ i == minus and j @ j == minus and i @ j @ i.inverse() == j.inverse()


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_generalized_quaternion(n):
    G = generalized_quaternion(n)
    assert G.order == 2**n
    assert int((G.table().orders == 2).sum()) == 1
    assert is_generalized_quaternion(sylow_subgroup(G, 2))
    assert is_eppo(G) and is_p_group(G, 2)
    assert max(spectrum(G).orders) == 2 ** (n - 1)


def test_quaternion_recognizer_rejects_cyclic():
    assert not is_generalized_quaternion(cyclic_group(8))
    assert not is_generalized_quaternion(dihedral_group(8))


def test_parse_constructor():
    assert parse_constructor("metacyclic p=7 a=1 q=3 b=1").order == 21
    assert parse_constructor("metacyclic p=7 a=1 q=3 b=1 r=2").order == 21
    assert parse_constructor("semidirect q=3 m=2 H=Q8").order == 72
    assert parse_constructor("semidirect q=3 m=2 H=C4").order == 36
    assert parse_constructor("genquat n=3").order == 8
    for bad in ("metacyclic p=5 a=1 q=3 b=1", "genquat n=x", "nonsense n=1", "metacyclic p=7 q"):
        with pytest.raises(ParseError):
            parse_constructor(bad)


def test_parse_constructor_matrix_file(tmp_path):
    path = tmp_path / "h.mat"
    path.write_text("GF(3)\n0 2 1 0\n1 1 1 2\n")
    assert parse_constructor(f"semidirect q=3 m=2 H=file:{path}").order == 72
