import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_mul, gf_rem

from eppo.errors import ParseError
from eppo.gf_linalg import (
    CONWAY,
    Matrix,
    field_make,
    field_of_order,
    format_matrix_group,
    has_eigenvalue_one,
    is_monomial,
    matrix_group_closure,
    monomial_lemma_check,
    parse_matrix_group,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (13, 1), (2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (5, 2)]

fields = st.sampled_from(FIELDS).map(lambda pk: field_make(*pk))


@st.composite
def field_and_elements(draw, n=3):
    f = draw(fields)
    return f, [draw(st.integers(0, f.q - 1)) for _ in range(n)]


def test_field_sizes():
    assert field_make(7).q == 7
    assert field_make(2, 5).q == 32
    assert field_of_order(9).mult_order(field_of_order(9).primitive_element()) == 8


@pytest.mark.parametrize("pk", FIELDS)
def test_primitive_element_generates(pk):
    f = field_make(*pk)
    g = f.primitive_element()
    assert len({f.pow(g, e) for e in range(f.q - 1)}) == f.q - 1


@given(field_and_elements())
def test_field_axioms(fe):
    f, (a, b, c) = fe
    assert f.add(a, b) == f.add(b, a)
    assert f.mul(a, b) == f.mul(b, a)
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.add(a, f.neg(a)) == 0
    if a:
        assert f.mul(a, f.inv(a)) == 1


@given(field_and_elements(2))
def test_frobenius_is_additive(fe):
    f, (a, b) = fe
    p = f.p
    assert f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p))


@given(field_and_elements(2))
def test_multiplication_matches_polynomial_oracle(fe):
    f, (a, b) = fe
    if f.k == 1:
        assert f.mul(a, b) == a * b % f.p
        return
    modulus = list(reversed(CONWAY[(f.p, f.k)]))
    pa = list(reversed(f.coefficients(a)))
    pb = list(reversed(f.coefficients(b)))
    prod = gf_rem(gf_mul(pa, pb, f.p, ZZ), modulus, f.p, ZZ)
    coeffs = list(reversed([int(x) for x in prod]))
    assert f.coefficients(f.mul(a, b)) == tuple(coeffs + [0] * (f.k - len(coeffs)))


@st.composite
def invertible(draw):
    f = draw(fields)
    n = draw(st.integers(1, 4))
    rows = [[draw(st.integers(0, f.q - 1)) for _ in range(n)] for _ in range(n)]
    M = Matrix(f, rows)
    if M.det() == 0:
        M = M + Matrix.identity(f, n)
    return M


@given(invertible())
def test_inverse_and_det(M):
    if M.det() == 0:
        with pytest.raises(ZeroDivisionError):
            M.inverse()
        return
    I = Matrix.identity(M.field, M.nrows)
    assert M @ M.inverse() == I
    assert M.inverse() @ M == I
    f = M.field
    assert (M @ M).det() == f.mul(M.det(), M.det())


@given(invertible())
def test_nullspace_vectors_are_killed(M):
    A = M - Matrix.identity(M.field, M.nrows)
    basis = A.nullspace()
    assert all(not any(A.apply(v)) for v in basis)
    assert (len(basis) > 0) == has_eigenvalue_one(M)


def test_det_examples():
    f = field_make(5)
    assert Matrix.identity(f, 3).det() == 1
    assert Matrix.diagonal(f, [2, 3]).det() == 1


def test_eigenvalue_one_examples():
    f = field_make(3)
    assert has_eigenvalue_one(Matrix.identity(f, 2))
    assert not has_eigenvalue_one(Matrix.companion(f, [1, 0]))
    assert has_eigenvalue_one(Matrix.permutation(f, [1, 0, 2]))


def test_monomial_examples():
    f = field_make(7)
    a = 3
    M = Matrix(f, [[0, a], [f.inv(a), 0]])
    assert is_monomial(M)
    assert monomial_lemma_check(M, 2)
    assert is_monomial(Matrix.diagonal(f, [2, 3]))
    N = Matrix(f, [[0, 0, 2], [3, 0, 0], [0, f.inv(6), 0]])
    assert monomial_lemma_check(N, 3)
    with pytest.raises(ValueError):
        monomial_lemma_check(Matrix.diagonal(f, [2, 1]), 2)


def test_closure_examples():
    f = field_make(3)
    assert len(matrix_group_closure([Matrix.companion(f, [1, 0])])) == 4
    Q8 = matrix_group_closure([Matrix(f, [[0, 2], [1, 0]]), Matrix(f, [[1, 1], [1, 2]])])
    assert len(Q8) == 8
    assert Q8[0].is_identity()
    assert len(matrix_group_closure([Matrix.identity(f, 2)])) == 1
    SL = matrix_group_closure([Matrix(f, [[1, 1], [0, 1]]), Matrix(f, [[1, 0], [1, 1]])])
    assert len(SL) == 24


def test_matrix_file_roundtrip():
    f = field_make(2, 2)
    gens = [Matrix(f, [[0, 1], [1, 0]]), Matrix(f, [[2, 0], [0, 3]])]
    g2, parsed = parse_matrix_group(format_matrix_group(f, gens))
    assert g2 == f and parsed == gens
    _, m = parse_matrix_group("GF(4)\n(0,1) 0 0 (1,1)\n")
    assert m[0][0, 0] == 2 and m[0][1, 1] == 3
    with pytest.raises(ParseError):
        parse_matrix_group("GF(6)\n1 0 0 1\n")
    with pytest.raises(ParseError):
        parse_matrix_group("GF(3)\n1 0 1\n")
