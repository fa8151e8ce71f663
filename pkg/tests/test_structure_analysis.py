import pytest

from eppo import catalog
from eppo.constructors import (
    MetacyclicSpec,
    cyclic_group,
    generalized_quaternion,
    metacyclic_group,
    named_h,
    semidirect_product,
    symmetric_group,
)
from eppo.errors import HypothesisUnmet
from eppo.perm_engine import center, nilpotency_class
from eppo.structure_analysis import (
    chief_series,
    classify,
    supersolvable_iff_check,
    extension_constraints,
    format_factors,
    hall_shape_check,
    has_normal_prime_subgroup,
    is_supersolvable,
    noncentral_abelian_normal,
    exponent_order_check,
    smallest_extension_exponent,
    t_class_bound,
    quaternion_sylow_check,
    chief_pattern_check,
)


def F20():
    return metacyclic_group(MetacyclicSpec(5, 1, 2, 2, 2))


def C7_C3():
    return metacyclic_group(MetacyclicSpec(7, 1, 3, 1, 2))


def test_chief_series_examples():
    assert sorted(chief_series(cyclic_group(6)).factors) == [2, 3]
    s3 = chief_series(symmetric_group(3))
    assert s3.factors == [2, 3] and str(s3) == "[2; 3]"
    m9 = chief_series(catalog.m9())
    assert m9.factors == [2, 2, 2, 9] and str(m9) == "[2,2,2; 3^2]"
    assert format_factors([2, 2, 5]) == "[2,2; 5]"


def test_pattern_m9_quaternion_case():
    rep = chief_pattern_check(catalog.m9())
    assert rep.passed and rep.case == "quaternion"
    assert rep.parameters["b"] == 2 and rep.parameters["b_i"] == [2]
    assert rep.parameters["alpha"] == 3 and rep.parameters["q"] == 3


def test_pattern_sylow_cases():
    rep = chief_pattern_check(F20())
    assert rep.passed and rep.case == "sylow"
    assert rep.parameters["p"] == 2 and rep.parameters["q"] == 5
    assert rep.parameters["b"] == 1 and rep.parameters["k"] == 1
    assert rep.parameters["nilpotency_class"] == 1
    rep = chief_pattern_check(C7_C3())
    assert rep.passed and rep.parameters["p"] == 3 and rep.parameters["q"] == 7
    assert rep.chief.factors == [3, 7]


def test_pattern_general_case():
    rep = chief_pattern_check(symmetric_group(4))
    assert rep.passed and rep.case == "general"
    assert rep.parameters["gamma"] == 1 and rep.parameters["b"] == 2


def test_pattern_not_applicable():
    assert not chief_pattern_check(catalog.a5()).applicable
    assert not chief_pattern_check(cyclic_group(6)).applicable
    assert not chief_pattern_check(generalized_quaternion(3)).applicable


def test_hall_shape_examples():
    assert hall_shape_check(catalog.m9(), 3)
    assert hall_shape_check(symmetric_group(3), 3)
    assert hall_shape_check(F20(), 5)
    with pytest.raises(HypothesisUnmet):
        hall_shape_check(catalog.a5(), 5)


def test_quaternion_sylow_examples():
    clauses = quaternion_sylow_check(catalog.m9())
    assert all(c.ok for c in clauses)
    assert clauses[0].status == "passed"
    assert all(c.ok for c in quaternion_sylow_check(generalized_quaternion(3)))
    assert all(c.status == "vacuous" for c in quaternion_sylow_check(catalog.a5()))


def test_noncentral_abelian_normal_examples():
    assert noncentral_abelian_normal(symmetric_group(3)).order == 3
    assert noncentral_abelian_normal(catalog.m9()).order == 9
    assert noncentral_abelian_normal(F20()).order == 5
    assert noncentral_abelian_normal(generalized_quaternion(3)).order == 4
    with pytest.raises(HypothesisUnmet):
        noncentral_abelian_normal(cyclic_group(5))


def test_exponent_order_examples():
    r = exponent_order_check(C7_C3())
    assert (r.p, r.alpha, r.q, r.beta) == (3, 1, 7, 1) and r.holds
    assert exponent_order_check(F20()).holds
    assert exponent_order_check(semidirect_product(named_h("C8", 3, 2))).holds
    with pytest.raises(HypothesisUnmet):
        exponent_order_check(catalog.m9())


def test_supersolvable_examples():
    S3 = symmetric_group(3)
    assert is_supersolvable(S3) and has_normal_prime_subgroup(S3)
    M9 = catalog.m9()
    assert not is_supersolvable(M9) and not has_normal_prime_subgroup(M9)
    Q16 = generalized_quaternion(4)
    assert is_supersolvable(Q16) and has_normal_prime_subgroup(Q16)
    assert all(supersolvable_iff_check(G) for G in (S3, M9, Q16, F20()))


def test_nilpotency_class_examples():
    assert nilpotency_class(cyclic_group(9)) == 1
    assert nilpotency_class(generalized_quaternion(3)) == 2
    assert center(generalized_quaternion(4)).order == 2


def test_extension_constraints():
    assert extension_constraints("PSL2(5)", 16)
    assert extension_constraints("PSL2(8)", 64)
    assert extension_constraints("Sz(8)", 4096)
    assert not extension_constraints("PSL2(5)", 8)
    assert smallest_extension_exponent("PSL2(17)") == 24
    assert smallest_extension_exponent("Sz(32)") == 20
    with pytest.raises(ValueError):
        extension_constraints("PSL2(5)", 12)
    with pytest.raises(ValueError):
        extension_constraints("A6", 16)


def test_t_class_bound():
    assert t_class_bound(generalized_quaternion(3))
    assert not t_class_bound(generalized_quaternion(4))
    with pytest.raises(HypothesisUnmet):
        t_class_bound(cyclic_group(6))


def test_classify_examples():
    rec = classify(catalog.a5())
    assert rec.verdict == "a5-recognized" and all(rec.evidence.values())
    rec = classify(catalog.psl2(7))
    assert rec.verdict == "simple-eppo" and rec.name == "PSL2(7)"
    rec = classify(cyclic_group(30))
    assert rec.verdict == "not-eppo" and rec.witness["order"] == 30
    rec = classify(symmetric_group(3))
    assert rec.verdict == "solvable-eppo" and str(rec.chief) == "[2; 3]"
    rec = classify(catalog.build("PSL2(17)"))
    assert rec.verdict == "simple-eppo" and rec.name == "PSL2(17)"


def test_classify_sampled_sz32():
    rec = classify(catalog.build("Sz32"), sample_n=20_000, seed=7)
    assert rec.verdict == "simple-eppo" and rec.name == "Sz(32)"
    assert rec.evidence["mode"] == "sampled-consistent"
