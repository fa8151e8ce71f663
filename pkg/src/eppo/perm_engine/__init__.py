from .group import FiniteGroup, PermGroup, StabilizerChain, group_from_generators
from .io import format_group, load_group, parse_group
from .limits import DEFAULT_PAIRWISE_THRESHOLD, DEFAULT_THRESHOLD, LIMITS, limits
from .permutation import Permutation, element_order, format_cycles, parse_cycles
from .subgroups import (
    ConjugacyClass,
    Subgroup,
    center,
    centralizer,
    conjugacy_classes,
    coset_labels,
    cyclic_subgroup,
    derived_series,
    derived_subgroup,
    is_abelian,
    is_cyclic,
    is_generalized_quaternion,
    is_p_group,
    is_simple,
    is_solvable,
    lower_central_series,
    nilpotency_class,
    normal_closure,
    normal_subgroups,
    normalizer,
    quotient,
    stabilizer,
    subgroup_generated,
    sylow_subgroup,
    trivial_subgroup,
    whole_group,
)
from .table import GroupTable


def enumerate_elements(G: FiniteGroup):
    """Yield every element of ``G`` once; refuses groups above the threshold."""
    t = G.table("enumeration")
    return (t.element(i) for i in range(t.size))


def membership(G: FiniteGroup, g) -> bool:
    return G.contains(g)
