import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from semikit._arith import divisors, num_divisors, sigma, unitary_divisors
from semikit.core import all_subgroups, is_normal
from semikit.decompose import external_catalog, internal_decompositions as brute_decompositions
from semikit.dihedral import (
    DihedralElement,
    dihedral_group,
    external_catalog_entries,
    external_decompositions,
    internal_decompositions,
    reflection,
    subgroup_A,
    subgroup_B,
    subgroup_catalog,
)
from semikit.morphisms import Homomorphism, find_isomorphism
from semikit.products import conjugation_action


def test_arith_helpers():
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert num_divisors(30) == 8 and sigma(30) == 72
    assert unitary_divisors(12) == [1, 3, 4, 12]


@given(st.integers(1, 40), st.data())
def test_element_arithmetic_matches_table(n, data):
    G = dihedral_group(n)
    g = data.draw(st.integers(0, 2 * n - 1))
    h = data.draw(st.integers(0, 2 * n - 1))
    eg = DihedralElement(g % n, g // n)
    eh = DihedralElement(h % n, h // n)
    assert eg.mul(eh, n).index(n) == G.mul(g, h)


@pytest.mark.parametrize("n", [3, 4, 5, 8, 12])
def test_relations_and_realization(n):
    G = dihedral_group(n)
    G.validate()
    a, x = G.generators
    assert G.element_orders[a] == n and G.element_orders[x] == 2
    assert G.mul(G.mul(x, a), x) == G.inv(a)
    # the permutation rows form a faithful right action
    P = G.perms
    for g in range(G.order):
        for h in (a, x):
            assert np.array_equal(P[G.mul(g, h)], P[h][P[g]])
    assert len({tuple(r) for r in P.tolist()}) == G.order


@pytest.mark.parametrize("n", range(3, 21))
def test_subgroup_catalog(n):
    cat = subgroup_catalog(n)
    a = [c for c in cat if c.id.kind == "A"]
    b = [c for c in cat if c.id.kind == "B"]
    assert len(a) == num_divisors(n) and len(b) == sigma(n)
    lattice = all_subgroups(dihedral_group(n))
    assert {c.subgroup.bits for c in cat} == {s.bits for s in lattice}
    assert len(cat) == len(lattice)
    for c in cat:
        assert c.normal == is_normal(c.subgroup)


def test_subgroup_shapes():
    n = 12
    G = dihedral_group(n)
    assert find_isomorphism(subgroup_B(n, 3, 1).as_group(), dihedral_group(3)) is not None
    assert subgroup_A(n, 4).size == 4
    assert reflection(n, 5) in subgroup_B(n, 6, 1)
    assert subgroup_B(n, 6, 3) == subgroup_B(n, 6, 1)


@pytest.mark.parametrize("n", range(3, 16))
def test_internal_classification_matches_brute_force(n):
    mine = [(r.normal.bits, r.complement.bits, r.is_direct) for r in internal_decompositions(n)]
    brute = [(r.normal.bits, r.complement.bits, r.is_direct) for r in brute_decompositions(dihedral_group(n), labels=False)]
    assert mine == brute
    with_trivial = internal_decompositions(n, include_trivial=True)
    assert len(with_trivial) == len(brute_decompositions(dihedral_group(n), include_trivial=True, labels=False))


@pytest.mark.parametrize("n", range(3, 21))
def test_external_shapes_match_catalog(n):
    assert external_catalog_entries(n) == external_catalog(dihedral_group(n))


@pytest.mark.parametrize("n", [6, 10, 12, 15, 30])
def test_external_shapes_build(n):
    G = dihedral_group(n)
    for shape in external_decompositions(n):
        S = shape.build()
        assert S.group.order == 2 * n
        assert find_isomorphism(S.group, G) is not None, str(shape)
        assert np.array_equal(conjugation_action(S), S.twist.action)


def test_small_n_rejected():
    with pytest.raises(ValueError):
        internal_decompositions(2)
    with pytest.raises(ValueError):
        external_decompositions(2)
