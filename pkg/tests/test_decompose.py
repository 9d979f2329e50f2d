import pytest
from hypothesis import given
from hypothesis import strategies as st

from semikit.core import alternating_group, cyclic_group, dicyclic_group, symmetric_group
from semikit.decompose import (
    Labeler,
    abelian_label,
    catalog_entry,
    cyclic_label,
    dicyclic_label,
    dihedral_label,
    external_catalog,
    internal_decompositions,
    invariant_factors,
    is_directly_decomposable,
    nontrivial_products,
    pair_scan_decompositions,
    search_dual_decompositions,
)
from semikit.dihedral import dihedral_group
from semikit.morphisms import find_isomorphism
from semikit.products import direct_product, direct_product_of


def labels(G):
    return {str(e) for e in external_catalog(G)}


@pytest.mark.parametrize(
    "orders, expected",
    [((2, 2), [2, 2]), ((4, 6), [2, 12]), ((2, 3, 5), [30]), ((2, 4, 8), [2, 4, 8]), ((9, 3, 4), [3, 36])],
)
def test_invariant_factors(orders, expected):
    G = direct_product_of([cyclic_group(m) for m in orders])
    assert invariant_factors(G) == expected


def test_label_strings():
    assert str(cyclic_label(6)) == "Z6"
    assert str(dihedral_label(5)) == "D10"
    assert dihedral_label(2) == abelian_label([2, 2])
    assert str(dihedral_label(2)) == "Z2^2"
    assert dihedral_label(1) == cyclic_label(2)
    assert str(dicyclic_label(2)) == "Q8"
    assert str(abelian_label([2, 6])) == "Z2xZ6"


@pytest.mark.parametrize(
    "G, text",
    [
        (dihedral_group(15), "D30"),
        (dicyclic_group(3), "Q12"),
        (direct_product(dihedral_group(3), cyclic_group(2)), "D12"),
        (direct_product(dihedral_group(4), cyclic_group(2)), "D8xZ2"),
        (direct_product(cyclic_group(2), cyclic_group(2)), "Z2^2"),
        (symmetric_group(3), "D6"),
    ],
)
def test_recognized_labels(G, text):
    assert str(Labeler().label_group(G)) == text


def test_opaque_labels_identify_isomorphic_groups():
    lab = Labeler()
    A = lab.label_group(alternating_group(4))
    assert A.opaque
    # A4 inside S4 gets the same opaque label as the standalone A4
    S4 = symmetric_group(4)
    A4_in_S4 = [r.normal for r in internal_decompositions(S4, labels=False) if r.normal.size == 12][0]
    assert lab.label(A4_in_S4) == A


@pytest.mark.parametrize(
    "G",
    [dihedral_group(4), dihedral_group(6), dicyclic_group(2), symmetric_group(4), direct_product(cyclic_group(2), cyclic_group(4))],
    ids=lambda G: G.name,
)
def test_records_match_pair_scan(G):
    for trivial in (False, True):
        records = internal_decompositions(G, include_trivial=trivial, labels=False)
        assert [(r.normal.bits, r.complement.bits, r.is_direct) for r in records] == pair_scan_decompositions(G, trivial)
        for r in records:
            r.verify()


def test_small_catalogs():
    assert labels(dihedral_group(4)) == {"Z4 x| Z2", "Z2^2 x| Z2"}
    assert labels(dicyclic_group(2)) == set()
    assert labels(cyclic_group(7)) == set()
    assert labels(cyclic_group(15)) == {"Z5 x Z3"}
    recs = internal_decompositions(cyclic_group(7), include_trivial=True)
    assert len(recs) == 2 and all(r.is_direct for r in recs)


def test_catalog_entry_orders_direct_pairs():
    a = catalog_entry(cyclic_label(2), dihedral_label(15), True)
    b = catalog_entry(dihedral_label(15), cyclic_label(2), True)
    assert a == b and str(a) == "D30 x Z2"
    c = catalog_entry(cyclic_label(2), dihedral_label(15), False)
    assert str(c) == "Z2 x| D30"


def test_direct_decomposability():
    assert is_directly_decomposable(dihedral_group(6))
    assert not is_directly_decomposable(dihedral_group(4))
    assert not is_directly_decomposable(dicyclic_group(2))
    assert is_directly_decomposable(cyclic_group(6))


def test_nontrivial_products_classes():
    # Z7 x| Z3 has one nonabelian class; Z3 x| Z4 gives Q12
    Z7, Z3, Z4 = cyclic_group(7), cyclic_group(3), cyclic_group(4)
    assert len(nontrivial_products(Z7, Z3)) == 1
    (S,) = nontrivial_products(Z3, Z4)
    assert find_isomorphism(S.group, dicyclic_group(3)) is not None


def test_dual_search_candidates_are_verified():
    D8 = dihedral_group(4)
    V = direct_product(cyclic_group(2), cyclic_group(2))
    found = search_dual_decompositions(D8, V, V, D8)
    for c in found:
        c.record.verify()
        assert find_isomorphism(c.record.normal.as_group(), V) is not None
        assert find_isomorphism(c.record.complement.as_group(), D8) is not None


@given(st.lists(st.sampled_from([2, 3, 4, 5, 6, 8, 9]), min_size=1, max_size=3))
def test_abelian_label_matches_invariants(orders):
    G = direct_product_of([cyclic_group(m) for m in orders])
    if G.order > 200:
        return
    lbl = Labeler().label_group(G)
    assert lbl.order == G.order
    assert lbl == abelian_label(invariant_factors(G))
