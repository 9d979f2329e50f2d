import pytest
from hypothesis import given
from hypothesis import strategies as st

from semikit.core import (
    all_subgroups,
    alternating_group,
    cyclic_group,
    dicyclic_group,
    perm_group,
    symmetric_group,
    trivial_group,
)
from semikit.decompose import invariant_factors
from semikit.dihedral import dihedral_group
from semikit.errors import LimitExceededError
from semikit.mindeg import (
    PrimePowerDecomposition,
    first_degree_drop,
    mu_abelian,
    mu_bounds_check,
    mu_dihedral,
    mu_oracle,
    verify_witness,
)
from semikit.morphisms import find_isomorphism
from semikit.products import TwistingHom, direct_product, direct_product_of, multiplier_automorphism


def brute_mu(G, max_degree=6):
    """Smallest d such that some faithful action on d points exists, by trying S_d images of generators."""
    import itertools

    from semikit.core import Permutation
    from semikit.morphisms import hom_from_generator_images
    from semikit.errors import NotAHomomorphismError

    gens = G.generators
    for d in range(1, max_degree + 1):
        Sd = symmetric_group(d)
        orders = Sd.element_orders
        cands = [[p for p in range(Sd.order) if G.element_orders[g] % orders[p] == 0] for g in gens]
        for imgs in itertools.product(*cands):
            try:
                f = hom_from_generator_images(G, Sd, list(imgs))
            except NotAHomomorphismError:
                continue
            if f.is_injective():
                return d
    return None


def test_prime_power_decomposition():
    d = PrimePowerDecomposition.of(360)
    assert d.pairs == ((2, 3), (3, 2), (5, 1))
    assert d.parts == [8, 9, 5]
    assert d.value() == 360


@pytest.mark.parametrize(
    "G",
    [cyclic_group(4), cyclic_group(6), direct_product(cyclic_group(2), cyclic_group(2)), dihedral_group(3), dihedral_group(4), alternating_group(4)],
    ids=lambda G: G.name,
)
def test_oracle_matches_exhaustive_embedding_search(G):
    assert mu_oracle(G).degree == brute_mu(G)


@pytest.mark.parametrize(
    "G, mu",
    [
        (trivial_group(), 1),
        (cyclic_group(6), 5),
        (cyclic_group(8), 8),
        (cyclic_group(30), 10),
        (direct_product(cyclic_group(6), cyclic_group(2)), 7),
        (dihedral_group(6), 5),
        (dihedral_group(12), 7),
        (dihedral_group(9), 9),
        (dicyclic_group(2), 8),
        (symmetric_group(4), 4),
        (alternating_group(5), 5),
    ],
    ids=lambda v: getattr(v, "name", v),
)
def test_oracle_values(G, mu):
    res = mu_oracle(G)
    assert res.degree == mu
    verify_witness(G, res)


def test_abelian_formula_values():
    assert mu_abelian([30]) == 10
    assert mu_abelian([8]) == 8
    assert mu_abelian([6, 2]) == 7
    assert mu_abelian([]) == 1


ABELIAN_POOL = [
    [2], [3], [4], [6], [12], [30], [60], [2, 2], [2, 4], [2, 6], [3, 3], [2, 2, 2], [4, 4], [2, 10], [3, 9], [2, 2, 6], [5, 10], [2, 2, 2, 2], [2, 30], [6, 6],
]


@pytest.mark.parametrize("orders", ABELIAN_POOL, ids=str)
def test_abelian_formula_matches_oracle(orders):
    G = direct_product_of([cyclic_group(m) for m in orders])
    assert G.order <= 100
    assert mu_abelian(invariant_factors(G)) == mu_abelian(orders) == mu_oracle(G).degree


def test_dihedral_witnesses():
    r6 = mu_dihedral(6)
    assert r6.degree == 5
    assert [str(p) for p in r6.witness_generators] == ["(1,2)(3,4,5)", "(4,5)"]
    two_orbit = perm_group(["(1,2,3)", "(1,2)", "(4,5)"])
    assert find_isomorphism(perm_group(r6.witness_generators), two_orbit) is not None
    r12 = mu_dihedral(12)
    assert r12.degree == 7
    assert find_isomorphism(perm_group(r12.witness_generators), perm_group(["(1,2,3,4)", "(5,6,7)", "(1,3)(5,6)"])) is not None
    assert mu_dihedral(9).degree == 9 == mu_oracle(dihedral_group(9)).degree
    for n in (3, 6, 12, 30):
        verify_witness(dihedral_group(n), mu_dihedral(n))


def test_thresholds():
    assert first_degree_drop(12) == 6
    assert first_degree_drop(12, indecomposable_only=True) == 12
    assert first_degree_drop(11, indecomposable_only=True) is None


def test_bounds():
    Z2, Z7, Z3 = cyclic_group(2), cyclic_group(7), cyclic_group(3)
    assert mu_bounds_check(Z2, Z2) == (4, None, 4)
    b = mu_bounds_check(Z7, Z3, TwistingHom.from_generator_images(Z3, Z7, [multiplier_automorphism(Z7, 2)]))
    assert b == (10, 7, 7)
    for n in range(3, 12):
        Zn = cyclic_group(n)
        b = mu_bounds_check(Zn, Z2, TwistingHom.from_generator_images(Z2, Zn, [multiplier_automorphism(Zn, -1)]))
        assert b.bound_injective == n and b.actual <= n


def test_oracle_limit():
    with pytest.raises(LimitExceededError):
        mu_oracle(dihedral_group(101))
    assert mu_oracle(cyclic_group(12), limit=12).degree == 7


@given(st.sampled_from([dihedral_group(6), dihedral_group(12), symmetric_group(4), dicyclic_group(3), direct_product(cyclic_group(2), dihedral_group(4))]), st.data())
def test_monotone_on_subgroups(G, data):
    S = data.draw(st.sampled_from(all_subgroups(G)))
    assert mu_oracle(S.as_group()).degree <= mu_oracle(G).degree
