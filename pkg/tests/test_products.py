import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from invariants import check_diagonal_kernel, check_semidirect
from semikit.core import cyclic_group, dicyclic_group
from semikit.dihedral import dihedral_group
from semikit.errors import InvalidTwistError, NotAProductError
from semikit.morphisms import Homomorphism, automorphisms, find_isomorphism
from semikit.products import (
    TwistingHom,
    block_decompose,
    diagonal_automorphism,
    diagonal_multipliers,
    direct_product,
    direct_product_of,
    inversion_automorphism,
    is_diagonal,
    iter_twists,
    multiplier_automorphism,
    product_leaves,
    semidirect,
)


def test_direct_product_layout():
    A, B = cyclic_group(3), cyclic_group(4)
    G = direct_product(A, B)
    assert G.factors == (A, B)
    g, h = 2 * 4 + 1, 1 * 4 + 3
    assert G.mul(g, h) == ((2 + 1) % 3) * 4 + (1 + 3) % 4


def test_nested_leaves_round_trip():
    G = direct_product_of([cyclic_group(2), cyclic_group(3), cyclic_group(5)])
    leaves, coords = product_leaves(G)
    assert [L.order for L in leaves] == [2, 3, 5]
    from semikit.products import leaves_to_index

    assert np.array_equal(leaves_to_index(G, coords), np.arange(30))


def test_classical_dihedral_as_semidirect():
    Z7, C2 = cyclic_group(7), cyclic_group(2)
    S = semidirect(Z7, C2, TwistingHom.from_generator_images(C2, Z7, [multiplier_automorphism(Z7, -1)]))
    check_semidirect(S)
    assert find_isomorphism(S.group, dihedral_group(7)) is not None


def test_trivial_twist_gives_direct_product():
    A, B = cyclic_group(4), cyclic_group(6)
    S = semidirect(A, B)
    assert np.array_equal(S.group.table, direct_product(A, B).table)


def test_invalid_twists_rejected():
    Z7, Z2, Z3 = cyclic_group(7), cyclic_group(2), cyclic_group(3)
    # 3 has order 6 mod 7, so it cannot be the image of an element of order 2
    with pytest.raises(InvalidTwistError):
        TwistingHom.from_generator_images(Z2, Z7, [multiplier_automorphism(Z7, 3)])
    with pytest.raises(InvalidTwistError):
        multiplier_automorphism(Z7, 7)
    with pytest.raises(InvalidTwistError):
        TwistingHom(Z3, Z7, np.zeros((3, 7)))
    with pytest.raises(InvalidTwistError):
        inversion_automorphism(dihedral_group(3))


def test_twist_kernel_and_image():
    Z7, Z6 = cyclic_group(7), cyclic_group(6)
    tw = TwistingHom.from_generator_images(Z6, Z7, [multiplier_automorphism(Z7, 3)])
    assert tw.is_injective() and tw.image_size() == 6
    tw2 = TwistingHom.from_generator_images(Z6, Z7, [multiplier_automorphism(Z7, 2)])
    assert tw2.kernel().members == (0, 3)


def test_iter_twists_counts():
    # Hom(Z2, Aut(Z7) = Z6) has 2 elements, Hom(Z3, Aut(Z7)) has 3
    Z7 = cyclic_group(7)
    assert len(list(iter_twists(cyclic_group(2), Z7))) == 2
    assert len(list(iter_twists(cyclic_group(3), Z7))) == 3
    # Hom(Z2 x Z2, Aut(Z2 x Z2) = S3) = 1 + 3*3 (trivial, kernel order 2 onto each involution) + 0
    V = direct_product(cyclic_group(2), cyclic_group(2))
    assert len(list(iter_twists(V, V))) == 10


def test_block_decomposition():
    B = direct_product(cyclic_group(7), cyclic_group(9))
    alpha = diagonal_multipliers(B, [2, 4])
    blocks = block_decompose(alpha)
    assert blocks.is_diagonal()
    assert blocks.phi11.images.tolist() == [(2 * k) % 7 for k in range(7)]
    assert blocks.phi22.images.tolist() == [(4 * k) % 9 for k in range(9)]
    # swapping the factors of Z2 x Z2 is not diagonal
    V = direct_product(cyclic_group(2), cyclic_group(2))
    swap = Homomorphism(V, V, [0, 2, 1, 3])
    assert not is_diagonal(swap)
    assert np.array_equal(block_decompose(swap).reassemble(V), swap.images)
    with pytest.raises(NotAProductError):
        block_decompose(Homomorphism(cyclic_group(4), cyclic_group(4), [0, 3, 2, 1]))


def test_diagonal_automorphism_builder():
    A, B = cyclic_group(5), dihedral_group(3)
    G = direct_product(A, B)
    f = diagonal_automorphism(G, multiplier_automorphism(A, 2), automorphisms(B)[1])
    assert is_diagonal(f)


def test_diagonal_kernel_example():
    B = direct_product(cyclic_group(7), cyclic_group(9))
    Z6 = cyclic_group(6)
    # generator acts by (-1, 4): orders 2 and 3, kernels {0,2,4} and {0,3}
    tw = TwistingHom.from_generator_images(Z6, B, [diagonal_multipliers(B, [6, 4])])
    S = semidirect(B, Z6, tw)
    assert check_diagonal_kernel(S)
    assert tw.kernel().is_trivial()


FACTORS = [cyclic_group(n) for n in (2, 3, 4, 5, 6)] + [dihedral_group(n) for n in (3, 4)] + [dicyclic_group(2)]


@given(st.sampled_from(FACTORS), st.sampled_from(FACTORS[:6]), st.data())
def test_random_semidirect_invariants(N, H, data):
    twists = list(iter_twists(H, N))
    tw = data.draw(st.sampled_from(twists))
    check_semidirect(semidirect(N, H, tw))
