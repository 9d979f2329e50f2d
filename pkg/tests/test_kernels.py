import numpy as np
import pytest

from semikit import _kernels as K
from semikit.core import cyclic_group, dicyclic_group, symmetric_group
from semikit.dihedral import dihedral_group
from semikit.morphisms import minimal_generating_sequence

needs_numba = pytest.mark.skipif(K.nb_closure is None, reason="numba not installed")

GROUPS = [cyclic_group(12), dihedral_group(7), dicyclic_group(3), symmetric_group(4)]


def _broken_table(n=6):
    # Z6 with two products swapped: still a Latin square, no longer associative
    t = np.array(cyclic_group(n).table)
    t[1, 2], t[1, 3] = t[1, 3], t[1, 2]
    t[2, 2], t[2, 3] = t[2, 3], t[2, 2]
    return t.astype(np.int32)


@needs_numba
@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_compiled_matches_numpy(G):
    t, inv, e = G.table, G.inverse, G.identity
    rng = np.random.default_rng(0)
    for _ in range(5):
        gens = rng.choice(G.order, size=2).astype(np.int64)
        assert np.array_equal(K.nb_closure(t, gens, e), K.np_closure(t, gens, e))
        mask = K.np_closure(t, gens, e)
        assert K.nb_is_normal(t, inv, mask) == K.np_is_normal(t, inv, mask)
        assert np.array_equal(K.nb_core(t, inv, mask), K.np_core(t, inv, mask))
    assert np.array_equal(K.nb_element_orders(t, e), K.np_element_orders(t, e))
    assert list(K.nb_first_nonassociative(t)) == list(K.np_first_nonassociative(t)) == [-1, -1, -1]
    images = np.zeros(G.order, dtype=np.int64) + e
    assert list(K.nb_hom_violation(t, t, images)) == list(K.np_hom_violation(t, t, images))


@needs_numba
def test_compiled_matches_numpy_on_bad_input():
    t = _broken_table()
    assert list(K.nb_first_nonassociative(t)) == list(K.np_first_nonassociative(t)) != [-1, -1, -1]
    Z6 = cyclic_group(6)
    bad = np.arange(6, dtype=np.int64)
    bad[1] = 2
    assert list(K.nb_hom_violation(Z6.table, Z6.table, bad)) == list(K.np_hom_violation(Z6.table, Z6.table, bad))


@needs_numba
@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_backtrack_paths_agree(G):
    gens = np.array(minimal_generating_sequence(G), dtype=np.int64)
    cands = np.tile(np.arange(G.order, dtype=np.int64), (gens.size, 1))
    counts = np.full(gens.size, G.order, dtype=np.int64)
    out_nb = np.zeros((500, gens.size), dtype=np.int64)
    out_np = np.zeros_like(out_nb)
    a = K.nb_backtrack_maps(G.table, G.table, gens, cands, counts, G.identity, G.identity, out_nb)
    b = K.np_backtrack_maps(G.table, G.table, gens, cands, counts, G.identity, G.identity, out_np)
    assert a == b
    assert np.array_equal(out_nb[:a], out_np[:b])
