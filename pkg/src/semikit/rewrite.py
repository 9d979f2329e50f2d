"""Rewriting semidirect products whose base or extending group is a direct product.

Every rewrite returns the rebuilt group together with an explicit coordinate
map from the original, and that map is validated on the full multiplication
table before it is handed back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import FiniteGroup, Subgroup, cyclic_group, subgroup_from_mask
from .errors import NotAProductError, NotDiagonalError, TwistNotTrivialError
from .morphisms import Homomorphism
from .products import (
    SemidirectGroup,
    TwistingHom,
    block_decompose,
    direct_product,
    direct_product_of,
    inversion_automorphism,
    semidirect,
)


@dataclass(frozen=True)
class RewriteResult:
    original: FiniteGroup
    rebuilt: FiniteGroup
    witness: Homomorphism
    derived_kernel: Subgroup | None = None
    # the rebuilt product when it is a semidirect one
    product: SemidirectGroup | None = None


def _verified(original: FiniteGroup, rebuilt: FiniteGroup, images: np.ndarray) -> Homomorphism:
    f = Homomorphism(original, rebuilt, images)
    if not f.is_bijective():
        raise AssertionError("rewrite witness is not bijective")
    return f


def _diagonal_blocks(S: SemidirectGroup) -> tuple[np.ndarray, np.ndarray]:
    """Per-h image tables of phi_11(h) on N1 and phi_22(h) on N2."""
    B = S.base
    if B.factors is None:
        raise NotAProductError("base group was not built as a direct product")
    N1, N2 = B.factors
    b11 = np.empty((S.ext.order, N1.order), dtype=np.int64)
    b22 = np.empty((S.ext.order, N2.order), dtype=np.int64)
    for h in range(S.ext.order):
        blocks = block_decompose(Homomorphism(B, B, S.twist.action[h], check=False))
        if not blocks.is_diagonal():
            raise NotDiagonalError(f"twist of {S.ext.label(h)} mixes the base factors")
        b11[h] = blocks.phi11.images
        b22[h] = blocks.phi22.images
    return b11, b22


def _split_base(S: SemidirectGroup, keep: int):
    if keep not in (1, 2):
        raise ValueError("keep must be 1 or 2")
    b11, b22 = _diagonal_blocks(S)
    N1, N2 = S.base.factors
    H = S.ext
    if keep == 1:
        outer, inner_base, b_out, b_in = N1, N2, b11, b22
    else:
        outer, inner_base, b_out, b_in = N2, N1, b22, b11
    inner = semidirect(inner_base, H, TwistingHom(H, inner_base, b_in))
    # Phi(i, h) = phi_outer(h), independent of the inner base coordinate
    Phi = TwistingHom(inner.group, outer, b_out[np.arange(inner.group.order) % H.order])

    # ((n1, n2), h) -> (o, (i, h))
    g = np.arange(S.group.order)
    b, h = np.divmod(g, H.order)
    n1, n2 = np.divmod(b, N2.order)
    o, i = (n1, n2) if keep == 1 else (n2, n1)
    images = o * inner.group.order + i * H.order + h
    return inner, Phi, outer, images


def _kernel_product_set(inner: SemidirectGroup, b_out_kernel: np.ndarray) -> Subgroup:
    """Embedded inner base times the embedded kernel of the outer block, as a set of products."""
    G = inner.group
    n_part = inner.embed_base(np.arange(inner.base.order))
    h_part = inner.embed_ext(np.flatnonzero(b_out_kernel))
    mask = np.zeros(G.order, dtype=bool)
    mask[G.table[n_part[:, None], h_part[None, :]].ravel()] = True
    return subgroup_from_mask(G, mask)


def shift_base_factor(S: SemidirectGroup, keep: int = 1) -> RewriteResult:
    """(N1 x N2) x| H  ->  N1 x| (N2 x| H) for a diagonal twist.

    ``keep=2`` pulls N2 out instead, giving N2 x| (N1 x| H).  The derived
    kernel Ker(Phi) is checked against the product set of the embedded inner
    base and the embedded kernel of the outer block.
    """
    inner, Phi, outer, images = _split_base(S, keep)
    rebuilt = semidirect(outer, inner.group, Phi)
    witness = _verified(S.group, rebuilt.group, images)
    ker = Phi.kernel()
    fixed = (Phi.action[inner.embed_ext(np.arange(S.ext.order))] == np.arange(outer.order)).all(axis=1)
    expected = _kernel_product_set(inner, fixed)
    if ker != expected:
        raise AssertionError("Ker(Phi) differs from the product of the inner base and the block kernel")
    return RewriteResult(S.group, rebuilt.group, witness, ker, rebuilt)


def split_trivial_factor(S: SemidirectGroup, keep: int = 1) -> RewriteResult:
    """(N1 x N2) x| H  ->  N1 x (N2 x| H) when H acts trivially on N1."""
    inner, Phi, outer, images = _split_base(S, keep)
    if not Phi.is_trivial():
        raise TwistNotTrivialError(f"H acts nontrivially on factor {keep}")
    rebuilt = direct_product(outer, inner.group)
    return RewriteResult(S.group, rebuilt, _verified(S.group, rebuilt, images))


def shift_ext_factor(S: SemidirectGroup, which: int = 1) -> RewriteResult:
    """N x| (H1 x H2)  ->  (N x| H1) x| H2.

    ``which=2`` builds (N x| H2) x| H1 instead.
    """
    if which not in (1, 2):
        raise ValueError("which must be 1 or 2")
    H, N = S.ext, S.base
    if H.factors is None:
        raise NotAProductError("extending group was not built as a direct product")
    H1, H2 = H.factors
    A = S.twist.action
    # action of (h1, e) and (e, h2)
    on1 = A[np.arange(H1.order) * H2.order + H2.identity]
    on2 = A[H1.identity * H2.order + np.arange(H2.order)]
    first, second, a_first, a_second = (H1, H2, on1, on2) if which == 1 else (H2, H1, on2, on1)

    inner = semidirect(N, first, TwistingHom(first, N, a_first))
    k = np.arange(inner.group.order)
    n, h = np.divmod(k, first.order)
    # phi_2(s)(n, h) = (phi(s)(n), h)
    act = a_second[:, n] * first.order + h[None, :]
    rebuilt = semidirect(inner.group, second, TwistingHom(second, inner.group, act))

    g = np.arange(S.group.order)
    n, hh = np.divmod(g, H.order)
    h1, h2 = np.divmod(hh, H2.order)
    f, s = (h1, h2) if which == 1 else (h2, h1)
    images = (n * first.order + f) * second.order + s
    return RewriteResult(S.group, rebuilt.group, _verified(S.group, rebuilt.group, images), None, rebuilt)


# ---------------------------------------------------------------------------
# generalized dihedral groups


@dataclass(frozen=True)
class GeneralizedDihedralSpec:
    """A = Z_m1 + ... + Z_mk, twisted by inversion; orders are kept ascending."""

    summand_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(sorted(int(m) for m in self.summand_orders))
        if not orders:
            raise ValueError("need at least one summand")
        if orders[0] < 2:
            raise ValueError("summand orders must be at least 2")
        object.__setattr__(self, "summand_orders", orders)

    @property
    def order(self) -> int:
        out = 2
        for m in self.summand_orders:
            out *= m
        return out

    def __str__(self) -> str:
        return "D(" + "+".join(f"Z{m}" for m in self.summand_orders) + ")"


def _dihedral_over(A: FiniteGroup, limit: int | None, name: str = "") -> SemidirectGroup:
    C2 = cyclic_group(2)
    tw = TwistingHom.from_generator_images(C2, A, [inversion_automorphism(A)])
    return semidirect(A, C2, tw, limit=limit, name=name)


def generalized_dihedral(spec: GeneralizedDihedralSpec, limit: int | None = None) -> SemidirectGroup:
    """A x| Z_2 with the generator of Z_2 acting by inversion."""
    A = direct_product_of([cyclic_group(m) for m in spec.summand_orders], limit)
    return _dihedral_over(A, limit, name=str(spec))


def gendihedral_split(spec: GeneralizedDihedralSpec, cut: int, keep: int = 1, limit: int | None = None) -> RewriteResult:
    """D(A1 + A2) -> A1 x| D(A2) with A1 the first ``cut`` summands.

    ``keep=2`` gives A2 x| D(A1).  The original is D(A) with its base built as
    the product A1 x A2 so that the cut is a recorded factorization.
    """
    k = len(spec.summand_orders)
    if not 1 <= cut < k:
        raise ValueError(f"cut must satisfy 1 <= cut < {k}, got {cut}")
    orders = spec.summand_orders
    A1 = direct_product_of([cyclic_group(m) for m in orders[:cut]], limit)
    A2 = direct_product_of([cyclic_group(m) for m in orders[cut:]], limit)
    return shift_base_factor(_dihedral_over(direct_product(A1, A2, limit), limit, name=str(spec)), keep)
