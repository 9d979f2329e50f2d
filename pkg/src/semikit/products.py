"""Direct and semidirect products, and block decomposition of automorphisms.

Pair elements are laid out row-major: ``(n, h)`` sits at index
``n * |H| + h``.  Direct products record their two factors on the result so
that blocks can be read off without rediscovering the factorization; n-ary
products are left-nested binary ones.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd
from typing import Iterator, Sequence

import numpy as np

from .core import FiniteGroup, Subgroup, check_limit, subgroup_from_members
from .errors import InvalidTwistError, NotAProductError
from .morphisms import Automorphism, Homomorphism, automorphisms


def _pair_arrays(nN: int, nH: int):
    idx = np.arange(nN * nH)
    return idx // nH, idx % nH


def _pair_labels(A: FiniteGroup, B: FiniteGroup) -> list[str]:
    return [f"({A.label(a)},{B.label(b)})" for a in range(A.order) for b in range(B.order)]


def direct_product(G1: FiniteGroup, G2: FiniteGroup, limit: int | None = None, name: str = "") -> FiniteGroup:
    check_limit(G1.order * G2.order, limit, "construction")
    n2 = G2.order
    a, b = _pair_arrays(G1.order, n2)
    table = G1.table[a[:, None], a[None, :]].astype(np.int64) * n2 + G2.table[b[:, None], b[None, :]]
    gens = [g * n2 + G2.identity for g in G1.generators] + [G1.identity * n2 + h for h in G2.generators]
    perms = None
    if G1.perms is not None and G2.perms is not None:
        d1 = G1.perms.shape[1]
        perms = np.concatenate([G1.perms[a], G2.perms[b] + d1], axis=1)
    return FiniteGroup(
        table,
        gens,
        _pair_labels(G1, G2),
        name=name or f"({G1.name}x{G2.name})",
        factors=(G1, G2),
        perms=perms,
    )


def direct_product_of(groups: Sequence[FiniteGroup], limit: int | None = None) -> FiniteGroup:
    """Left-nested product ((G1 x G2) x G3) x ..."""
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g, limit)
    return out


def product_leaves(G: FiniteGroup) -> tuple[list[FiniteGroup], np.ndarray]:
    """Leaf factors of a nested direct product and the leaf coordinates of every element."""
    if G.factors is None:
        return [G], np.arange(G.order)[:, None]
    A, B = G.factors
    la, ca = product_leaves(A)
    lb, cb = product_leaves(B)
    i = np.arange(G.order)
    return la + lb, np.concatenate([ca[i // B.order], cb[i % B.order]], axis=1)


def leaves_to_index(G: FiniteGroup, coords: np.ndarray) -> np.ndarray:
    """Inverse of :func:`product_leaves` on rows of leaf coordinates."""
    if G.factors is None:
        return coords[:, 0]
    A, B = G.factors
    ka = len(product_leaves(A)[0])
    return leaves_to_index(A, coords[:, :ka]) * B.order + leaves_to_index(B, coords[:, ka:])


# ---------------------------------------------------------------------------
# twisting homomorphisms


class TwistingHom:
    """Homomorphism ``ext -> Aut(base)`` stored as a table.

    ``action[h]`` is the image array of the automorphism attached to ``h``.
    """

    def __init__(self, ext: FiniteGroup, base: FiniteGroup, action, check: bool = True):
        action = np.ascontiguousarray(action, dtype=np.int64)
        if action.shape != (ext.order, base.order):
            raise InvalidTwistError(f"action table must have shape {(ext.order, base.order)}, got {action.shape}")
        action.setflags(write=False)
        self.ext = ext
        self.base = base
        self.action = action
        if check:
            self.validate()

    def validate(self) -> None:
        A = self.action
        H, N = self.ext, self.base
        if not np.array_equal(A[H.identity], np.arange(N.order)):
            raise InvalidTwistError("identity of the extending group must act trivially")
        for h in H.generators:
            try:
                Automorphism(N, A[h])
            except ValueError as exc:
                raise InvalidTwistError(f"image of generator {H.label(h)} is not an automorphism: {exc}") from exc
        lhs = A[H.table]
        rhs = A[np.arange(H.order)[:, None, None], A[None, :, :]]
        bad = np.argwhere((lhs != rhs).any(axis=2))
        if bad.size:
            h1, h2 = bad[0]
            raise InvalidTwistError(f"twist is not a homomorphism at ({H.label(h1)}, {H.label(h2)})")

    @classmethod
    def from_generator_images(cls, ext: FiniteGroup, base: FiniteGroup, gen_images, generators=None) -> "TwistingHom":
        """Extend automorphisms given on the extending group's generators."""
        gens = ext.generators if generators is None else tuple(generators)
        imgs = [np.asarray(a.images if isinstance(a, Homomorphism) else a, dtype=np.int64) for a in gen_images]
        if len(imgs) != len(gens):
            raise InvalidTwistError(f"{len(gens)} generators but {len(imgs)} automorphisms")
        for g, a in zip(gens, imgs):
            if a.shape != (base.order,):
                raise InvalidTwistError(f"automorphism for generator {ext.label(g)} has wrong length")
            try:
                Automorphism(base, a)
            except ValueError as exc:
                raise InvalidTwistError(f"image of generator {ext.label(g)} is not an automorphism: {exc}") from exc
        A = np.full((ext.order, base.order), -1, dtype=np.int64)
        A[ext.identity] = np.arange(base.order)
        queue = [ext.identity]
        for u in queue:
            for g, a in zip(gens, imgs):
                w = int(ext.table[u, g])
                if A[w, 0] < 0:
                    A[w] = A[u][a]
                    queue.append(w)
        if (A < 0).any():
            raise InvalidTwistError("generators do not generate the extending group")
        tw = cls(ext, base, A, check=False)
        tw.validate()
        return tw

    @classmethod
    def trivial(cls, ext: FiniteGroup, base: FiniteGroup) -> "TwistingHom":
        return cls(ext, base, np.tile(np.arange(base.order), (ext.order, 1)), check=False)

    def __call__(self, h: int) -> Automorphism:
        return Automorphism(self.base, self.action[h], check=False)

    def is_trivial(self) -> bool:
        return bool((self.action == np.arange(self.base.order)).all())

    def kernel(self) -> Subgroup:
        fixed = (self.action == np.arange(self.base.order)).all(axis=1)
        return subgroup_from_members(self.ext, np.flatnonzero(fixed))

    def image_size(self) -> int:
        return np.unique(self.action, axis=0).shape[0]

    def is_injective(self) -> bool:
        return self.kernel().is_trivial()


def multiplier_automorphism(Zn: FiniteGroup, u: int) -> Automorphism:
    """``k -> u*k`` on a cyclic group built by :func:`cyclic_group`."""
    n = Zn.order
    if gcd(u, n) != 1:
        raise InvalidTwistError(f"multiplier {u} is not a unit mod {n}")
    return Automorphism(Zn, (np.arange(n) * u) % n)


def inversion_automorphism(A: FiniteGroup) -> Automorphism:
    if not A.is_abelian:
        raise InvalidTwistError("inversion is an automorphism only of abelian groups")
    return Automorphism(A, A.inverse, check=False)


def diagonal_multipliers(base: FiniteGroup, mults: Sequence[int]) -> Automorphism:
    """Automorphism scaling each cyclic leaf of a nested direct product by its own unit."""
    leaves, coords = product_leaves(base)
    if len(mults) != len(leaves):
        raise InvalidTwistError(f"{len(leaves)} cyclic factors but {len(mults)} multipliers")
    new = coords.copy()
    for i, (L, u) in enumerate(zip(leaves, mults)):
        if gcd(int(u), L.order) != 1:
            raise InvalidTwistError(f"multiplier {u} is not a unit mod {L.order}")
        new[:, i] = (coords[:, i] * int(u)) % L.order
    return Automorphism(base, leaves_to_index(base, new))


def iter_twists(ext: FiniteGroup, base: FiniteGroup, pool: Sequence[Automorphism] | None = None) -> Iterator[TwistingHom]:
    """All homomorphisms ``ext -> Aut(base)`` with generator images drawn from ``pool``."""
    pool = automorphisms(base) if pool is None else list(pool)
    gens = ext.generators
    orders = [int(ext.element_orders[g]) for g in gens]
    aut_order = []
    ident = np.arange(base.order)
    for a in pool:
        k, cur = 1, a.images
        while not np.array_equal(cur, ident):
            cur = a.images[cur]
            k += 1
        aut_order.append(k)
    options = [[i for i, k in enumerate(aut_order) if o % k == 0] for o in orders]
    seen = set()
    for choice in itertools.product(*options):
        try:
            tw = TwistingHom.from_generator_images(ext, base, [pool[i] for i in choice])
        except InvalidTwistError:
            continue
        key = tw.action.tobytes()
        if key not in seen:
            seen.add(key)
            yield tw


# ---------------------------------------------------------------------------
# semidirect products


@dataclass(frozen=True, eq=False)
class SemidirectGroup:
    group: FiniteGroup
    twist: TwistingHom

    @property
    def base(self) -> FiniteGroup:
        return self.twist.base

    @property
    def ext(self) -> FiniteGroup:
        return self.twist.ext

    def pair(self, n: int, h: int) -> int:
        return n * self.ext.order + h

    def unpair(self, g: int) -> tuple[int, int]:
        return divmod(int(g), self.ext.order)

    @cached_property
    def base_embedding(self) -> Subgroup:
        """N x {e_H}."""
        e = self.ext.identity
        return subgroup_from_members(self.group, [self.pair(n, e) for n in range(self.base.order)])

    @cached_property
    def ext_embedding(self) -> Subgroup:
        """{e_N} x H."""
        e = self.base.identity
        return subgroup_from_members(self.group, [self.pair(e, h) for h in range(self.ext.order)])

    def embed_base(self, n) -> np.ndarray:
        return np.asarray(n) * self.ext.order + self.ext.identity

    def embed_ext(self, h) -> np.ndarray:
        return self.base.identity * self.ext.order + np.asarray(h)


def semidirect(N: FiniteGroup, H: FiniteGroup, phi: TwistingHom | None = None, limit: int | None = None, name: str = "") -> SemidirectGroup:
    """N x| H with ``(n1, h1)(n2, h2) = (n1 * phi(h1)(n2), h1 h2)``."""
    if phi is None:
        phi = TwistingHom.trivial(H, N)
    if phi.ext is not H or phi.base is not N:
        raise InvalidTwistError("twist was built for different groups")
    check_limit(N.order * H.order, limit, "construction")
    nH = H.order
    n, h = _pair_arrays(N.order, nH)
    A = phi.action
    prod_n = N.table[n[:, None], A[h[:, None], n[None, :]]].astype(np.int64)
    table = prod_n * nH + H.table[h[:, None], h[None, :]]
    gens = [g * nH + H.identity for g in N.generators] + [N.identity * nH + g for g in H.generators]
    G = FiniteGroup(table, gens, _pair_labels(N, H), name=name or f"({N.name}:{H.name})")
    return SemidirectGroup(G, phi)


# ---------------------------------------------------------------------------
# automorphisms of direct products


@dataclass(frozen=True)
class BlockDecomposition:
    """The four homomorphisms phi_ij: G_j -> G_i of an automorphism of G1 x G2."""

    phi11: Homomorphism
    phi12: Homomorphism
    phi21: Homomorphism
    phi22: Homomorphism

    def reassemble(self, G: FiniteGroup) -> np.ndarray:
        G1, G2 = G.factors
        i = np.arange(G.order)
        g1, g2 = i // G2.order, i % G2.order
        first = G1.table[self.phi11.images[g1], self.phi12.images[g2]]
        second = G2.table[self.phi21.images[g1], self.phi22.images[g2]]
        return first.astype(np.int64) * G2.order + second

    def is_diagonal(self) -> bool:
        return self.phi12.is_trivial() and self.phi21.is_trivial()


def block_decompose(alpha: Homomorphism) -> BlockDecomposition:
    G = alpha.domain
    if G.factors is None or alpha.codomain is not G:
        raise NotAProductError("automorphism domain was not built as a direct product")
    G1, G2 = G.factors
    n2 = G2.order
    on_first = alpha.images[np.arange(G1.order) * n2 + G2.identity]
    on_second = alpha.images[G1.identity * n2 + np.arange(n2)]
    blocks = BlockDecomposition(
        phi11=Homomorphism(G1, G1, on_first // n2),
        phi12=Homomorphism(G2, G1, on_second // n2),
        phi21=Homomorphism(G1, G2, on_first % n2),
        phi22=Homomorphism(G2, G2, on_second % n2),
    )
    if not np.array_equal(blocks.reassemble(G), alpha.images):
        raise AssertionError("block reassembly failed")
    return blocks


def is_diagonal(alpha: Homomorphism) -> bool:
    return block_decompose(alpha).is_diagonal()


def diagonal_automorphism(G: FiniteGroup, phi11: Homomorphism, phi22: Homomorphism) -> Automorphism:
    """``(g1, g2) -> (phi11(g1), phi22(g2))`` on a recorded direct product."""
    if G.factors is None:
        raise NotAProductError("group was not built as a direct product")
    G1, G2 = G.factors
    if phi11.domain is not G1 or phi22.domain is not G2:
        raise ValueError("blocks do not match the factors")
    if not (phi11.is_bijective() and phi22.is_bijective()):
        raise ValueError("diagonal blocks must be bijective")
    i = np.arange(G.order)
    return Automorphism(G, phi11.images[i // G2.order] * G2.order + phi22.images[i % G2.order], check=False)


def conjugation_action(S: SemidirectGroup) -> np.ndarray:
    """Conjugation of the embedded base by the embedded extending group, read back in base indices."""
    G = S.group
    h = S.embed_ext(np.arange(S.ext.order))[:, None]
    n = S.embed_base(np.arange(S.base.order))[None, :]
    conj = G.table[G.table[h, n], G.inverse[h]]
    base_idx, ext_idx = np.divmod(conj, S.ext.order)
    if (ext_idx != S.ext.identity).any():
        raise AssertionError("embedded base is not normal")
    return base_idx
