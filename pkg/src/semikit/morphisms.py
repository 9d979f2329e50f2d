"""Homomorphisms, kernels and brute-force isomorphism testing."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, fields
from math import prod
from typing import Sequence

import numpy as np

from . import _kernels
from .core import FiniteGroup, Subgroup, check_limit, close, subgroup_from_mask
from .errors import NotAHomomorphismError


class Homomorphism:
    """A total map between materialized groups that preserves products.

    Construction validates the full multiplication table unless ``check`` is
    false (used only for maps that are validated right after).
    """

    def __init__(self, domain: FiniteGroup, codomain: FiniteGroup, images, check: bool = True):
        images = np.ascontiguousarray(images, dtype=np.int64)
        if images.shape != (domain.order,):
            raise ValueError(f"expected {domain.order} images, got shape {images.shape}")
        if images.size and (images.min() < 0 or images.max() >= codomain.order):
            raise ValueError("image index out of range")
        images.setflags(write=False)
        self.domain = domain
        self.codomain = codomain
        self.images = images
        if check:
            self.validate()

    def validate(self) -> None:
        a, b = (int(v) for v in _kernels.hom_violation(self.domain.table, self.codomain.table, self.images))
        if a >= 0:
            raise NotAHomomorphismError((a, b))

    def __call__(self, g: int) -> int:
        return int(self.images[g])

    def __repr__(self) -> str:
        return f"<Homomorphism {self.domain!r} -> {self.codomain!r}>"

    def is_injective(self) -> bool:
        return np.unique(self.images).size == self.domain.order

    def is_surjective(self) -> bool:
        return np.unique(self.images).size == self.codomain.order

    def is_bijective(self) -> bool:
        return self.domain.order == self.codomain.order and self.is_injective()

    def is_trivial(self) -> bool:
        return bool((self.images == self.codomain.identity).all())

    def kernel(self) -> Subgroup:
        return subgroup_from_mask(self.domain, self.images == self.codomain.identity)

    def image(self) -> Subgroup:
        mask = np.zeros(self.codomain.order, dtype=bool)
        mask[self.images] = True
        return subgroup_from_mask(self.codomain, mask)

    def then(self, other: "Homomorphism") -> "Homomorphism":
        """``other`` after ``self``."""
        if other.domain is not self.codomain:
            raise ValueError("maps do not compose")
        return Homomorphism(self.domain, other.codomain, other.images[self.images], check=False)

    def inverse(self) -> "Homomorphism":
        if not self.is_bijective():
            raise ValueError("map is not bijective")
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.domain.order)
        return Homomorphism(self.codomain, self.domain, inv, check=False)

    def on_generators(self) -> tuple[int, ...]:
        return tuple(int(self.images[g]) for g in self.domain.generators)


class Automorphism(Homomorphism):
    def __init__(self, group: FiniteGroup, images, check: bool = True):
        super().__init__(group, group, images, check=check)
        if not self.is_injective():
            raise ValueError("automorphism must be bijective")

    @classmethod
    def identity(cls, group: FiniteGroup) -> "Automorphism":
        return cls(group, np.arange(group.order), check=False)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self`` after ``other``."""
        return Automorphism(self.domain, self.images[other.images], check=False)


def _extend(domain: FiniteGroup, codomain: FiniteGroup, gens: Sequence[int], imgs: Sequence[int]) -> np.ndarray:
    out = np.full(domain.order, -1, dtype=np.int64)
    out[domain.identity] = codomain.identity
    queue = [domain.identity]
    for u in queue:
        fu = out[u]
        for g, y in zip(gens, imgs):
            w = domain.table[u, g]
            if out[w] < 0:
                out[w] = codomain.table[fu, y]
                queue.append(int(w))
    if (out < 0).any():
        raise ValueError("generators do not generate the domain")
    return out


def hom_from_generator_images(
    domain: FiniteGroup,
    codomain: FiniteGroup,
    gen_images: Sequence[int],
    generators: Sequence[int] | None = None,
) -> Homomorphism:
    """Extend an assignment on generators to the whole domain and validate it.

    Raises :class:`NotAHomomorphismError` naming a pair whose product is not
    preserved when the assignment violates a relation.
    """
    gens = domain.generators if generators is None else tuple(generators)
    if len(gens) != len(gen_images):
        raise ValueError(f"{len(gens)} generators but {len(gen_images)} images")
    return Homomorphism(domain, codomain, _extend(domain, codomain, gens, [int(y) for y in gen_images]))


def kernel(h: Homomorphism) -> Subgroup:
    return h.kernel()


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class IsoFingerprint:
    order: int
    abelian: bool
    element_order_histogram: tuple[tuple[int, int], ...]
    center_size: int
    derived_subgroup_size: int


def center(G: FiniteGroup) -> Subgroup:
    return subgroup_from_mask(G, (G.table == G.table.T).all(axis=1))


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    key = "derived"
    if key not in G._cache:
        t, inv = G.table, G.inverse
        comm = t[t[inv[:, None], inv[None, :]], t]  # a^-1 b^-1 a b
        G._cache[key] = close(np.unique(comm), G)
    return G._cache[key]


def fingerprint(G: FiniteGroup) -> IsoFingerprint:
    key = "fingerprint"
    if key not in G._cache:
        hist = tuple(sorted(Counter(int(o) for o in G.element_orders).items()))
        G._cache[key] = IsoFingerprint(
            order=G.order,
            abelian=G.is_abelian,
            element_order_histogram=hist,
            center_size=center(G).size,
            derived_subgroup_size=derived_subgroup(G).size,
        )
    return G._cache[key]


def separating_invariant(G: FiniteGroup, H: FiniteGroup) -> str | None:
    """Name of the first fingerprint field that differs, in pruning order."""
    fg, fh = fingerprint(G), fingerprint(H)
    for f in fields(IsoFingerprint):
        if getattr(fg, f.name) != getattr(fh, f.name):
            return f.name
    return None


def centralizer_sizes(G: FiniteGroup) -> np.ndarray:
    key = "centralizer_sizes"
    if key not in G._cache:
        G._cache[key] = (G.table == G.table.T).sum(axis=1)
    return G._cache[key]


def minimal_generating_sequence(G: FiniteGroup) -> tuple[int, ...]:
    """Greedy short generating tuple: each step adds the element whose join is largest.

    Ties go to larger element order, then smaller index.
    """
    key = "min_gens"
    if key in G._cache:
        return G._cache[key]
    gens: list[int] = []
    cur = close([], G)
    orders = G.element_orders
    while cur.size < G.order:
        best = None
        seen: set[int] = set()
        for g in np.lexsort((np.arange(G.order), -orders)):
            g = int(g)
            if g in cur:
                continue
            s = close(gens + [g], G)
            if s.bits in seen:
                continue
            seen.add(s.bits)
            if best is None or s.size > best[1].size:
                best = (g, s)
                if s.size == G.order:
                    break
        gens.append(best[0])
        cur = best[1]
    G._cache[key] = tuple(gens)
    return G._cache[key]


# ---------------------------------------------------------------------------
# search


def _candidates(G: FiniteGroup, H: FiniteGroup, gens: Sequence[int]):
    og, oh = G.element_orders, H.element_orders
    cg, ch = centralizer_sizes(G), centralizer_sizes(H)
    lists = [np.flatnonzero((oh == og[g]) & (ch == cg[g])) for g in gens]
    width = max((c.size for c in lists), default=0)
    cands = np.zeros((len(gens), max(width, 1)), dtype=np.int64)
    for i, c in enumerate(lists):
        cands[i, : c.size] = c
    counts = np.array([c.size for c in lists], dtype=np.int64)
    return cands, counts


def _search(G: FiniteGroup, H: FiniteGroup, capacity: int) -> tuple[tuple[int, ...], np.ndarray]:
    gens = minimal_generating_sequence(G)
    if not gens:
        return gens, np.zeros((1, 0), dtype=np.int64)
    cands, counts = _candidates(G, H, gens)
    out = np.zeros((capacity, len(gens)), dtype=np.int64)
    found = _kernels.backtrack_maps(
        G.table, H.table, np.array(gens, dtype=np.int64), cands, counts, G.identity, H.identity, out
    )
    return gens, out[:found]


def find_isomorphism(G: FiniteGroup, H: FiniteGroup, limit: int | None = None) -> Homomorphism | None:
    """Witness isomorphism ``G -> H`` or ``None``.

    Fingerprints are compared first; then generator images are searched in
    ascending index order, so the witness is the lexicographically least image
    tuple for the chosen generators.
    """
    check_limit(G.order, limit)
    check_limit(H.order, limit)
    if separating_invariant(G, H) is not None:
        return None
    gens, sols = _search(G, H, 1)
    if sols.shape[0] == 0:
        return None
    h = hom_from_generator_images(G, H, sols[0].tolist(), generators=gens)
    if not h.is_bijective():
        raise AssertionError("search returned a non-bijective map")
    return h


def are_isomorphic(G: FiniteGroup, H: FiniteGroup, limit: int | None = None) -> bool:
    return find_isomorphism(G, H, limit) is not None


def automorphisms(G: FiniteGroup, max_count: int = 1 << 20) -> list[Automorphism]:
    """Every automorphism of ``G``, identity first.

    Used to enumerate twisting data for small base groups; no group structure
    on the result is computed.
    """
    key = "automorphisms"
    if key in G._cache:
        return G._cache[key]
    gens = minimal_generating_sequence(G)
    if not gens:
        out = [Automorphism.identity(G)]
    else:
        cands, counts = _candidates(G, G, gens)
        cap = int(min(prod(int(c) for c in counts), max_count))
        _, sols = _search(G, G, cap)
        if sols.shape[0] == max_count:
            raise ValueError("automorphism count exceeds max_count")
        out = [Automorphism(G, _extend(G, G, gens, s.tolist()), check=False) for s in sols]
        ident = np.arange(G.order)
        out.sort(key=lambda a: (not np.array_equal(a.images, ident), a.images.tolist()))
    G._cache[key] = out
    return out
