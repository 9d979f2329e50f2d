"""Closed-form dihedral machinery.

D_2n = <a, x | a^n = e, x^2 = e, xax = a^-1>.  The element a^i x^s sits at
index ``i + n*s``, so rotations occupy ``0..n-1`` and reflections
``n..2n-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ._arith import divisors, unitary_divisors
from .core import FiniteGroup, Subgroup, cyclic_group, subgroup_from_members, whole, trivial_subgroup
from .decompose import CatalogEntry, DecompositionRecord, TypeLabel, catalog_entry, cyclic_label, dihedral_label
from .morphisms import hom_from_generator_images
from .products import SemidirectGroup, TwistingHom, multiplier_automorphism, semidirect


@dataclass(frozen=True)
class DihedralElement:
    rotation: int
    flip: int

    def mul(self, other: "DihedralElement", n: int) -> "DihedralElement":
        j = -other.rotation if self.flip else other.rotation
        return DihedralElement((self.rotation + j) % n, (self.flip + other.flip) % 2)

    def index(self, n: int) -> int:
        return self.rotation + n * self.flip


def _word(i: int, s: int) -> str:
    out = "" if i == 0 else ("a" if i == 1 else f"a^{i}")
    out += "x" if s else ""
    return out or "e"


@lru_cache(maxsize=None)
def dihedral_group(n: int) -> FiniteGroup:
    """D_2n of order 2n; generators (a, x)."""
    if n < 1:
        raise ValueError("n must be positive")
    idx = np.arange(2 * n)
    i, s = idx % n, idx // n
    rot = (i[:, None] + np.where(s[:, None] == 1, -i[None, :], i[None, :])) % n
    table = rot + n * (s[:, None] ^ s[None, :])
    perms = None
    if n >= 3:
        # right action k -> g^-1 . k with a^i x^s acting on Z_n as k -> i + (-1)^s k
        k = np.arange(n)
        inv_i = np.where(s == 1, i, -i) % n
        perms = (inv_i[:, None] + np.where(s[:, None] == 1, -k[None, :], k[None, :])) % n
    return FiniteGroup(table, [1 % n, n], [_word(a, b) for a, b in zip(i, s)], name=f"D{2 * n}", perms=perms)


def rotation(n: int, i: int) -> int:
    return i % n


def reflection(n: int, r: int) -> int:
    """Index of a^r x."""
    return r % n + n


# ---------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class DihedralSubgroupId:
    kind: str  # "A" or "B"
    m: int
    r: int | None = None

    def __str__(self) -> str:
        return f"A_{self.m}" if self.kind == "A" else f"B_{{{2 * self.m},{self.r}}}"


def subgroup_A(n: int, m: int, G: FiniteGroup | None = None) -> Subgroup:
    """A_m = <a^(n/m)>, cyclic of order m."""
    if n % m:
        raise ValueError(f"{m} does not divide {n}")
    G = G or dihedral_group(n)
    d = n // m
    return subgroup_from_members(G, [rotation(n, d * j) for j in range(m)])


def subgroup_B(n: int, m: int, r: int, G: FiniteGroup | None = None) -> Subgroup:
    """B_{2m,r} = <a^(n/m), a^r x>, dihedral of order 2m; r is reduced mod n/m."""
    if n % m:
        raise ValueError(f"{m} does not divide {n}")
    G = G or dihedral_group(n)
    d = n // m
    r %= d
    rots = [rotation(n, d * j) for j in range(m)]
    refl = [reflection(n, d * j + r) for j in range(m)]
    return subgroup_from_members(G, rots + refl)


@dataclass(frozen=True)
class CatalogSubgroup:
    id: DihedralSubgroupId
    subgroup: Subgroup
    normal: bool


def subgroup_catalog(n: int) -> list[CatalogSubgroup]:
    """All A_m (d(n) of them) and all B_{2m,r} (sigma(n) of them) with normality flags."""
    G = dihedral_group(n)
    out = [CatalogSubgroup(DihedralSubgroupId("A", m), subgroup_A(n, m, G), True) for m in divisors(n)]
    for m in divisors(n):
        for r in range(n // m):
            normal = m == n or 2 * m == n
            out.append(CatalogSubgroup(DihedralSubgroupId("B", m, r), subgroup_B(n, m, r, G), normal))
    return out


# ---------------------------------------------------------------------------
# external decompositions


@dataclass(frozen=True)
class ExternalShape:
    """One external decomposition type X x| Y of D_2n.

    kinds: ``classical`` (Z_n x| Z_2), ``cyclic_by_dihedral`` (Z_m x| D_{2n/m}
    for a unitary divisor 1 < m < n, m != 2), ``dihedral_by_z2`` (D_n x| Z_2)
    and ``dihedral_times_z2`` (D_n x Z_2).
    """

    n: int
    kind: str
    m: int | None
    normal: TypeLabel
    complement: TypeLabel
    direct: bool
    twist: str

    def entry(self) -> CatalogEntry:
        return catalog_entry(self.normal, self.complement, self.direct)

    def __str__(self) -> str:
        return str(self.entry())

    def build(self) -> SemidirectGroup:
        """Realize the shape as an external product with the stated twist."""
        n = self.n
        if self.kind == "classical":
            Z, C2 = cyclic_group(n), cyclic_group(2)
            return semidirect(Z, C2, TwistingHom.from_generator_images(C2, Z, [multiplier_automorphism(Z, -1)]))
        if self.kind == "cyclic_by_dihedral":
            Z, D = cyclic_group(self.m), dihedral_group(n // self.m)
            tw = TwistingHom.from_generator_images(
                D, Z, [multiplier_automorphism(Z, 1), multiplier_automorphism(Z, -1)]
            )
            return semidirect(Z, D, tw)
        D, C2 = dihedral_group(n // 2), cyclic_group(2)
        if self.kind == "dihedral_by_z2":
            a, x = D.generators
            alpha = hom_from_generator_images(D, D, [D.inv(a), D.mul(a, x)])
            return semidirect(D, C2, TwistingHom.from_generator_images(C2, D, [alpha.images]))
        return semidirect(D, C2)


def external_decompositions(n: int) -> list[ExternalShape]:
    if n < 3:
        raise ValueError("the dihedral classification needs n >= 3")
    out = [ExternalShape(n, "classical", n, cyclic_label(n), cyclic_label(2), False, "1 -> (k -> -k)")]
    for m in unitary_divisors(n):
        # m = 2 only yields the direct form D_n x Z_2 (Aut(Z_2) is trivial)
        if m in (1, 2, n):
            continue
        out.append(
            ExternalShape(n, "cyclic_by_dihedral", m, cyclic_label(m), dihedral_label(n // m), False, "a -> id, x -> (k -> -k)")
        )
    if n % 2 == 0:
        out.append(ExternalShape(n, "dihedral_by_z2", None, dihedral_label(n // 2), cyclic_label(2), False, "1 -> (a -> a^-1, x -> ax)"))
        if n % 4:
            out.append(ExternalShape(n, "dihedral_times_z2", None, dihedral_label(n // 2), cyclic_label(2), True, "trivial"))
    return out


def external_catalog_entries(n: int) -> list[CatalogEntry]:
    return sorted({s.entry() for s in external_decompositions(n)}, key=lambda e: e.sort_key)


# ---------------------------------------------------------------------------
# internal decompositions


def internal_decompositions(n: int, include_trivial: bool = False) -> list[DecompositionRecord]:
    """Every internal decomposition of D_2n, produced from the classification."""
    if n < 3:
        raise ValueError("the dihedral classification needs n >= 3")
    G = dihedral_group(n)
    out = []
    for m in unitary_divisors(n):
        if m == 1 and not include_trivial:
            continue
        k = n // m  # B_{2k, r} with r in Z_m
        for r in range(m):
            direct = k == n or 2 * k == n
            out.append(DecompositionRecord(subgroup_A(n, m, G), subgroup_B(n, k, r, G), cyclic_label(m), dihedral_label(k), direct))
    if n % 2 == 0:
        half = n // 2
        for i in (0, 1):
            N = subgroup_B(n, half, i, G)
            for r in range(n):
                if r % 2 != i:
                    out.append(DecompositionRecord(N, subgroup_B(n, 1, r, G), dihedral_label(half), cyclic_label(2), False))
            if n % 4:
                out.append(DecompositionRecord(N, subgroup_A(n, 2, G), dihedral_label(half), cyclic_label(2), True))
    if include_trivial:
        out.append(DecompositionRecord(whole(G), trivial_subgroup(G), dihedral_label(n), cyclic_label(1), True))
    out.sort(key=lambda r: r.key)
    return out
