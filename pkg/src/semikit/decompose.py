"""Exhaustive internal semidirect decompositions and isomorphism-type labels."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from ._arith import factorize
from .core import FiniteGroup, Subgroup, all_subgroups, check_limit, close, is_normal, normal_subgroups
from .morphisms import IsoFingerprint, find_isomorphism, fingerprint
from .products import SemidirectGroup, TwistingHom, iter_twists, semidirect

# ---------------------------------------------------------------------------
# labels


@dataclass(frozen=True)
class TypeLabel:
    """Isomorphism-type name.

    Non-opaque labels are complete invariants: equal labels mean isomorphic
    groups and different labels mean non-isomorphic ones.  Opaque labels
    carry a serial that is unique per isomorphism class within one
    :class:`Labeler`.
    """

    order: int
    kind: str
    params: tuple = ()
    parts: tuple["TypeLabel", ...] = ()

    @property
    def opaque(self) -> bool:
        return self.kind == "opaque"

    def __str__(self) -> str:
        k, p = self.kind, self.params
        if k == "trivial":
            return "1"
        if k == "cyclic":
            return f"Z{p[0]}"
        if k == "elementary_abelian":
            return f"Z{p[0]}^{p[1]}"
        if k == "dihedral":
            return f"D{2 * p[0]}"
        if k == "dicyclic":
            return f"Q{4 * p[0]}"
        if k == "direct":
            return "x".join(str(q) for q in self.parts)
        return f"G{self.order}#{p[0]}"

    def wrapped(self) -> str:
        s = str(self)
        return f"({s})" if self.kind == "direct" else s


def trivial_label() -> TypeLabel:
    return TypeLabel(1, "trivial")


def cyclic_label(n: int) -> TypeLabel:
    return trivial_label() if n == 1 else TypeLabel(n, "cyclic", (n,))


def dihedral_label(n: int) -> TypeLabel:
    """Label of the dihedral group of order 2n (D2 = Z2, D4 = Z2^2)."""
    if n == 1:
        return cyclic_label(2)
    if n == 2:
        return TypeLabel(4, "elementary_abelian", (2, 2))
    return TypeLabel(2 * n, "dihedral", (n,))


def dicyclic_label(k: int) -> TypeLabel:
    return cyclic_label(4) if k == 1 else TypeLabel(4 * k, "dicyclic", (k,))


def abelian_label(invariant_factors: Sequence[int]) -> TypeLabel:
    inv = sorted(d for d in invariant_factors if d > 1)
    order = int(np.prod(inv)) if inv else 1
    if not inv:
        return trivial_label()
    if len(inv) == 1:
        return cyclic_label(inv[0])
    fp = factorize(inv[-1])
    if len(set(inv)) == 1 and len(fp) == 1 and fp[0][1] == 1:
        return TypeLabel(order, "elementary_abelian", (inv[0], len(inv)))
    parts = []
    for d in sorted(set(inv)):
        c = inv.count(d)
        fd = factorize(d)
        if c > 1 and len(fd) == 1 and fd[0][1] == 1:
            parts.append(TypeLabel(d**c, "elementary_abelian", (d, c)))
        else:
            parts.extend([cyclic_label(d)] * c)
    return TypeLabel(order, "direct", (), tuple(parts))


def invariant_factors(G: FiniteGroup) -> list[int]:
    """Invariant factors of an abelian group from its element orders."""
    orders = G.element_orders
    by_prime = []
    for p, _ in factorize(G.order):
        # #elements of order dividing p^k is p^(sum_i min(k, lambda_i))
        exps = [0]
        k = 1
        while True:
            c = int(np.count_nonzero((p**k) % orders == 0))
            e = 0
            while p**e < c:
                e += 1
            exps.append(e)
            if e == exps[-2]:
                break
            k += 1
        at_least = [exps[i] - exps[i - 1] for i in range(1, len(exps) - 1)]  # #parts >= i
        parts = []
        for i, cnt in enumerate(at_least, start=1):
            nxt = at_least[i] if i < len(at_least) else 0
            parts.extend([i] * (cnt - nxt))
        by_prime.append((p, sorted(parts, reverse=True)))
    width = max((len(parts) for _, parts in by_prime), default=0)
    out = [1] * width
    for p, parts in by_prime:
        for i, a in enumerate(parts):
            out[width - 1 - i] *= p**a
    return sorted(out)


def _primary_parts(lbl: TypeLabel) -> list[int]:
    if lbl.kind == "trivial":
        return []
    if lbl.kind == "cyclic":
        return [p**a for p, a in factorize(lbl.params[0])]
    if lbl.kind == "elementary_abelian":
        return [lbl.params[0]] * lbl.params[1]
    if lbl.kind == "direct":
        return [q for part in lbl.parts for q in _primary_parts(part)]
    raise ValueError(f"not abelian: {lbl}")


def _is_abelian_label(lbl: TypeLabel) -> bool:
    if lbl.kind in ("trivial", "cyclic", "elementary_abelian"):
        return True
    return lbl.kind == "direct" and all(_is_abelian_label(p) for p in lbl.parts)


def _invariants_from_primary(parts: Sequence[int]) -> list[int]:
    by_p: dict[int, list[int]] = {}
    for q in parts:
        p = factorize(q)[0][0]
        by_p.setdefault(p, []).append(q)
    width = max((len(v) for v in by_p.values()), default=0)
    out = [1] * width
    for v in by_p.values():
        for i, q in enumerate(sorted(v, reverse=True)):
            out[width - 1 - i] *= q
    return out


def _dihedral_param(G: FiniteGroup) -> int | None:
    n = G.order // 2
    if G.order % 2 or n < 3 or G.is_abelian:
        return None
    orders, t, inv = G.element_orders, G.table, G.inverse
    invols = np.flatnonzero(orders == 2)
    tried = 0
    for a in np.flatnonzero(orders == n):
        cyc = close([a], G)
        if cyc.bits & tried == cyc.bits:
            continue
        tried |= cyc.bits
        outside = invols[~cyc.mask[invols]]
        if (t[t[outside, a], outside] == inv[a]).any():
            return n
    return None


def _dicyclic_param(G: FiniteGroup) -> int | None:
    if G.order % 4 or G.order < 8 or G.is_abelian:
        return None
    k = G.order // 4
    orders, t, inv = G.element_orders, G.table, G.inverse
    for a in np.flatnonzero(orders == 2 * k):
        a = int(a)
        ak = G.power(a, k)
        cyc = close([a], G)
        xs = np.flatnonzero(~cyc.mask)
        ok = (t[xs, xs] == ak) & (t[t[inv[xs], a], xs] == inv[a])
        if ok.any():
            return k
    return None


def _direct_split(G: FiniteGroup) -> tuple[Subgroup, Subgroup] | None:
    normals = normal_subgroups(G)
    by_size: dict[int, list[Subgroup]] = {}
    for s in normals:
        by_size.setdefault(s.size, []).append(s)
    e_bit = 1 << G.identity
    for N in normals:
        if N.size == 1 or N.size == G.order:
            continue
        for K in by_size.get(G.order // N.size, []):
            if N.bits & K.bits == e_bit:
                return N, K
    return None


@dataclass
class Labeler:
    """Assigns :class:`TypeLabel` values, sharing opaque serials across calls."""

    _opaque: dict[IsoFingerprint, list[FiniteGroup]] = field(default_factory=dict)

    def label_group(self, G: FiniteGroup) -> TypeLabel:
        if "type_label" not in G._cache:
            G._cache["type_label"] = self._recognize(G)
        lbl = G._cache["type_label"]
        return lbl if lbl is not None else self._opaque_label(G)

    def label(self, sub: Subgroup) -> TypeLabel:
        if sub.is_whole():
            return self.label_group(sub.parent)
        return self.label_group(sub.as_group())

    def _recognize(self, G: FiniteGroup) -> TypeLabel | None:
        """Non-opaque label, or ``None`` when the group is not recognized."""
        if G.order == 1:
            return trivial_label()
        if G.is_abelian:
            return abelian_label(invariant_factors(G))
        n = _dihedral_param(G)
        if n is not None:
            return dihedral_label(n)
        k = _dicyclic_param(G)
        if k is not None:
            return dicyclic_label(k)
        split = _direct_split(G)
        if split is not None:
            factors = [self.label(s) for s in split]
            if not any(f.opaque for f in factors):
                return self._combine(G.order, factors)
        return None

    def _combine(self, order: int, factors: Sequence[TypeLabel]) -> TypeLabel:
        nonab: list[TypeLabel] = []
        primary: list[int] = []
        stack = list(factors)
        while stack:
            f = stack.pop()
            if _is_abelian_label(f):
                primary.extend(_primary_parts(f))
            elif f.kind == "direct":
                stack.extend(f.parts)
            else:
                nonab.append(f)
        parts = sorted(nonab, key=lambda t: (t.order, str(t)))
        if primary:
            ab = abelian_label(_invariants_from_primary(primary))
            parts.extend(ab.parts if ab.kind == "direct" else [ab])
        return TypeLabel(order, "direct", (), tuple(parts))

    def _opaque_label(self, G: FiniteGroup) -> TypeLabel:
        fp = fingerprint(G)
        reps = self._opaque.setdefault(fp, [])
        for i, R in enumerate(reps):
            if R is G or find_isomorphism(G, R) is not None:
                serial = i
                break
        else:
            reps.append(G)
            serial = len(reps) - 1
        tag = f"{_fp_tag(fp)}.{serial + 1}"
        return TypeLabel(G.order, "opaque", (tag,))


def _fp_tag(fp: IsoFingerprint) -> str:
    hist = ",".join(f"{o}:{c}" for o, c in fp.element_order_histogram)
    return f"z{fp.center_size}d{fp.derived_subgroup_size}[{hist}]"


def label(sub: Subgroup, labeler: Labeler | None = None) -> TypeLabel:
    return (labeler or Labeler()).label(sub)


# ---------------------------------------------------------------------------
# decompositions


@dataclass(frozen=True)
class DecompositionRecord:
    normal: Subgroup
    complement: Subgroup
    n_label: TypeLabel | None
    h_label: TypeLabel | None
    is_direct: bool

    @property
    def key(self):
        return (self.normal.size, self.normal.members, self.complement.members)

    def verify(self) -> None:
        """Re-check the defining conditions from scratch."""
        G = self.normal.parent
        e_bit = 1 << G.identity
        assert is_normal(self.normal), "normal part is not normal"
        assert self.normal.bits & self.complement.bits == e_bit, "factors intersect nontrivially"
        assert self.normal.size * self.complement.size == G.order, "orders do not multiply to |G|"
        assert close(self.normal.members + self.complement.members, G).size == G.order, "factors do not generate"
        assert self.is_direct == is_normal(self.complement)


def internal_decompositions(
    G: FiniteGroup,
    include_trivial: bool = False,
    labeler: Labeler | None = None,
    labels: bool = True,
    limit: int | None = None,
) -> list[DecompositionRecord]:
    """Every ordered pair (N, H) with N normal, N ∩ H = {e} and |N||H| = |G|."""
    check_limit(G.order, limit)
    if labels and labeler is None:
        labeler = Labeler()
    subs = all_subgroups(G, limit)
    by_size: dict[int, list[Subgroup]] = {}
    for s in subs:
        by_size.setdefault(s.size, []).append(s)
    normal_bits = {s.bits for s in normal_subgroups(G, limit)}
    e_bit = 1 << G.identity
    out = []
    for N in normal_subgroups(G, limit):
        if not include_trivial and (N.size == 1 or N.size == G.order):
            continue
        for H in by_size.get(G.order // N.size, []):
            if N.bits & H.bits != e_bit:
                continue
            out.append(
                DecompositionRecord(
                    N,
                    H,
                    labeler.label(N) if labels else None,
                    labeler.label(H) if labels else None,
                    H.bits in normal_bits,
                )
            )
    out.sort(key=lambda r: r.key)
    return out


def pair_scan_decompositions(G: FiniteGroup, include_trivial: bool = False) -> list[tuple[int, int, bool]]:
    """Independent oracle: scan all subgroup pairs with explicit set arithmetic.

    Returns ``(normal bits, complement bits, direct)`` triples in record order.
    """
    subs = all_subgroups(G)
    t = G.table
    whole = set(range(G.order))

    def normal(S):
        m = set(S.members)
        return all(int(t[t[g, s], G.inverse[g]]) in m for g in range(G.order) for s in m)

    flags = {S.bits: normal(S) for S in subs}
    out = []
    for N in subs:
        if not flags[N.bits]:
            continue
        if not include_trivial and (N.size == 1 or N.size == G.order):
            continue
        nm = N.members
        for H in subs:
            if set(nm) & set(H.members) != {G.identity}:
                continue
            prods = {int(t[a, b]) for a in nm for b in H.members}
            if prods == whole:
                out.append((N, H, flags[H.bits]))
    out.sort(key=lambda r: (r[0].size, r[0].members, r[1].members))
    return [(N.bits, H.bits, d) for N, H, d in out]


class CatalogEntry(NamedTuple):
    normal: TypeLabel
    complement: TypeLabel
    direct: bool

    def __str__(self) -> str:
        op = " x " if self.direct else " x| "
        return self.normal.wrapped() + op + self.complement.wrapped()

    @property
    def sort_key(self):
        return (self.normal.order, str(self.normal), self.complement.order, str(self.complement), self.direct)


def catalog_entry(n_label: TypeLabel, h_label: TypeLabel, direct: bool) -> CatalogEntry:
    """Direct pairs are unordered; they are stored larger factor first."""
    if direct and (h_label.order, str(h_label)) > (n_label.order, str(n_label)):
        n_label, h_label = h_label, n_label
    return CatalogEntry(n_label, h_label, direct)


def external_catalog(G: FiniteGroup, labeler: Labeler | None = None, limit: int | None = None) -> list[CatalogEntry]:
    records = internal_decompositions(G, labeler=labeler or Labeler(), limit=limit)
    entries = {catalog_entry(r.n_label, r.h_label, r.is_direct) for r in records}
    return sorted(entries, key=lambda e: e.sort_key)


def is_directly_decomposable(G: FiniteGroup) -> bool:
    return _direct_split(G) is not None


# ---------------------------------------------------------------------------
# twist searches


@dataclass(frozen=True, eq=False)
class DualCandidate:
    product: SemidirectGroup
    record: DecompositionRecord


def search_dual_decompositions(
    base: FiniteGroup,
    ext: FiniteGroup,
    normal_type: FiniteGroup,
    complement_type: FiniteGroup,
    nontrivial_only: bool = True,
) -> list[DualCandidate]:
    """Products base x| ext that also decompose with factors of the two given types.

    One candidate per isomorphism class of product, in twist enumeration order.
    """
    found: list[DualCandidate] = []
    for tw in iter_twists(ext, base):
        if nontrivial_only and tw.is_trivial():
            continue
        S = semidirect(base, ext, tw)
        if any(find_isomorphism(S.group, c.product.group) is not None for c in found):
            continue
        for r in internal_decompositions(S.group, labels=False):
            if r.normal.size != normal_type.order:
                continue
            if find_isomorphism(r.normal.as_group(), normal_type) is None:
                continue
            if find_isomorphism(r.complement.as_group(), complement_type) is not None:
                found.append(DualCandidate(S, r))
                break
    return found


def nontrivial_products(base: FiniteGroup, ext: FiniteGroup) -> list[SemidirectGroup]:
    """One semidirect product per isomorphism class over all nontrivial twists."""
    out: list[SemidirectGroup] = []
    for tw in iter_twists(ext, base):
        if tw.is_trivial():
            continue
        S = semidirect(base, ext, tw)
        if all(find_isomorphism(S.group, T.group) is None for T in out):
            out.append(S)
    return out
