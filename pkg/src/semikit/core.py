"""Materialized finite groups, permutations and subgroups.

Elements of a :class:`FiniteGroup` are the dense indices ``0..order-1``; the
multiplication is a precomputed Cayley table.  Subgroups are bit sets over
those indices, stored as Python ints so that intersections and equality are
word operations and subgroups hash cheaply.
"""

from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import LimitExceededError

DEFAULT_LIMIT = 2000
TABLE_LIMIT = 4096


def enumeration_limit(limit: int | None = None) -> int:
    """Resolve the enumeration limit: explicit value, then ``SEMIKIT_LIMIT``, then the default."""
    if limit is not None:
        return int(limit)
    env = os.environ.get("SEMIKIT_LIMIT")
    return int(env) if env else DEFAULT_LIMIT


def check_limit(order: int, limit: int | None = None, what: str = "enumeration") -> None:
    lim = enumeration_limit(limit)
    if order > lim:
        raise LimitExceededError(order, lim, what)


# ---------------------------------------------------------------------------
# permutations

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    """Bijection of ``{0..d-1}``; printed 1-based in cycle notation.

    The product ``p * q`` applies ``p`` first, then ``q``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images}")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse 1-based cycle notation such as ``"(1,6)(2,5)(3,4)"`` or ``"(8..16)"``."""
        cycles = []
        stripped = text.replace(" ", "")
        if _CYCLE_RE.sub("", stripped):
            raise ValueError(f"malformed cycle string: {text!r}")
        for body in _CYCLE_RE.findall(stripped):
            points: list[int] = []
            for tok in filter(None, body.split(",")):
                if ".." in tok:
                    lo, hi = tok.split("..")
                    points.extend(range(int(lo), int(hi) + 1))
                else:
                    points.append(int(tok))
            if any(p < 1 for p in points) or len(set(points)) != len(points):
                raise ValueError(f"bad cycle ({body}) in {text!r}")
            cycles.append([p - 1 for p in points])
        top = max((p for c in cycles for p in c), default=-1) + 1
        if degree is None:
            degree = top
        elif top > degree:
            raise ValueError(f"cycle point {top} exceeds degree {degree}")
        img = list(range(degree))
        for c in cycles:
            for i, p in enumerate(c):
                img[p] = c[(i + 1) % len(c)]
        return cls(tuple(img))

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        return Permutation(tuple(other.images[i] for i in self.images))

    def __call__(self, point: int) -> int:
        return self.images[point]

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, 0-based, each starting at its smallest point."""
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen.add(j)
                j = self.images[j]
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(str(p + 1) for p in c) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Permutation({self})"


# ---------------------------------------------------------------------------
# groups


class FiniteGroup:
    """A finite group given by its Cayley table.

    Instances are treated as immutable: the table and derived arrays are
    read-only.  ``factors`` records the two factors when the group was built
    as a direct product (elements laid out row-major, first factor major).
    ``perms`` optionally holds a permutation realization, one row of 0-based
    images per element.
    """

    def __init__(
        self,
        table,
        generators: Sequence[int],
        labels: Sequence[str] | None = None,
        name: str = "",
        factors: tuple["FiniteGroup", "FiniteGroup"] | None = None,
        perms: np.ndarray | None = None,
    ):
        table = np.ascontiguousarray(table, dtype=np.int32)
        n = table.shape[0]
        if table.shape != (n, n) or n == 0:
            raise ValueError("Cayley table must be a non-empty square array")
        rows = np.flatnonzero((table == np.arange(n, dtype=np.int32)).all(axis=1))
        if rows.size != 1:
            raise ValueError("table has no unique left identity")
        self.identity = int(rows[0])
        pos = np.argwhere(table == self.identity)
        if pos.shape[0] != n or np.unique(pos[:, 0]).size != n:
            raise ValueError("table does not define unique inverses")
        inv = np.empty(n, dtype=np.int32)
        inv[pos[:, 0]] = pos[:, 1]
        table.setflags(write=False)
        inv.setflags(write=False)
        self.table = table
        self.inverse = inv
        self.generators = tuple(int(g) for g in generators)
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        self.factors = factors
        if perms is not None:
            perms = np.ascontiguousarray(perms, dtype=np.int64)
            perms.setflags(write=False)
        self.perms = perms
        self._cache: dict = {}

    @property
    def order(self) -> int:
        return self.table.shape[0]

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name or '?'} of order {self.order}>"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, g: int) -> int:
        return int(self.inverse[g])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        out = self.identity
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def label(self, g: int) -> str:
        if self.labels is not None:
            return self.labels[g]
        return str(g)

    @cached_property
    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())

    @cached_property
    def element_orders(self) -> np.ndarray:
        out = _kernels.element_orders(self.table, self.identity)
        out.setflags(write=False)
        return out

    def permutation(self, g: int) -> Permutation | None:
        if self.perms is None:
            return None
        return Permutation(tuple(int(v) for v in self.perms[g]))

    def first_nonassociative(self) -> tuple[int, int, int] | None:
        a, b, c = (int(v) for v in _kernels.first_nonassociative(self.table))
        return None if a < 0 else (a, b, c)

    def validate(self, assoc_limit: int = 200) -> None:
        """Check group axioms; associativity exhaustively up to ``assoc_limit``."""
        if self.order <= assoc_limit:
            bad = self.first_nonassociative()
            if bad is not None:
                raise ValueError(f"multiplication not associative on {bad}")
        if close(self.generators, self).size != self.order:
            raise ValueError("generators do not generate the group")


def _cayley_from_right_actions(right: np.ndarray, identity: int) -> np.ndarray:
    """Full table from right multiplication by generators.

    ``right[j, i]`` is the index of ``element_i * gen_j``.  Uses
    ``a * (w * g) = (a * w) * g`` column by column along a BFS tree.
    """
    k, n = right.shape
    table = np.full((n, n), -1, dtype=np.int32)
    table[:, identity] = np.arange(n)
    queue = [identity]
    seen = np.zeros(n, dtype=bool)
    seen[identity] = True
    for w in queue:
        col = table[:, w]
        for j in range(k):
            v = int(right[j, w])
            if not seen[v]:
                seen[v] = True
                table[:, v] = right[j][col]
                queue.append(v)
    if not seen.all():
        raise ValueError("generators do not reach every element")
    return table


def group_from_elements(
    gens: Sequence[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
    name: str = "",
    label: Callable[[Hashable], str] = str,
    limit: int = TABLE_LIMIT,
) -> tuple[FiniteGroup, list]:
    """Materialize the group generated by ``gens`` under ``mul``.

    Elements are sorted when comparable, so the layout does not depend on the
    generator order.  Returns the group and the element list.
    """
    seen = {identity}
    queue = [identity]
    for u in queue:
        for g in gens:
            w = mul(u, g)
            if w not in seen:
                seen.add(w)
                queue.append(w)
                if len(seen) > limit:
                    raise LimitExceededError(len(seen), limit, "group construction")
    try:
        elems = sorted(queue)
    except TypeError:
        elems = queue
    index = {e: i for i, e in enumerate(elems)}
    right = np.array([[index[mul(e, g)] for e in elems] for g in gens], dtype=np.int64).reshape(len(gens), len(elems))
    table = _cayley_from_right_actions(right, index[identity])
    gen_idx = [index[g] for g in gens]
    return FiniteGroup(table, gen_idx, [label(e) for e in elems], name=name), elems


def perm_group(generators: Sequence[Permutation | str], degree: int | None = None, name: str = "") -> FiniteGroup:
    """Permutation group generated by ``generators`` (objects or 1-based cycle strings)."""
    if degree is None:
        degree = max(
            (g.degree if isinstance(g, Permutation) else Permutation.from_cycles(g).degree for g in generators),
            default=1,
        )
    perms = [g if isinstance(g, Permutation) else Permutation.from_cycles(g, degree) for g in generators]
    if any(p.degree > degree for p in perms):
        raise ValueError(f"generator moves a point beyond degree {degree}")
    perms = [Permutation(p.images + tuple(range(p.degree, degree))) for p in perms]
    gens = [np.array(p.images, dtype=np.int64) for p in perms]
    ident = tuple(range(degree))
    seen = {ident: None}
    queue = [np.arange(degree)]
    for u in queue:
        for g in gens:
            w = g[u]
            key = tuple(w.tolist())
            if key not in seen:
                seen[key] = None
                queue.append(w)
                if len(seen) > TABLE_LIMIT:
                    raise LimitExceededError(len(seen), TABLE_LIMIT, "group construction")
    keys = sorted(seen)
    index = {k: i for i, k in enumerate(keys)}
    P = np.array(keys, dtype=np.int64).reshape(len(keys), degree)
    right = np.array([[index[tuple(r)] for r in g[P].tolist()] for g in gens], dtype=np.int64).reshape(len(gens), len(keys))
    table = _cayley_from_right_actions(right, index[ident])
    labels = [str(Permutation(k)) for k in keys]
    gen_idx = [index[tuple(g.tolist())] for g in gens]
    return FiniteGroup(table, gen_idx, labels, name=name, perms=P)


def cyclic_group(n: int) -> FiniteGroup:
    """Z_n on residues ``0..n-1``; generator 1."""
    if n < 1:
        raise ValueError("cyclic group order must be positive")
    idx = np.arange(n)
    table = (idx[:, None] + idx[None, :]) % n
    return FiniteGroup(table, [1 % n], [str(i) for i in range(n)], name=f"Z{n}")


def trivial_group() -> FiniteGroup:
    return cyclic_group(1)


def symmetric_group(d: int) -> FiniteGroup:
    if d <= 1:
        return perm_group([Permutation.identity(1)], 1, name="S1")
    gens = ["(1,2)", f"(1..{d})"] if d > 2 else ["(1,2)"]
    return perm_group(gens, d, name=f"S{d}")


def alternating_group(d: int) -> FiniteGroup:
    if d < 3:
        return perm_group([Permutation.identity(max(d, 1))], max(d, 1), name=f"A{d}")
    gens = [f"(1,2,{k})" for k in range(3, d + 1)]
    return perm_group(gens, d, name=f"A{d}")


def dicyclic_group(k: int) -> FiniteGroup:
    """Q_{4k} = <a, x | a^{2k} = e, x^2 = a^k, x^-1 a x = a^-1>; element a^i x^s at index i + 2k*s."""
    if k < 1:
        raise ValueError("dicyclic parameter must be positive")
    m = 2 * k
    i = np.arange(2 * m) % m
    s = np.arange(2 * m) // m
    ri, si = i[:, None], s[:, None]
    rj, sj = i[None, :], s[None, :]
    rot = (ri + np.where(si == 1, -rj, rj) + k * (si & sj)) % m
    table = rot + m * (si ^ sj)
    labels = [_word(int(a), int(b)) for a, b in zip(i, s)]
    return FiniteGroup(table, [1 % m, m], labels, name=f"Q{4 * k}")


def _word(i: int, s: int) -> str:
    parts = []
    if i:
        parts.append("a" if i == 1 else f"a^{i}")
    if s:
        parts.append("x")
    return "".join(parts) or "e"


# ---------------------------------------------------------------------------
# subgroups


def _mask_to_int(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def _int_to_mask(bits: int, n: int) -> np.ndarray:
    raw = np.frombuffer(bits.to_bytes((n + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:n].astype(bool)


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup
    bits: int

    @property
    def size(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.size

    def __contains__(self, g: int) -> bool:
        return bool(self.bits >> int(g) & 1)

    @cached_property
    def mask(self) -> np.ndarray:
        out = _int_to_mask(self.bits, self.parent.order)
        out.setflags(write=False)
        return out

    @cached_property
    def members(self) -> tuple[int, ...]:
        return tuple(int(i) for i in np.flatnonzero(self.mask))

    def __le__(self, other: "Subgroup") -> bool:
        return self.bits & other.bits == self.bits

    def intersection(self, other: "Subgroup") -> "Subgroup":
        return Subgroup(self.parent, self.bits & other.bits)

    def is_trivial(self) -> bool:
        return self.bits == 1 << self.parent.identity

    def is_whole(self) -> bool:
        return self.size == self.parent.order

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A short generating tuple, found greedily in ascending index order."""
        gens: list[int] = []
        cur = 1 << self.parent.identity
        for g in self.members:
            if not cur >> g & 1:
                gens.append(g)
                cur = close(gens, self.parent).bits
                if cur == self.bits:
                    break
        return tuple(gens)

    def as_group(self, name: str = "") -> FiniteGroup:
        """Re-index the subgroup as a standalone group (ascending parent order)."""
        key = ("as_group", self.bits)
        cache = self.parent._cache
        if key not in cache:
            m = np.array(self.members, dtype=np.int64)
            pos = np.full(self.parent.order, -1, dtype=np.int64)
            pos[m] = np.arange(m.size)
            table = pos[self.parent.table[np.ix_(m, m)]]
            labels = [self.parent.label(g) for g in m] if self.parent.labels else None
            perms = self.parent.perms[m] if self.parent.perms is not None else None
            gens = [int(pos[g]) for g in self.generators]
            cache[key] = FiniteGroup(table, gens, labels, name=name, perms=perms)
        return cache[key]

    def embedding(self) -> np.ndarray:
        """Parent index of each element of :meth:`as_group`."""
        return np.array(self.members, dtype=np.int64)


def subgroup_from_mask(group: FiniteGroup, mask) -> Subgroup:
    return Subgroup(group, _mask_to_int(np.asarray(mask, dtype=bool)))


def subgroup_from_members(group: FiniteGroup, members: Iterable[int]) -> Subgroup:
    bits = 0
    for g in members:
        bits |= 1 << int(g)
    return Subgroup(group, bits)


def close(seed: Iterable[int], group: FiniteGroup) -> Subgroup:
    """Smallest subgroup containing ``seed``."""
    gens = np.array(sorted({int(g) for g in seed}), dtype=np.int64)
    mask = _kernels.closure(group.table, gens, group.identity)
    return subgroup_from_mask(group, mask)


def whole(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, (1 << group.order) - 1)


def trivial_subgroup(group: FiniteGroup) -> Subgroup:
    return Subgroup(group, 1 << group.identity)


def element_order(group: FiniteGroup, g: int) -> int:
    return int(group.element_orders[g])


def is_normal(sub: Subgroup) -> bool:
    g = sub.parent
    return bool(_kernels.is_normal(g.table, g.inverse, sub.mask))


def core(sub: Subgroup) -> Subgroup:
    """Largest normal subgroup of the parent contained in ``sub``."""
    g = sub.parent
    return subgroup_from_mask(g, _kernels.core(g.table, g.inverse, sub.mask))


def _sort_key(sub: Subgroup):
    return (sub.size, sub.members)


def cyclic_subgroups(group: FiniteGroup) -> list[tuple[int, Subgroup]]:
    """Distinct cyclic subgroups, each with its smallest generating element."""
    found: dict[int, int] = {}
    for g in range(group.order):
        s = close([g], group)
        found.setdefault(s.bits, g)
    subs = [(g, Subgroup(group, b)) for b, g in found.items()]
    return sorted(subs, key=lambda t: _sort_key(t[1]))


def all_subgroups(group: FiniteGroup, limit: int | None = None) -> list[Subgroup]:
    """Every subgroup once, sorted by (size, member tuple).

    Joins subgroups with cyclic subgroups until no new subgroup appears; every
    subgroup is the join of the cyclic subgroups it contains, so the fixed
    point is complete.
    """
    check_limit(group.order, limit)
    if "all_subgroups" in group._cache:
        return group._cache["all_subgroups"]
    cyc = cyclic_subgroups(group)
    gens_of: dict[int, tuple[int, ...]] = {}
    queue: list[int] = []
    for g, s in cyc:
        if s.bits not in gens_of:
            gens_of[s.bits] = (g,) if s.size > 1 else ()
            queue.append(s.bits)
    head = 0
    while head < len(queue):
        bits = queue[head]
        head += 1
        base = gens_of[bits]
        for g, c in cyc:
            if c.bits & bits == c.bits:
                continue
            j = close(base + (g,), group)
            if j.bits not in gens_of:
                gens_of[j.bits] = base + (g,)
                queue.append(j.bits)
    out = sorted((Subgroup(group, b) for b in gens_of), key=_sort_key)
    group._cache["all_subgroups"] = out
    return out


def normal_subgroups(group: FiniteGroup, limit: int | None = None) -> list[Subgroup]:
    key = "normal_subgroups"
    if key not in group._cache:
        group._cache[key] = [s for s in all_subgroups(group, limit) if is_normal(s)]
    return group._cache[key]


def conjugate(sub: Subgroup, g: int) -> Subgroup:
    """g * sub * g^-1."""
    G = sub.parent
    m = np.array(sub.members, dtype=np.int64)
    return subgroup_from_members(G, G.table[G.table[g, m], G.inverse[g]])
