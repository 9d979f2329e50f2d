"""Minimal faithful permutation degree.

mu(G) is the least d such that G embeds in S_d.  A faithful action is a
disjoint union of transitive actions on coset spaces G/S_i whose cores meet
trivially, so

    mu(G) = min sum [G : S_i]  over families with  core(S_1) & ... & core(S_k) = e.

The oracle evaluates this exactly; the closed forms for abelian and dihedral
groups are cross-checked against it in the tests.  By convention the trivial
group gets degree 1 (it acts faithfully on one point).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple, Sequence

import numpy as np

from ._arith import factorize
from .core import (
    FiniteGroup,
    Permutation,
    Subgroup,
    all_subgroups,
    check_limit,
    core,
    normal_subgroups,
    perm_group,
)
from .decompose import is_directly_decomposable
from .dihedral import dihedral_group
from .morphisms import Homomorphism, find_isomorphism, hom_from_generator_images, minimal_generating_sequence
from .products import TwistingHom, semidirect

ORACLE_LIMIT = 200


@dataclass(frozen=True)
class MuResult:
    degree: int
    witness_generators: tuple[Permutation, ...]
    method: str  # "oracle" or "formula"
    # elements of the input that the witness generators represent, in order
    source_generators: tuple[int, ...] = ()
    # point stabilizers of the orbits (oracle only)
    subgroups: tuple[Subgroup, ...] = ()


class PrimePowerDecomposition(NamedTuple):
    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def of(cls, n: int) -> "PrimePowerDecomposition":
        return cls(tuple(factorize(n)))

    @property
    def parts(self) -> list[int]:
        return [p**a for p, a in self.pairs]

    def value(self) -> int:
        out = 1
        for q in self.parts:
            out *= q
        return out


# ---------------------------------------------------------------------------
# oracle


def _right_coset_action(G: FiniteGroup, S: Subgroup) -> np.ndarray:
    """Row g: the permutation of right cosets S x -> S x g, cosets numbered by least member."""
    members = np.array(S.members, dtype=np.int64)
    rep = G.table[members[:, None], np.arange(G.order)[None, :]].min(axis=0)
    reps = np.unique(rep)
    point = np.full(G.order, -1, dtype=np.int64)
    point[reps] = np.arange(reps.size)
    # coset of r * g for each representative r and element g
    return point[rep[G.table[reps[:, None], np.arange(G.order)[None, :]]]].T


def coset_action(G: FiniteGroup, stabilizers: Sequence[Subgroup]) -> np.ndarray:
    """Concatenated right-coset actions, one row of 0-based images per element."""
    if not stabilizers:
        return np.zeros((G.order, 1), dtype=np.int64)
    blocks, offset = [], 0
    for S in stabilizers:
        b = _right_coset_action(G, S)
        blocks.append(b + offset)
        offset += b.shape[1]
    return np.concatenate(blocks, axis=1)


def _core_costs(G: FiniteGroup) -> dict[int, Subgroup]:
    """For each normal subgroup occurring as a core, a largest subgroup with that core."""
    best: dict[int, Subgroup] = {}
    for S in all_subgroups(G):
        if S.is_whole():
            continue
        K = core(S).bits
        cur = best.get(K)
        if cur is None or S.size > cur.size:
            best[K] = S
    return best


def mu_oracle(G: FiniteGroup, limit: int | None = None) -> MuResult:
    """Exact mu by dynamic programming over cores.

    For the running intersection I of chosen cores, pick a minimal normal
    subgroup M inside I.  The final intersection is trivial only if some chosen
    core misses M, and any normal K either contains M or meets it trivially, so

        dp(I) = min over K with K & M = e of  [G : S_K] + dp(I & K).
    """
    check_limit(G.order, ORACLE_LIMIT if limit is None else limit, "oracle")
    if G.order == 1:
        return MuResult(1, (Permutation.identity(1),), "oracle", (G.identity,))
    normals = normal_subgroups(G)
    costs = _core_costs(G)
    options = sorted(costs.items(), key=lambda kv: (G.order // kv[1].size, kv[1].members))
    trivial = 1 << G.identity

    def minimal_normal(bits: int) -> int:
        for N in normals:
            if N.bits != trivial and N.bits & bits == N.bits:
                return N.bits
        raise AssertionError("no minimal normal subgroup found")

    memo: dict[int, tuple[int, tuple[Subgroup, ...]]] = {trivial: (0, ())}

    def dp(I: int) -> tuple[int, tuple[Subgroup, ...]]:
        if I in memo:
            return memo[I]
        M = minimal_normal(I)
        best = None
        for K, S in options:
            if K & M != trivial:
                continue
            cost, chosen = dp(I & K)
            cost += G.order // S.size
            if best is None or cost < best[0]:
                best = (cost, (S,) + chosen)
        memo[I] = best
        return best

    degree, stabilizers = dp((1 << G.order) - 1)
    stabilizers = tuple(sorted(stabilizers, key=lambda S: (-S.size, S.members)))
    action = coset_action(G, stabilizers)
    gens = minimal_generating_sequence(G)
    witness = tuple(Permutation(tuple(int(v) for v in action[g])) for g in gens)
    return MuResult(degree, witness, "oracle", tuple(gens), stabilizers)


# ---------------------------------------------------------------------------
# closed forms


def mu_abelian(invariant_orders: Sequence[int]) -> int:
    """Sum of the prime-power parts of Z_m1 + ... + Z_mk (1 for the trivial group)."""
    parts = [q for m in invariant_orders for q in PrimePowerDecomposition.of(int(m)).parts]
    return sum(parts) if parts else 1


def _block_generators(blocks: Sequence[int]) -> tuple[Permutation, Permutation]:
    a, x, off = [], [], 0
    for q in blocks:
        k = np.arange(q)
        a.extend((off + (k + 1) % q).tolist())
        x.extend((off + (-k) % q).tolist())
        off += q
    return Permutation(tuple(a)), Permutation(tuple(x))


@lru_cache(maxsize=None)
def mu_dihedral(n: int) -> MuResult:
    """mu(D_2n) for n >= 3 with a block witness.

    Prime powers of n are peeled off smallest first; each adds a block of size
    q on which a acts as k -> k+1 and x as k -> -k (mod q).
    """
    if n < 3:
        raise ValueError("the dihedral formula needs n >= 3")
    blocks, rest = [], n
    while rest > 1:
        q = min(PrimePowerDecomposition.of(rest).parts)
        blocks.append(q)
        rest //= q
    a, x = _block_generators(blocks)
    G = dihedral_group(n)
    return MuResult(sum(blocks), (a, x), "formula", tuple(G.generators))


# ---------------------------------------------------------------------------
# witnesses


def witness_homomorphism(G: FiniteGroup, result: MuResult) -> Homomorphism:
    """The action of G described by ``result``, as a map into the generated permutation group."""
    P = perm_group(result.witness_generators, result.degree)
    return hom_from_generator_images(G, P, list(P.generators), generators=result.source_generators)


def verify_witness(G: FiniteGroup, result: MuResult) -> None:
    """Raise unless the witness is a faithful action of G of the stated degree."""
    for p in result.witness_generators:
        if p.degree != result.degree:
            raise AssertionError(f"witness permutation has degree {p.degree}, expected {result.degree}")
    f = witness_homomorphism(G, result)
    if not f.kernel().is_trivial():
        raise AssertionError("witness action is not faithful")
    if find_isomorphism(G, f.codomain) is None:
        raise AssertionError("witness image is not isomorphic to the group")


# ---------------------------------------------------------------------------
# bounds for semidirect products


class MuBounds(NamedTuple):
    bound_general: int
    bound_injective: int | None
    actual: int | None


def mu_bounds_check(G: FiniteGroup, H: FiniteGroup, phi: TwistingHom | None = None, limit: int | None = None) -> MuBounds:
    """Upper bounds |G| + mu(H) and, for injective phi, |G| on mu(G x|_phi H)."""
    phi = phi or TwistingHom.trivial(H, G)
    general = G.order + mu_oracle(H, limit).degree
    injective = G.order if phi.is_injective() else None
    actual = None
    if G.order * H.order <= (ORACLE_LIMIT if limit is None else limit):
        actual = mu_oracle(semidirect(G, H, phi).group, limit).degree
        if actual > general or (injective is not None and actual > injective):
            raise AssertionError(f"mu = {actual} exceeds a bound ({general}, {injective})")
    return MuBounds(general, injective, actual)


# ---------------------------------------------------------------------------
# dihedral threshold sweeps


def first_degree_drop(max_n: int, mu: Callable[[int], int] | None = None, indecomposable_only: bool = False) -> int | None:
    """Least 3 <= n <= max_n with mu(D_2n) < n, optionally over directly indecomposable D_2n."""
    mu = mu or (lambda n: mu_dihedral(n).degree)
    for n in range(3, max_n + 1):
        if indecomposable_only and is_directly_decomposable(dihedral_group(n)):
            continue
        if mu(n) < n:
            return n
    return None
