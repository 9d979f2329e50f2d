"""Self-check suites run by ``semikit verify``.

Each check yields a :class:`Check`; a failed check names its counterexample.
"""

from __future__ import annotations

from typing import Callable, Iterator, NamedTuple

from ._arith import num_divisors, sigma
from .core import all_subgroups, cyclic_group, perm_group
from .decompose import internal_decompositions as brute_decompositions
from .dihedral import dihedral_group, internal_decompositions, subgroup_catalog
from .mindeg import PrimePowerDecomposition, mu_dihedral, mu_oracle, verify_witness
from .morphisms import find_isomorphism
from .products import TwistingHom, diagonal_multipliers, direct_product, multiplier_automorphism, semidirect
from .rewrite import GeneralizedDihedralSpec, gendihedral_split, generalized_dihedral, shift_base_factor, shift_ext_factor


class Check(NamedTuple):
    name: str
    ok: bool
    detail: str = ""


def _run(name: str, fn: Callable[[], str | None]) -> Check:
    try:
        detail = fn()
    except AssertionError as exc:
        return Check(name, False, str(exc))
    except Exception as exc:
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    return Check(name, True, detail or "")


def props_suite(max_n: int | None = None) -> Iterator[Check]:
    Z2, Z3, Z7, Z9 = (cyclic_group(n) for n in (2, 3, 7, 9))

    def order_189():
        B = direct_product(Z7, Z9)
        S = semidirect(B, Z3, TwistingHom.from_generator_images(Z3, B, [diagonal_multipliers(B, [2, 4])]))
        sizes = []
        for keep in (1, 2):
            r = shift_base_factor(S, keep)
            assert r.witness.is_bijective()
            sizes.append(r.derived_kernel.size)
        return f"kernels of sizes {sizes[0]} and {sizes[1]}"

    def order_42():
        H = direct_product(Z2, Z3)
        tw = TwistingHom.from_generator_images(H, Z7, [multiplier_automorphism(Z7, -1), multiplier_automorphism(Z7, 2)])
        S = semidirect(Z7, H, tw)
        P = perm_group(["(1..7)", "(1,6)(2,5)(3,4)", "(1,2,4)(3,6,5)"])
        first = shift_ext_factor(S, 1)
        second = shift_ext_factor(S, 2)
        assert find_isomorphism(first.rebuilt, P) is not None, "(Z7 x| Z2) x| Z3 is not the permutation group"
        assert find_isomorphism(second.rebuilt, P) is not None, "(Z7 x| Z3) x| Z2 is not the permutation group"

    def order_30():
        spec = GeneralizedDihedralSpec((3, 5))
        D = generalized_dihedral(spec).group
        P = perm_group(["(1,2,3)", "(4,5,6,7,8)", "(1,2)(4,7)(5,6)"])
        assert find_isomorphism(D, P) is not None, "D(Z3+Z5) is not the permutation group"
        for keep in (1, 2):
            r = gendihedral_split(spec, 1, keep)
            assert find_isomorphism(r.rebuilt, D) is not None

    yield _run("shift_base_factor on (Z7 x Z9) x| Z3, both factor orders", order_189)
    yield _run("shift_ext_factor on Z7 x| (Z2 x Z3), both factor orders", order_42)
    yield _run("gendihedral_split on D(Z3+Z5), both cuts", order_30)


def dihedral_suite(max_n: int | None = None) -> Iterator[Check]:
    max_n = max_n or 15
    for n in range(3, max_n + 1):

        def one(n=n):
            G = dihedral_group(n)
            mine = {(r.normal.bits, r.complement.bits, r.is_direct) for r in internal_decompositions(n)}
            brute = {(r.normal.bits, r.complement.bits, r.is_direct) for r in brute_decompositions(G, labels=False)}
            assert mine == brute, f"n={n}: {len(mine - brute)} extra, {len(brute - mine)} missing"
            cat = subgroup_catalog(n)
            a = sum(c.id.kind == "A" for c in cat)
            assert a == num_divisors(n) and len(cat) - a == sigma(n), f"n={n}: catalog counts {a}, {len(cat) - a}"
            assert {c.subgroup.bits for c in cat} == {s.bits for s in all_subgroups(G)}, f"n={n}: catalog != lattice"
            return f"{len(mine)} decompositions, {len(cat)} subgroups"

        yield _run(f"D{2 * n}", one)


def mu_suite(max_n: int | None = None) -> Iterator[Check]:
    max_n = max_n or 30
    for n in range(3, max_n + 1):

        def one(n=n):
            G = dihedral_group(n)
            f, o = mu_dihedral(n), mu_oracle(G)
            assert f.degree == o.degree, f"n={n}: formula {f.degree} != oracle {o.degree}"
            verify_witness(G, f)
            verify_witness(G, o)
            return f"mu = {f.degree} ({'+'.join(str(q) for q in sorted(PrimePowerDecomposition.of(n).parts))})"

        yield _run(f"mu(D{2 * n})", one)


SUITES = {"props": props_suite, "dihedral": dihedral_suite, "mu": mu_suite}
