"""semikit command line.

Exit codes: 0 success, 1 a verify check failed, 2 spec parse error,
3 spec validation error, 4 limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict

from .core import FiniteGroup, Subgroup, enumeration_limit
from .decompose import Labeler, catalog_entry, internal_decompositions, invariant_factors
from .errors import LimitExceededError, SemikitError
from .mindeg import ORACLE_LIMIT, mu_abelian, mu_dihedral, mu_oracle
from .morphisms import find_isomorphism, fingerprint, minimal_generating_sequence, separating_invariant
from .specfile import BuiltGroup, SpecParseError, load_spec
from .verify import SUITES

EXIT_OK, EXIT_CHECK, EXIT_PARSE, EXIT_INVALID, EXIT_LIMIT = 0, 1, 2, 3, 4

_FACTOR = {
    "type": "object",
    "required": ["label", "generators"],
    "properties": {"label": {"type": "string"}, "generators": {"type": "array", "items": {"type": "string"}}},
    "additionalProperties": False,
}

# JSON Schema of ``decompose --json`` output
CATALOG_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["group", "records"],
    "additionalProperties": False,
    "properties": {
        "group": {
            "type": "object",
            "required": ["order", "abelian", "element_order_histogram", "center_size", "derived_subgroup_size"],
            "properties": {
                "order": {"type": "integer", "minimum": 1},
                "abelian": {"type": "boolean"},
                "element_order_histogram": {"type": "object", "additionalProperties": {"type": "integer"}},
                "center_size": {"type": "integer"},
                "derived_subgroup_size": {"type": "integer"},
            },
        },
        "records": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["normal", "complement", "direct"],
                "additionalProperties": False,
                "properties": {
                    "normal": _FACTOR,
                    "complement": _FACTOR,
                    "direct": {"type": "boolean"},
                    "trivial": {"type": "boolean"},
                },
            },
        },
    },
}


def _element(G: FiniteGroup, g: int) -> str:
    p = G.permutation(g)
    return str(p) if p is not None else G.label(g)


def _generators(sub: Subgroup) -> list[str]:
    return [_element(sub.parent, g) for g in sub.generators]


def _fingerprint_json(G: FiniteGroup) -> dict:
    fp = asdict(fingerprint(G))
    fp["element_order_histogram"] = {str(o): c for o, c in fp["element_order_histogram"]}
    return fp


def _emit(args, data, lines: list[str]) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=False))
    else:
        print("\n".join(lines))


# ---------------------------------------------------------------------------
# commands


def cmd_build(args) -> int:
    b = load_spec(args.spec, args.limit)
    G = b.group
    fp = fingerprint(G)
    lbl = Labeler().label_group(G) if G.order <= enumeration_limit(args.limit) else None
    gens = [_element(G, g) for g in G.generators]
    data = {
        "name": G.name,
        "order": G.order,
        "abelian": G.is_abelian,
        "label": str(lbl) if lbl else None,
        "fingerprint": _fingerprint_json(G),
        "generators": gens,
    }
    lines = [
        f"group:      {G.name}",
        f"order:      {G.order}",
        f"abelian:    {'yes' if G.is_abelian else 'no'}",
        f"label:      {lbl if lbl else '-'}",
        "orders:     " + " ".join(f"{o}:{c}" for o, c in fp.element_order_histogram),
        f"center:     {fp.center_size}",
        f"derived:    {fp.derived_subgroup_size}",
        "generators:",
    ]
    lines += [f"  g{i} = {s}" for i, s in enumerate(gens, 1)]
    _emit(args, data, lines)
    return EXIT_OK


def _record_json(r, trivial: bool) -> dict:
    out = {
        "normal": {"label": str(r.n_label), "generators": _generators(r.normal)},
        "complement": {"label": str(r.h_label), "generators": _generators(r.complement)},
        "direct": r.is_direct,
    }
    if trivial:
        out["trivial"] = True
    return out


def cmd_decompose(args) -> int:
    G = load_spec(args.spec, args.limit).group
    records = internal_decompositions(G, include_trivial=True, labeler=Labeler(), limit=args.limit)
    is_trivial = [r.normal.size in (1, G.order) for r in records]
    if args.external:
        # one representative record per label pair, trivial splittings dropped
        reps = {}
        for r, t in zip(records, is_trivial):
            if not t:
                reps.setdefault(catalog_entry(r.n_label, r.h_label, r.is_direct), r)
        entries = sorted(reps, key=lambda e: e.sort_key)
        out = []
        for e in entries:
            r = reps[e]
            first, second = (r.normal, r.complement)
            if (r.n_label, r.h_label) != (e.normal, e.complement):
                first, second = second, first
            out.append(
                {
                    "normal": {"label": str(e.normal), "generators": _generators(first)},
                    "complement": {"label": str(e.complement), "generators": _generators(second)},
                    "direct": e.direct,
                }
            )
        lines = [str(e) for e in entries]
    else:
        out = [_record_json(r, t) for r, t in zip(records, is_trivial)]
        lines = []
        for r, t in zip(records, is_trivial):
            op = "x" if r.is_direct else "x|"
            n_g = ", ".join(_generators(r.normal)) or "e"
            h_g = ", ".join(_generators(r.complement)) or "e"
            lines.append(f"{r.n_label.wrapped()} {op} {r.h_label.wrapped()}   N = <{n_g}>  H = <{h_g}>" + ("  (trivial)" if t else ""))
    _emit(args, {"group": _fingerprint_json(G), "records": out}, lines or ["no decompositions"])
    return EXIT_OK


def cmd_mu(args) -> int:
    b: BuiltGroup = load_spec(args.spec, args.limit)
    G = b.group
    oracle_limit = args.limit or ORACLE_LIMIT
    if b.kind == "dihedral" and b.param >= 3:
        res = mu_dihedral(b.param)
    elif G.order <= oracle_limit:
        res = mu_oracle(G, oracle_limit)
    elif G.is_abelian:
        res = None
    else:
        raise LimitExceededError(G.order, oracle_limit, "oracle")
    if res is None:
        degree, method = mu_abelian(invariant_factors(G)), "formula"
        witness = None
    else:
        degree, method = res.degree, res.method
        witness = [str(p) for p in res.witness_generators]
    data = {"degree": degree, "method": method}
    lines = [f"mu = {degree} ({method})"]
    if G.order == 1:
        lines.append("note: the trivial group is assigned degree 1 by convention")
    if args.witness:
        if witness is None:
            lines.append("no witness: group exceeds the oracle limit")
        else:
            data["witness"] = witness
            lines += [f"  {w}" for w in witness]
    _emit(args, data, lines)
    return EXIT_OK


def cmd_iso(args) -> int:
    G = load_spec(args.spec, args.limit).group
    H = load_spec(args.other, args.limit).group
    f = find_isomorphism(G, H, args.limit)
    if f is None:
        inv = separating_invariant(G, H)
        reason = inv or "exhaustive search"
        _emit(args, {"isomorphic": False, "separating_invariant": inv}, [f"non-isomorphic (separated by {reason})"])
        return EXIT_OK
    gens = minimal_generating_sequence(G)
    pairs = [(_element(G, g), _element(H, f(g))) for g in gens]
    lines = ["isomorphic"] + [f"  {a} -> {b}" for a, b in pairs]
    _emit(args, {"isomorphic": True, "witness": [list(p) for p in pairs]}, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.spec not in SUITES:
        print(f"unknown suite {args.spec!r}; choose from {', '.join(SUITES)}", file=sys.stderr)
        return EXIT_PARSE
    failed = 0
    total = 0
    for check in SUITES[args.spec](args.max_n):
        total += 1
        failed += not check.ok
        status = "PASS" if check.ok else "FAIL"
        print(f"{status}  {check.name}" + (f"  {check.detail}" if check.detail else ""))
    print(f"{total - failed}/{total} checks passed")
    return EXIT_CHECK if failed else EXIT_OK


COMMANDS = {"build": cmd_build, "decompose": cmd_decompose, "mu": cmd_mu, "iso": cmd_iso, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="semikit", description="Semidirect decompositions of small finite groups.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("spec", help="spec file (for verify: the suite name props|dihedral|mu)")
    p.add_argument("other", nargs="?", help="second spec file for iso")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--witness", action="store_true", help="print the permutation witness (mu)")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--internal", action="store_true", help="subgroup pairs (default)")
    mode.add_argument("--external", action="store_true", help="isomorphism-type pairs")
    p.add_argument("--max-n", type=int, default=None, help="sweep bound for verify")
    p.add_argument("--limit", type=int, default=None, help="enumeration limit (overrides SEMIKIT_LIMIT)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "iso" and args.other is None:
        print("iso needs two spec files", file=sys.stderr)
        return EXIT_PARSE
    try:
        return COMMANDS[args.command](args)
    except SpecParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LimitExceededError as exc:
        print(f"limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except OSError as exc:
        print(f"cannot read spec: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (SemikitError, ValueError) as exc:
        print(f"invalid group: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
