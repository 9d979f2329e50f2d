"""Spec files: JSON descriptions of groups.

A spec file is JSON of the form ``{"specver": 1, "group": NODE}`` where NODE
is one of::

    {"cyclic": n}            {"dihedral": n}         {"dicyclic": k}
    {"symmetric": d}         {"gendihedral": [m1, m2, ...]}
    {"direct": [NODE, NODE, ...]}
    {"semidirect": {"base": NODE, "ext": NODE, "twist": TWIST}}
    {"perm": {"degree": d, "generators": ["(1..7)", "(1,6)(2,5)(3,4)"]}}

TWIST is ``"trivial"`` (or absent) or a list with one entry per generator of
the extending group.  An entry is the automorphism of the base attached to
that generator, written as

* an int ``u``: ``k -> u*k`` on a cyclic base;
* a list of ints: one multiplier per cyclic factor of a direct-product base;
* a list of words: images of the base generators, e.g. ``["g1^-1", "g1 g2"]``.

Words use ``g1, g2, ...`` for the base generators in order, ``^k`` for powers
and ``e`` for the identity.
"""

from __future__ import annotations

import json
import json.decoder
import json.scanner
import re
from dataclasses import dataclass

import numpy as np

from .core import FiniteGroup, cyclic_group, dicyclic_group, perm_group, symmetric_group
from .dihedral import dihedral_group
from .errors import SemikitError
from .morphisms import hom_from_generator_images
from .products import (
    SemidirectGroup,
    TwistingHom,
    diagonal_multipliers,
    direct_product_of,
    multiplier_automorphism,
    product_leaves,
    semidirect,
)
from .rewrite import GeneralizedDihedralSpec, generalized_dihedral

SPECVER = 1
NODE_KINDS = ("cyclic", "dihedral", "dicyclic", "symmetric", "gendihedral", "direct", "semidirect", "perm")


class SpecParseError(SemikitError):
    def __init__(self, message: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {message}")


class SpecValidationError(SemikitError):
    pass


# ---------------------------------------------------------------------------
# JSON with source positions


class _LocDict(dict):
    pos = 0


class _LocList(list):
    pos = 0


class _Decoder(json.JSONDecoder):
    """Records the offset of every object and array so structural errors can be located."""

    def __init__(self):
        super().__init__()
        self.parse_object = self._object
        self.parse_array = self._array
        self.scan_once = json.scanner.py_make_scanner(self)

    @staticmethod
    def _object(s_and_end, *args):
        value, end = json.decoder.JSONObject(s_and_end, *args)
        out = _LocDict(value)
        out.pos = s_and_end[1] - 1
        return out, end

    @staticmethod
    def _array(s_and_end, scan_once, *args):
        value, end = json.decoder.JSONArray(s_and_end, scan_once, *args)
        out = _LocList(value)
        out.pos = s_and_end[1] - 1
        return out, end


def _line_col(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    return line, pos - (text.rfind("\n", 0, pos) + 1) + 1


def loads(text: str):
    try:
        return _Decoder().decode(text)
    except json.JSONDecodeError as exc:
        raise SpecParseError(exc.msg, exc.lineno, exc.colno) from None


# ---------------------------------------------------------------------------
# materialization


@dataclass
class BuiltGroup:
    group: FiniteGroup
    kind: str
    # set for semidirect and gendihedral nodes
    product: SemidirectGroup | None = None
    # set for dihedral nodes
    param: int | None = None


class _Builder:
    def __init__(self, text: str, limit: int | None):
        self.text = text
        self.limit = limit

    def fail(self, node, message: str):
        line, col = _line_col(self.text, getattr(node, "pos", 0))
        raise SpecParseError(message, line, col)

    def int_field(self, node, value, what: str, minimum: int = 1) -> int:
        if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
            self.fail(node, f"{what} must be an integer >= {minimum}")
        return value

    def build(self, node) -> BuiltGroup:
        if not isinstance(node, dict) or len(node) != 1:
            self.fail(node, f"a group node is an object with exactly one key from {', '.join(NODE_KINDS)}")
        (kind, arg), = node.items()
        if kind not in NODE_KINDS:
            self.fail(node, f"unknown group kind {kind!r}")
        return getattr(self, "_" + kind)(node, arg)

    def _cyclic(self, node, arg):
        n = self.int_field(node, arg, "cyclic order")
        return BuiltGroup(cyclic_group(n), "cyclic", param=n)

    def _dihedral(self, node, arg):
        n = self.int_field(node, arg, "dihedral parameter")
        return BuiltGroup(dihedral_group(n), "dihedral", param=n)

    def _dicyclic(self, node, arg):
        k = self.int_field(node, arg, "dicyclic parameter")
        return BuiltGroup(dicyclic_group(k), "dicyclic", param=k)

    def _symmetric(self, node, arg):
        d = self.int_field(node, arg, "symmetric degree")
        return BuiltGroup(symmetric_group(d), "symmetric", param=d)

    def _gendihedral(self, node, arg):
        if not isinstance(arg, list) or not arg:
            self.fail(node, "gendihedral takes a non-empty list of summand orders")
        orders = [self.int_field(arg, m, "summand order", 2) for m in arg]
        S = generalized_dihedral(GeneralizedDihedralSpec(tuple(orders)), self.limit)
        return BuiltGroup(S.group, "gendihedral", product=S)

    def _direct(self, node, arg):
        if not isinstance(arg, list) or not arg:
            self.fail(node, "direct takes a non-empty list of group nodes")
        parts = [self.build(a).group for a in arg]
        return BuiltGroup(direct_product_of(parts, self.limit), "direct")

    def _perm(self, node, arg):
        if not isinstance(arg, dict) or set(arg) - {"degree", "generators"} or "generators" not in arg:
            self.fail(node, "perm takes {\"degree\": d, \"generators\": [cycle strings]}")
        gens = arg["generators"]
        if not isinstance(gens, list) or not all(isinstance(g, str) for g in gens):
            self.fail(arg, "perm generators must be a list of cycle strings")
        degree = arg.get("degree")
        if degree is not None:
            degree = self.int_field(arg, degree, "perm degree")
        try:
            G = perm_group(gens or ["()"], degree)
        except ValueError as exc:
            self.fail(arg, str(exc))
        return BuiltGroup(G, "perm")

    def _semidirect(self, node, arg):
        if not isinstance(arg, dict) or {"base", "ext"} - set(arg) or set(arg) - {"base", "ext", "twist"}:
            self.fail(node, "semidirect takes {\"base\": node, \"ext\": node, \"twist\": ...}")
        base, ext = self.build(arg["base"]), self.build(arg["ext"])
        twist = self.twist(arg, arg.get("twist", "trivial"), base, ext.group)
        S = semidirect(base.group, ext.group, twist, self.limit)
        return BuiltGroup(S.group, "semidirect", product=S)

    def twist(self, node, spec, base: BuiltGroup, H: FiniteGroup) -> TwistingHom:
        N = base.group
        if spec == "trivial" or spec is None:
            return TwistingHom.trivial(H, N)
        if not isinstance(spec, list):
            self.fail(node, "twist must be \"trivial\" or a list with one entry per extending generator")
        if len(spec) != len(H.generators):
            raise SpecValidationError(f"twist lists {len(spec)} automorphisms but the extending group has {len(H.generators)} generators")
        return TwistingHom.from_generator_images(H, N, [self.automorphism(spec, e, base) for e in spec])

    def automorphism(self, node, entry, base: BuiltGroup) -> np.ndarray:
        N = base.group
        if isinstance(entry, int) and not isinstance(entry, bool):
            if base.kind != "cyclic":
                raise SpecValidationError("an integer twist entry needs a cyclic base")
            return multiplier_automorphism(N, entry).images
        if isinstance(entry, list) and entry and all(isinstance(u, int) for u in entry):
            leaves, _ = product_leaves(N)
            for L in leaves:
                if not _is_standard_cyclic(L):
                    raise SpecValidationError("multiplier lists need a direct product of cyclic groups as base")
            return diagonal_multipliers(N, entry).images
        if isinstance(entry, list) and all(isinstance(w, str) for w in entry):
            if len(entry) != len(N.generators):
                raise SpecValidationError(f"base has {len(N.generators)} generators but {len(entry)} images were given")
            images = [self.word(entry, w, N) for w in entry]
            f = hom_from_generator_images(N, N, images)
            if not f.is_bijective():
                raise SpecValidationError(f"generator images {entry} do not define an automorphism")
            return f.images
        self.fail(node, f"cannot read twist entry {entry!r}")

    def word(self, node, text: str, N: FiniteGroup) -> int:
        out = N.identity
        for tok in text.replace("*", " ").split():
            if tok == "e":
                continue
            m = _TOKEN.fullmatch(tok)
            if not m:
                self.fail(node, f"bad word token {tok!r}")
            i = int(m.group(1))
            if not 1 <= i <= len(N.generators):
                self.fail(node, f"generator g{i} does not exist (base has {len(N.generators)})")
            out = N.mul(out, N.power(N.generators[i - 1], int(m.group(2) or 1)))
        return out


_TOKEN = re.compile(r"g(\d+)(?:\^(-?\d+))?")


def _is_standard_cyclic(G: FiniteGroup) -> bool:
    i = np.arange(G.order)
    return bool((G.table == (i[:, None] + i[None, :]) % G.order).all())


def parse_spec(text: str, limit: int | None = None) -> BuiltGroup:
    """Parse and materialize a spec document.

    Raises :class:`SpecParseError` for malformed input and package errors
    (twist not a homomorphism, limit exceeded, ...) for well-formed input that
    does not describe a valid group.
    """
    doc = loads(text)
    b = _Builder(text, limit)
    if not isinstance(doc, dict):
        b.fail(doc, "top level must be an object")
    if doc.get("specver") != SPECVER:
        b.fail(doc, f"specver must be {SPECVER}")
    if "group" not in doc or set(doc) - {"specver", "group"}:
        b.fail(doc, "expected exactly the keys \"specver\" and \"group\"")
    built = b.build(doc["group"])
    built.group.validate()
    return built


def load_spec(path: str, limit: int | None = None) -> BuiltGroup:
    with open(path, encoding="utf-8") as fh:
        return parse_spec(fh.read(), limit)
