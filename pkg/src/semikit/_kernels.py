"""Hot loops over Cayley tables.

Every kernel has a pure-numpy implementation (``np_*``) and, when numba is
importable, a compiled twin (``nb_*``).  The public names bound at the bottom
of the module pick one of the two at import time.  Set ``SEMIKIT_NUMBA=0`` to
force the numpy path.

Tables are ``int32`` arrays of shape ``(n, n)`` with ``table[a, b] = a*b``.
Subsets are boolean masks of length ``n``.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is an optional extra
    _HAVE_NUMBA = False

USING_NUMBA = _HAVE_NUMBA and os.environ.get("SEMIKIT_NUMBA", "1").strip().lower() not in ("0", "false", "no", "off")


# ---------------------------------------------------------------------------
# closure


def np_closure(table, gens, identity):
    n = table.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    seen[identity] = True
    gens = np.asarray(gens, dtype=np.int64)
    if gens.size == 0:
        return seen
    frontier = np.array([identity], dtype=np.int64)
    while frontier.size:
        prods = np.unique(table[np.ix_(frontier, gens)].ravel())
        new = prods[~seen[prods]]
        seen[new] = True
        frontier = new
    return seen


def _loop_closure(table, gens, identity):
    n = table.shape[0]
    seen = np.zeros(n, dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    seen[identity] = True
    queue[0] = identity
    size = 1
    head = 0
    while head < size:
        u = queue[head]
        head += 1
        for g in gens:
            w = table[u, g]
            if not seen[w]:
                seen[w] = True
                queue[size] = w
                size += 1
    return seen


# ---------------------------------------------------------------------------
# associativity


def np_first_nonassociative(table):
    n = table.shape[0]
    idx = np.arange(n)
    for a in range(n):
        left = table[table[a][:, None], idx[None, :]]  # (a*b)*c
        right = table[a][table]  # a*(b*c)
        bad = np.argwhere(left != right)
        if bad.size:
            b, c = bad[0]
            return np.array([a, b, c], dtype=np.int64)
    return np.array([-1, -1, -1], dtype=np.int64)


def _loop_first_nonassociative(table):
    n = table.shape[0]
    out = np.array([-1, -1, -1], dtype=np.int64)
    for a in range(n):
        for b in range(n):
            ab = table[a, b]
            for c in range(n):
                if table[ab, c] != table[a, table[b, c]]:
                    out[0] = a
                    out[1] = b
                    out[2] = c
                    return out
    return out


# ---------------------------------------------------------------------------
# normality and cores


def np_is_normal(table, inv, member):
    members = np.flatnonzero(member)
    conj = table[table[:, members], inv[:, None]]
    return bool(member[conj].all())


def _loop_is_normal(table, inv, member):
    n = table.shape[0]
    for s in range(n):
        if not member[s]:
            continue
        for g in range(n):
            if not member[table[table[g, s], inv[g]]]:
                return False
    return True


def np_core(table, inv, member):
    # x lies in the core iff g^-1 x g is in the subgroup for every g
    idx = np.arange(table.shape[0])
    conj = table[table[inv[:, None], idx[None, :]], idx[:, None]]
    return member[conj].all(axis=0)


def _loop_core(table, inv, member):
    n = table.shape[0]
    out = np.zeros(n, dtype=np.bool_)
    for x in range(n):
        if not member[x]:
            continue
        ok = True
        for g in range(n):
            if not member[table[table[inv[g], x], g]]:
                ok = False
                break
        out[x] = ok
    return out


# ---------------------------------------------------------------------------
# homomorphism check


def np_hom_violation(dom_table, cod_table, images):
    lhs = images[dom_table]
    rhs = cod_table[images[:, None], images[None, :]]
    bad = np.argwhere(lhs != rhs)
    if bad.size:
        return np.array(bad[0], dtype=np.int64)
    return np.array([-1, -1], dtype=np.int64)


def _loop_hom_violation(dom_table, cod_table, images):
    n = dom_table.shape[0]
    out = np.array([-1, -1], dtype=np.int64)
    for a in range(n):
        for b in range(n):
            if images[dom_table[a, b]] != cod_table[images[a], images[b]]:
                out[0] = a
                out[1] = b
                return out
    return out


# ---------------------------------------------------------------------------
# element orders


def np_element_orders(table, identity):
    n = table.shape[0]
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    power = idx.copy()
    k = 1
    while True:
        hit = (power == identity) & (orders == 0)
        orders[hit] = k
        if orders.all():
            return orders
        power = table[power, idx]
        k += 1


def _loop_element_orders(table, identity):
    n = table.shape[0]
    orders = np.zeros(n, dtype=np.int64)
    for g in range(n):
        k = 1
        p = g
        while p != identity:
            p = table[p, g]
            k += 1
        orders[g] = k
    return orders


# ---------------------------------------------------------------------------
# injective-homomorphism backtracking
#
# Assign images to the domain generators one at a time, in the order given.
# After each assignment the partial map is rebuilt on the subgroup generated by
# the assigned generators; any clash with an existing value or an already-used
# image prunes the branch.  Candidates are scanned in the order supplied, so
# solutions come out in lexicographic order of candidate positions.


def _extend_map(dom, cod, gens, imgs, depth, id_dom, id_cod, fmap, used, queue):
    fmap[:] = -1
    used[:] = False
    fmap[id_dom] = id_cod
    used[id_cod] = True
    queue[0] = id_dom
    size = 1
    head = 0
    while head < size:
        u = queue[head]
        head += 1
        fu = fmap[u]
        for j in range(depth + 1):
            w = dom[u, gens[j]]
            y = cod[fu, imgs[j]]
            if fmap[w] == -1:
                if used[y]:
                    return -1
                fmap[w] = y
                used[y] = True
                queue[size] = w
                size += 1
            elif fmap[w] != y:
                return -1
    return size


def _backtrack_maps(dom, cod, gens, cands, counts, id_dom, id_cod, out):
    k = gens.shape[0]
    n = dom.shape[0]
    found = 0
    if k == 0:
        return 0
    fmap = np.empty(n, dtype=np.int64)
    used = np.zeros(cod.shape[0], dtype=np.bool_)
    queue = np.empty(n, dtype=np.int64)
    imgs = np.zeros(k, dtype=np.int64)
    pos = np.zeros(k, dtype=np.int64)
    depth = 0
    pos[0] = 0
    while depth >= 0:
        if pos[depth] >= counts[depth]:
            depth -= 1
            if depth >= 0:
                pos[depth] += 1
            continue
        imgs[depth] = cands[depth, pos[depth]]
        size = _extend_map(dom, cod, gens, imgs, depth, id_dom, id_cod, fmap, used, queue)
        if size < 0:
            pos[depth] += 1
            continue
        if depth == k - 1:
            if size == n:
                for j in range(k):
                    out[found, j] = imgs[j]
                found += 1
                if found == out.shape[0]:
                    return found
            pos[depth] += 1
            continue
        depth += 1
        pos[depth] = 0
    return found


# ---------------------------------------------------------------------------
# dispatch

nb_closure = nb_first_nonassociative = nb_is_normal = nb_core = None
nb_hom_violation = nb_element_orders = nb_backtrack_maps = None

if _HAVE_NUMBA:
    nb_closure = njit(cache=True)(_loop_closure)
    nb_first_nonassociative = njit(cache=True)(_loop_first_nonassociative)
    nb_is_normal = njit(cache=True)(_loop_is_normal)
    nb_core = njit(cache=True)(_loop_core)
    nb_hom_violation = njit(cache=True)(_loop_hom_violation)
    nb_element_orders = njit(cache=True)(_loop_element_orders)
    _nb_extend_map = njit(cache=True)(_extend_map)

    @njit(cache=True)
    def _nb_backtrack_inner(dom, cod, gens, cands, counts, id_dom, id_cod, out):
        k = gens.shape[0]
        n = dom.shape[0]
        found = 0
        if k == 0:
            return 0
        fmap = np.empty(n, dtype=np.int64)
        used = np.zeros(cod.shape[0], dtype=np.bool_)
        queue = np.empty(n, dtype=np.int64)
        imgs = np.zeros(k, dtype=np.int64)
        pos = np.zeros(k, dtype=np.int64)
        depth = 0
        while depth >= 0:
            if pos[depth] >= counts[depth]:
                depth -= 1
                if depth >= 0:
                    pos[depth] += 1
                continue
            imgs[depth] = cands[depth, pos[depth]]
            size = _nb_extend_map(dom, cod, gens, imgs, depth, id_dom, id_cod, fmap, used, queue)
            if size < 0:
                pos[depth] += 1
                continue
            if depth == k - 1:
                if size == n:
                    for j in range(k):
                        out[found, j] = imgs[j]
                    found += 1
                    if found == out.shape[0]:
                        return found
                pos[depth] += 1
                continue
            depth += 1
            pos[depth] = 0
        return found

    nb_backtrack_maps = _nb_backtrack_inner

np_backtrack_maps = _backtrack_maps

if USING_NUMBA:
    closure = nb_closure
    first_nonassociative = nb_first_nonassociative
    is_normal = nb_is_normal
    core = nb_core
    hom_violation = nb_hom_violation
    element_orders = nb_element_orders
    backtrack_maps = nb_backtrack_maps
else:
    closure = np_closure
    first_nonassociative = np_first_nonassociative
    is_normal = np_is_normal
    core = np_core
    hom_violation = np_hom_violation
    element_orders = np_element_orders
    backtrack_maps = np_backtrack_maps
