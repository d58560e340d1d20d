"""Automorphism groups and isomorphisms by refinement and backtracking.

Colour refinement here is label-invariant: a vertex's new colour is the rank
of (old colour, out-neighbour colour counts, in-neighbour colour counts)
among all such signatures. Individualising a vertex splits it off in front
of its cell. A search node is compared with the node at the same depth on
the first path through its refinement trace, which prunes subtrees that
cannot contain an image of the first leaf.

The generators found while walking back up the first path form a strong
generating set relative to the base of individualised vertices, so the
group order comes straight from the basic orbits.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .digraph import Digraph, is_automorphism, is_isomorphism
from .errors import CapExceeded
from .perm import PermGroup, orbit_partition

DEFAULT_AUT_CAP = 64


def _rank(values) -> np.ndarray:
    _, inv = np.unique(np.asarray(values), return_inverse=True)
    return inv.reshape(-1).astype(np.int64)


def _initial_colors(n: int, colors) -> np.ndarray:
    if colors is None:
        return np.zeros(n, dtype=np.int64)
    if len(colors) != n:
        raise ValueError("one colour per vertex required")
    keys = sorted(set(colors))
    index = {k: i for i, k in enumerate(keys)}
    return np.array([index[c] for c in colors], dtype=np.int64)


def refine(adj: np.ndarray, colors: np.ndarray):
    """Equitable refinement; returns (colours, trace)."""
    n = len(colors)
    trace = []
    k = int(colors.max()) + 1 if n else 0
    while True:
        onehot = np.zeros((n, k), dtype=np.int64)
        onehot[np.arange(n), colors] = 1
        sig = np.concatenate([colors[:, None], adj @ onehot, adj.T @ onehot], axis=1)
        uniq, new = np.unique(sig, axis=0, return_inverse=True)
        new = new.reshape(-1).astype(np.int64)
        trace.append(uniq.tobytes())
        trace.append(uniq.shape)
        if uniq.shape[0] == k:
            return colors, tuple(trace)
        colors, k = new, uniq.shape[0]


def individualize(colors: np.ndarray, v: int) -> np.ndarray:
    c = colors * 2 + 1
    c[v] -= 1
    return _rank(c)


def _target_cell(colors: np.ndarray):
    counts = np.bincount(colors)
    big = np.flatnonzero(counts > 1)
    if big.size == 0:
        return None
    return np.flatnonzero(colors == big[0]).tolist()


class _Tree:
    """First path of the search tree of one (digraph, colouring)."""

    def __init__(self, g: Digraph, colors=None):
        self.g = g
        self.adj = g.adj.astype(np.int64)
        root, tr = refine(self.adj, _initial_colors(g.n, colors))
        self.nodes = [root]
        self.traces = [tr]
        self.base = []
        c = root
        while True:
            cell = _target_cell(c)
            if cell is None:
                break
            v = cell[0]
            self.base.append(v)
            c, tr = refine(self.adj, individualize(c, v))
            self.nodes.append(c)
            self.traces.append(tr)
        self.leaf = c
        self.order_of_leaf = np.argsort(c)  # position -> vertex


def _dfs(adj, colors, depth, ref: _Tree, accept):
    """Depth-first search below a node; ``accept(leaf_colors)`` returns a result or None."""
    cell = _target_cell(colors)
    if cell is None:
        return accept(colors)
    for w in cell:
        c, tr = refine(adj, individualize(colors, w))
        if tr != ref.traces[depth + 1]:
            continue
        out = _dfs(adj, c, depth + 1, ref, accept)
        if out is not None:
            return out
    return None


def brute_force_aut(g: Digraph, colors: Sequence | None = None, cap: int = DEFAULT_AUT_CAP) -> PermGroup:
    """Full automorphism group (colour-preserving when ``colors`` is given)."""
    if g.n > cap:
        raise CapExceeded(f"{g.n} vertices exceeds automorphism search cap {cap}")
    n = g.n
    if n == 0:
        return PermGroup(0, [])
    tree = _Tree(g, colors)
    first = tree.order_of_leaf
    gens = []
    for level in reversed(range(len(tree.base))):
        node = tree.nodes[level]
        b = tree.base[level]
        fixed = tree.base[:level]
        orbit_of = orbit_partition(n, gens)
        cell = np.flatnonzero(node == node[b]).tolist()
        reached = set(orbit_of.cells[orbit_of.cell_of[b]])
        for w in cell:
            if w in reached:
                continue

            def accept(leaf, w=w):
                perm = np.empty(n, dtype=np.int64)
                perm[first] = np.argsort(leaf)
                p = tuple(perm.tolist())
                if p[b] != w or any(p[x] != x for x in fixed):
                    return None
                return p if is_automorphism(g, p) else None

            c, tr = refine(tree.adj, individualize(node, w))
            found = None
            if tr == tree.traces[level + 1]:
                found = _dfs(tree.adj, c, level + 1, tree, accept)
            if found is not None:
                gens.append(found)
                orbit_of = orbit_partition(n, gens)
                reached = set(orbit_of.cells[orbit_of.cell_of[b]])
    return PermGroup(n, gens, base=tree.base, strong_generators=gens)


def are_isomorphic(g1: Digraph, g2: Digraph, colors1: Sequence | None = None,
                   colors2: Sequence | None = None, cap: int = DEFAULT_AUT_CAP):
    """A vertex bijection f with (u,v) arc of g1 iff (f(u),f(v)) arc of g2, or None."""
    if max(g1.n, g2.n) > cap:
        raise CapExceeded(f"vertex count exceeds isomorphism search cap {cap}")
    if g1.n != g2.n or g1.arc_count() != g2.arc_count():
        return None
    if (colors1 is None) != (colors2 is None):
        raise ValueError("colour both digraphs or neither")
    if colors1 is not None and sorted(colors1) != sorted(colors2):
        return None
    n = g1.n
    if n == 0:
        return ()
    ref = _Tree(g1, colors1)
    adj2 = g2.adj.astype(np.int64)
    if colors1 is not None:
        # shared colour vocabulary so ranks agree
        keys = sorted(set(colors1))
        colors2 = [keys.index(c) for c in colors2]
        init2 = np.array(colors2, dtype=np.int64)
    else:
        init2 = np.zeros(n, dtype=np.int64)
    root2, tr = refine(adj2, init2)
    if tr != ref.traces[0]:
        return None
    first = ref.order_of_leaf

    def accept(leaf):
        f = np.empty(n, dtype=np.int64)
        f[first] = np.argsort(leaf)
        f = tuple(f.tolist())
        return f if is_isomorphism(g1, g2, f) else None

    return _dfs(adj2, root2, 0, ref, accept)
