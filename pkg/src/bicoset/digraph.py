"""Dense digraphs, twin partitions, quotients and X-joins with empty fibers."""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import NotNatural
from .partition import Partition
from .perm import Perm


class Digraph:
    """Digraph on vertices ``0..n-1`` stored as an n-by-n boolean matrix.

    ``adj[u, v]`` is True iff (u, v) is an arc. ``labels`` is an optional
    per-vertex descriptor used only for display and export.
    """

    __slots__ = ("adj", "n", "labels")

    def __init__(self, adj, labels: Sequence[str] | None = None):
        a = np.array(adj, dtype=bool)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            if a.size == 0:
                a = np.zeros((0, 0), dtype=bool)
            else:
                raise ValueError("adjacency must be square")
        a.setflags(write=False)
        self.adj = a
        self.n = a.shape[0]
        if labels is not None and len(labels) != self.n:
            raise ValueError("one label per vertex required")
        self.labels = tuple(labels) if labels is not None else None

    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[tuple], labels=None) -> "Digraph":
        a = np.zeros((n, n), dtype=bool)
        for u, v in arcs:
            a[u, v] = True
        return cls(a, labels)

    @classmethod
    def empty(cls, n: int) -> "Digraph":
        return cls(np.zeros((n, n), dtype=bool))

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.arc_count()})"

    def __eq__(self, other):
        """Exact equality of vertex count and arc set (labels ignored)."""
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and bool((self.adj == other.adj).all())

    __hash__ = None

    def arcs(self) -> list:
        return [tuple(x) for x in np.argwhere(self.adj).tolist()]

    def arc_count(self) -> int:
        return int(self.adj.sum())

    def has_loops(self) -> bool:
        return bool(self.adj.diagonal().any())

    def out_degree(self) -> np.ndarray:
        return self.adj.sum(axis=1)

    def in_degree(self) -> np.ndarray:
        return self.adj.sum(axis=0)

    def is_symmetric(self) -> bool:
        return bool((self.adj == self.adj.T).all())

    def relabeled(self, perm: Sequence[int]) -> "Digraph":
        """Image under the vertex map ``v -> perm[v]``."""
        p = np.asarray(perm, dtype=np.int64)
        a = np.zeros_like(self.adj)
        a[np.ix_(p, p)] = self.adj
        return Digraph(a)

    def with_arcs_toggled(self, arcs: Iterable[tuple]) -> "Digraph":
        a = self.adj.copy()
        for u, v in arcs:
            a[u, v] = not a[u, v]
        return Digraph(a, self.labels)


def out_neighbors(g: Digraph, v: int) -> frozenset:
    return frozenset(np.flatnonzero(g.adj[v]).tolist())


def in_neighbors(g: Digraph, v: int) -> frozenset:
    return frozenset(np.flatnonzero(g.adj[:, v]).tolist())


def is_automorphism(g: Digraph, perm: Sequence[int]) -> bool:
    p = np.asarray(perm, dtype=np.int64)
    return bool((g.adj[np.ix_(p, p)] == g.adj).all())


def is_isomorphism(g1: Digraph, g2: Digraph, f: Sequence[int]) -> bool:
    """True iff ``f`` maps arcs of g1 onto arcs of g2 (both directions)."""
    if g1.n != g2.n or sorted(f) != list(range(g1.n)):
        return False
    p = np.asarray(f, dtype=np.int64)
    return bool((g2.adj[np.ix_(p, p)] == g1.adj).all())


def twin_partition(g: Digraph) -> Partition:
    """Classes of equal out- and in-neighbourhoods (the unworthy partition)."""
    keys = {}
    labels = []
    for v in range(g.n):
        key = (g.adj[v].tobytes(), g.adj[:, v].tobytes())
        labels.append(keys.setdefault(key, len(keys)))
    return Partition.from_labels(labels)


def is_irreducible(g: Digraph) -> bool:
    return twin_partition(g).is_discrete()


def quotient_digraph(g: Digraph, p: Partition) -> Digraph:
    """One vertex per cell in the partition's cell order; an arc when any cross arc exists."""
    if p.n != g.n:
        raise ValueError("partition size does not match digraph")
    k = len(p)
    m = np.zeros((g.n, k), dtype=np.int64)
    m[np.arange(g.n), list(p.cell_of)] = 1
    q = (m.T @ g.adj.astype(np.int64) @ m) > 0
    return Digraph(q)


def join_cells(sizes: Sequence[int]) -> Partition:
    """The join partition of ``x_join(X, sizes)``: consecutive blocks."""
    cells, start = [], 0
    for s in sizes:
        cells.append(range(start, start + s))
        start += s
    return Partition(cells, n=start, keep_order=True)


def x_join_partition(x: Digraph, cells: Partition) -> Digraph:
    """X-join with empty fibers laid out on a given partition.

    Cell k of ``cells`` is the fiber of vertex k of X; the result has an arc
    (u, v) iff X has an arc from the cell of u to the cell of v.
    """
    if len(cells) != x.n:
        raise ValueError("one cell per vertex of X required")
    owner = np.asarray(cells.cell_of, dtype=np.int64)
    return Digraph(x.adj[np.ix_(owner, owner)])


def x_join(x: Digraph, sizes: Sequence[int]) -> Digraph:
    """X-join with empty fibers: vertex x of X becomes ``sizes[x]`` vertices.

    Vertices of the fiber of x are consecutive, fibers in X's vertex order.
    A loop at x makes its fiber complete, loops included, exactly as the
    join definition reads.
    """
    if len(sizes) != x.n:
        raise ValueError("one size per vertex of X required")
    if any(s < 1 for s in sizes):
        raise ValueError("fiber sizes must be positive")
    return x_join_partition(x, join_cells(sizes))


def wreath_with_empty(x: Digraph, m: int) -> Digraph:
    if m < 1:
        raise ValueError("m must be positive")
    return x_join(x, [m] * x.n)


def weakly_connected(g: Digraph) -> bool:
    if g.n == 0:
        return True
    und = g.adj | g.adj.T
    seen = np.zeros(g.n, dtype=bool)
    seen[0] = True
    stack = [0]
    while stack:
        v = stack.pop()
        for w in np.flatnonzero(und[v] & ~seen):
            seen[w] = True
            stack.append(int(w))
    return bool(seen.all())


def maps_cells_to_cells(perm: Sequence[int], p: Partition) -> bool:
    for c in p.cells:
        target = p.cell_of[perm[c[0]]]
        if any(p.cell_of[perm[v]] != target for v in c):
            return False
        if len(p.cells[target]) != len(c):
            return False
    return True


def is_invariant_partition(group, p: Partition) -> bool:
    """True iff every generator maps cells onto cells; accepts a PermGroup or generators."""
    gens = getattr(group, "generators", group)
    return all(maps_cells_to_cells(g, p) for g in gens)


def is_natural(perm: Sequence[int], p: Partition) -> bool:
    return maps_cells_to_cells(perm, p)


def induced_on_cells(perm: Sequence[int], p: Partition) -> Perm:
    """The permutation of cells (by cell index) induced by a natural permutation."""
    if not is_natural(perm, p):
        raise NotNatural("permutation splits a cell")
    return tuple(p.cell_of[perm[c[0]]] for c in p.cells)


def extend_by_identity(n: int, mapping: dict) -> Perm:
    out = list(range(n))
    for a, b in mapping.items():
        out[a] = b
    return tuple(out)


def is_bipartition(g: Digraph, parts: Partition) -> bool:
    """No arc inside any cell of ``parts``."""
    same = np.equal.outer(np.array(parts.cell_of), np.array(parts.cell_of))
    return not bool((g.adj & same).any())


# ---------------------------------------------------------------------------
# export


_PALETTE = ("lightblue", "lightsalmon", "palegreen", "khaki", "plum", "lightgrey")


def to_dot(g: Digraph, parts: Partition | None = None, cells: Partition | None = None,
           name: str = "G") -> str:
    """DOT text; one ``subgraph cluster_i`` per part, nodes filled by cell."""
    lines = [f'digraph "{name}" {{']
    groups = parts.cells if parts is not None else [tuple(range(g.n))]

    def node(v):
        label = g.labels[v] if g.labels is not None else str(v)
        attrs = [f'label="{label}"']
        if cells is not None:
            attrs.append("style=filled")
            attrs.append(f'fillcolor="{_PALETTE[cells.cell_of[v] % len(_PALETTE)]}"')
        return f'    {v} [{", ".join(attrs)}];'

    if parts is not None:
        for i, part in enumerate(groups):
            lines.append(f"  subgraph cluster_{i} {{")
            lines.append(f'    label="B{i}";')
            lines.extend(node(v) for v in part)
            lines.append("  }")
    else:
        lines.extend(node(v)[2:] for v in range(g.n))
    for u, v in g.arcs():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_json_dict(g: Digraph, parts: Partition | None = None) -> dict:
    out = {"n": g.n, "arcs": [list(a) for a in g.arcs()]}
    out["parts"] = [list(c) for c in parts.cells] if parts is not None else None
    out["labels"] = list(g.labels) if g.labels is not None else None
    return out


def from_json_dict(d: dict) -> Digraph:
    return Digraph.from_arcs(d["n"], (tuple(a) for a in d["arcs"]), d.get("labels"))
