"""Cayley, coset, Haar and bicoset digraphs, the left-multiplication action,
join partitions and core reduction."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .digraph import Digraph, is_isomorphism
from .errors import (
    ConnectionSetMeetsSubgroup,
    IdentityInConnectionSet,
    NotDoubleCosetUnion,
    NotIntermediate,
)
from .groups import (
    FiniteGroup,
    Subgroup,
    core,
    double_coset_closure,
    inverse_set,
    is_double_coset_union,
    left_cosets,
    quotient_group,
    subgroup_generated,
)
from .partition import Partition
from .perm import PermGroup


@dataclass(frozen=True)
class BicosetInstance:
    """The data ``B(G, H_0, H_1; S_0, S_1)`` with ``S_i = H_i S_i H_{i+1}`` checked."""

    G: FiniteGroup = field(repr=False)
    H: tuple  # (H_0, H_1)
    S: tuple  # (frozenset, frozenset)

    def __post_init__(self):
        for i in (0, 1):
            if self.H[i].parent is not self.G:
                raise ValueError(f"H_{i} is not a subgroup of this group")
            if not is_double_coset_union(self.G, self.S[i], self.H[i], self.H[1 - i]):
                raise NotDoubleCosetUnion(i)

    @property
    def has_arcs(self) -> bool:
        return bool(self.S[0] or self.S[1])


def make_instance(G: FiniteGroup, H0: Subgroup, H1: Subgroup, S0: Iterable[int], S1: Iterable[int],
                  close: bool = False) -> BicosetInstance:
    """Validate (or with ``close=True`` first double-coset-close) the connection sets."""
    S0, S1 = frozenset(S0), frozenset(S1)
    if close:
        S0 = double_coset_closure(G, S0, H0, H1)
        S1 = double_coset_closure(G, S1, H1, H0)
    return BicosetInstance(G, (H0, H1), (S0, S1))


@dataclass(frozen=True)
class LabeledBicosetDigraph:
    digraph: Digraph
    instance: BicosetInstance = field(repr=False)
    cosets: tuple  # (CosetList for H_0, CosetList for H_1)
    parts: Partition
    vertex_map: tuple  # vertex -> (part, coset representative)

    def vertex_of(self, part: int, g: int) -> int:
        """Vertex id of the coset g H_part."""
        offset = 0 if part == 0 else len(self.cosets[0])
        return offset + self._where[part][g]

    @property
    def _where(self):
        w = self.__dict__.get("_where_cache")
        if w is None:
            w = (self.cosets[0].index_of(), self.cosets[1].index_of())
            object.__setattr__(self, "_where_cache", w)
        return w


def build_bicoset_labeled(inst: BicosetInstance) -> LabeledBicosetDigraph:
    G = inst.G
    cl = (left_cosets(G, inst.H[0]), left_cosets(G, inst.H[1]))
    n0, n1 = len(cl[0]), len(cl[1])
    offset = (0, n0)
    where = (cl[0].index_of(), cl[1].index_of())
    adj = np.zeros((n0 + n1, n0 + n1), dtype=bool)
    for i in (0, 1):
        j = 1 - i
        for g in G.elements:
            u = offset[i] + where[i][g]
            for s in inst.S[i]:
                adj[u, offset[j] + where[j][G.mul(g, s)]] = True
    vmap = tuple((i, r) for i in (0, 1) for r in cl[i].reps)
    labels = [f"{G.labels[r]}H{i}" for i, r in vmap]
    parts = Partition([range(n0), range(n0, n0 + n1)], keep_order=True)
    dg = Digraph(adj, labels)
    assert not dg.has_loops()
    return LabeledBicosetDigraph(dg, inst, cl, parts, vmap)


def build_bicoset(G: FiniteGroup, H0: Subgroup, H1: Subgroup, S0: Iterable[int], S1: Iterable[int],
                  close: bool = False) -> LabeledBicosetDigraph:
    """Bicoset digraph; part 0 holds the cosets of H_0, part 1 those of H_1."""
    return build_bicoset_labeled(make_instance(G, H0, H1, S0, S1, close=close))


def build_bicoset_graph(G: FiniteGroup, H0: Subgroup, H1: Subgroup, S: Iterable[int],
                        close: bool = False) -> Digraph:
    """Undirected bicoset graph as symmetric arcs: ``B(G, H_0, H_1; S, S^-1)``."""
    S = frozenset(S)
    if close:
        S = double_coset_closure(G, S, H0, H1)
    if not is_double_coset_union(G, S, H0, H1):
        raise NotDoubleCosetUnion(0)
    return build_bicoset(G, H0, H1, S, inverse_set(G, S)).digraph


def build_cayley(G: FiniteGroup, S: Iterable[int]) -> Digraph:
    S = sorted(set(S))
    if G.identity in S:
        raise IdentityInConnectionSet("identity in connection set would create loops")
    arcs = [(g, G.mul(g, s)) for g in G.elements for s in S]
    return Digraph.from_arcs(G.order, arcs, G.labels)


def build_coset_digraph(G: FiniteGroup, H: Subgroup, S: Iterable[int]) -> Digraph:
    S = frozenset(S)
    if S & H.elements:
        raise ConnectionSetMeetsSubgroup("S meets H")
    if not is_double_coset_union(G, S, H, H):
        raise NotDoubleCosetUnion(0, "NotDoubleCosetUnion S (HSH != S)")
    cl = left_cosets(G, H)
    where = cl.index_of()
    arcs = [(where[g], where[G.mul(g, s)]) for g in G.elements for s in S]
    return Digraph.from_arcs(len(cl), arcs, [f"{G.labels[r]}H" for r in cl.reps])


def build_haar_digraph(G: FiniteGroup, S0: Iterable[int], S1: Iterable[int]) -> Digraph:
    """Vertex ``(i, g)`` has id ``i*|G| + g``."""
    n = G.order
    arcs = [(g, n + G.mul(g, s)) for g in G.elements for s in set(S0)]
    arcs += [(n + g, G.mul(g, s)) for g in G.elements for s in set(S1)]
    labels = [f"({i},{G.labels[g]})" for i in (0, 1) for g in G.elements]
    return Digraph.from_arcs(2 * n, arcs, labels)


def build_haar_graph(G: FiniteGroup, S: Iterable[int]) -> Digraph:
    S = frozenset(S)
    return build_haar_digraph(G, S, inverse_set(G, S))


def generating_set(G: FiniteGroup) -> list:
    """A small generating set, chosen greedily in element-id order."""
    gens, cur = [], frozenset([G.identity])
    for g in G.elements:
        if g not in cur:
            gens.append(g)
            cur = subgroup_generated(G, gens).elements
    return gens


def g_hat_perm(lb: LabeledBicosetDigraph, g: int) -> tuple:
    G = lb.instance.G
    return tuple(lb.vertex_of(i, G.mul(g, r)) for i, r in lb.vertex_map)


def g_hat(lb: LabeledBicosetDigraph) -> PermGroup:
    """Left multiplication of G on both coset spaces, as a permutation group."""
    G = lb.instance.G
    return PermGroup(lb.digraph.n, [g_hat_perm(lb, g) for g in generating_set(G)])


def join_partition(lb: LabeledBicosetDigraph, K0: Subgroup, K1: Subgroup) -> Partition:
    """Cells: the H_i-cosets inside each K_i-coset; K_0 cells first, in coset order."""
    inst = lb.instance
    K = (K0, K1)
    for i in (0, 1):
        if not inst.H[i] <= K[i]:
            raise NotIntermediate(f"H_{i} is not contained in K_{i}")
    cells = []
    for i in (0, 1):
        for coset in left_cosets(inst.G, K[i]).cosets:
            cells.append(sorted({lb.vertex_of(i, g) for g in coset}))
    return Partition(cells, n=lb.digraph.n, keep_order=True)


def core_reduce(inst: BicosetInstance):
    """Return ``(reduced instance over G/N, witness)`` with N the common core.

    ``witness[v]`` is the vertex of the reduced digraph corresponding to v;
    it is checked to be an isomorphism before returning.
    """
    G = inst.G
    c0, c1 = core(G, inst.H[0]), core(G, inst.H[1])
    N = Subgroup(G, c0.elements & c1.elements)
    Q, proj = quotient_group(G, N)
    Hq = tuple(Subgroup(Q, frozenset(proj[h] for h in inst.H[i].elements)) for i in (0, 1))
    Sq = tuple(frozenset(proj[s] for s in inst.S[i]) for i in (0, 1))
    reduced = BicosetInstance(Q, Hq, Sq)
    lb = build_bicoset_labeled(inst)
    lq = build_bicoset_labeled(reduced)
    witness = tuple(lq.vertex_of(i, proj[r]) for i, r in lb.vertex_map)
    if not is_isomorphism(lb.digraph, lq.digraph, witness):
        raise RuntimeError("core reduction witness is not an isomorphism")
    return reduced, witness
