"""Recognising bicoset digraphs that are X-joins of empty digraphs, and
assembling their natural automorphism groups."""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .constructions import (
    BicosetInstance,
    LabeledBicosetDigraph,
    build_bicoset_labeled,
    join_partition,
    make_instance,
)
from .digraph import (
    Digraph,
    is_automorphism,
    is_bipartition,
    is_irreducible,
    is_natural,
    join_cells,
    quotient_digraph,
    twin_partition,
    weakly_connected,
    x_join,
    x_join_partition,
)
from .errors import NotAJoin, NotIntermediate, NotRefinement
from .groups import FiniteGroup, Subgroup, closure_witness, trivial_subgroup
from .partition import Partition
from .perm import PermGroup, compose, transposition
from .search import DEFAULT_AUT_CAP, brute_force_aut


class HypothesisWarning(UserWarning):
    """Raised through ``warnings`` when a theorem hypothesis is not met."""


@dataclass(frozen=True)
class JoinDecomposition:
    instance: BicosetInstance = field(repr=False)
    K: tuple
    labeled: LabeledBicosetDigraph = field(repr=False)
    quotient: LabeledBicosetDigraph = field(repr=False)
    cells: Partition
    cell_sizes: tuple  # (m_0, m_1)
    maximal: bool
    irreducible: bool
    is_wreath: bool
    trivial_join: bool

    @property
    def digraph(self) -> Digraph:
        return self.labeled.digraph

    @property
    def fiber_sizes(self) -> tuple:
        """Size of the fiber over each quotient vertex, in quotient vertex order."""
        return self.cells.sizes()


def _left_stabilizer(G: FiniteGroup, S: frozenset) -> set:
    return {g for g in G.elements if frozenset(G.mul(g, s) for s in S) == S}


def _right_stabilizer(G: FiniteGroup, S: frozenset) -> set:
    return {g for g in G.elements if frozenset(G.mul(s, g) for s in S) == S}


def maximal_join_subgroups(inst: BicosetInstance) -> tuple:
    """Largest (K_0, K_1) with ``S_i = K_i S_i K_{i+1}``.

    The identity splits into ``K_0 S_0 = S_0``, ``S_1 K_0 = S_1`` and the
    mirror conditions on K_1, so each K_i is an intersection of a left and a
    right set stabilizer.
    """
    G, S = inst.G, inst.S
    k0 = _left_stabilizer(G, S[0]) & _right_stabilizer(G, S[1])
    k1 = _left_stabilizer(G, S[1]) & _right_stabilizer(G, S[0])
    return Subgroup(G, frozenset(k0)), Subgroup(G, frozenset(k1))


def join_identity_witness(inst: BicosetInstance, K: Sequence[Subgroup]):
    """``(i, k_i, s_i, k_{i+1})`` violating ``S_i = K_i S_i K_{i+1}``, or None."""
    for i in (0, 1):
        w = closure_witness(inst.G, inst.S[i], K[i], K[1 - i])
        if w is not None:
            return (i,) + w
    return None


def recognize(inst: BicosetInstance, K0: Subgroup | None = None, K1: Subgroup | None = None) -> JoinDecomposition:
    """Decompose the bicoset digraph as a join over ``P(H_i, K_i)``.

    Without K_i the maximal pair is used. Raises NotAJoin when the closure
    identity fails for the supplied pair.
    """
    Kmax = maximal_join_subgroups(inst)
    if K0 is None and K1 is None:
        K = Kmax
    elif K0 is None or K1 is None:
        raise ValueError("supply both K_0 and K_1 or neither")
    else:
        K = (K0, K1)
        for i in (0, 1):
            if not inst.H[i] <= K[i]:
                raise NotIntermediate(f"H_{i} is not contained in K_{i}")
        w = join_identity_witness(inst, K)
        if w is not None:
            raise NotAJoin(w)
    lb = build_bicoset_labeled(inst)
    xq = build_bicoset_labeled(BicosetInstance(inst.G, K, inst.S))
    cells = join_partition(lb, *K)
    if x_join_partition(xq.digraph, cells) != lb.digraph:
        raise AssertionError("join reconstruction differs from the bicoset digraph")
    if xq.digraph.has_loops():
        raise AssertionError("quotient has loops")
    m = (len(K[0]) // len(inst.H[0]), len(K[1]) // len(inst.H[1]))
    return JoinDecomposition(
        instance=inst,
        K=K,
        labeled=lb,
        quotient=xq,
        cells=cells,
        cell_sizes=m,
        maximal=K[0].elements == Kmax[0].elements and K[1].elements == Kmax[1].elements,
        irreducible=is_irreducible(xq.digraph),
        is_wreath=m[0] == m[1],
        trivial_join=m == (1, 1),
    )


def haar_recognize(G: FiniteGroup, S0, S1, K0=None, K1=None) -> JoinDecomposition:
    one = trivial_subgroup(G)
    return recognize(make_instance(G, one, one, S0, S1), K0, K1)


def digraph_level_recognize(g: Digraph, parts: Partition, cells: Partition) -> bool:
    """True iff arcs between every pair of cells in different parts are all-or-nothing."""
    if not cells.refines(parts):
        raise NotRefinement("cell partition does not refine the bipartition")
    if not is_bipartition(g, parts):
        raise ValueError("parts is not a bipartition of the digraph")
    adj = g.adj
    for a in cells.cells:
        for b in cells.cells:
            if parts.cell_of[a[0]] == parts.cell_of[b[0]]:
                continue
            block = adj[np.ix_(a, b)]
            if block.any() and not block.all():
                return False
    q = quotient_digraph(g, cells)
    assert x_join_partition(q, cells) == g
    return True


# ---------------------------------------------------------------------------
# natural automorphisms


@dataclass(frozen=True)
class NaturalAutGroup:
    total: PermGroup
    lifted_quotient_gens: tuple
    cell_gens: tuple
    complete: bool
    order_formula: int
    aut_quotient_order: int
    compatible_quotient_order: int
    hypotheses: dict
    verified: bool

    def order(self) -> int:
        return self.order_formula


def lift(sigma: Sequence[int], cells: Partition) -> tuple:
    """Natural permutation sending cell x onto cell sigma(x) in index order."""
    out = [0] * cells.n
    for x, c in enumerate(cells.cells):
        target = cells.cells[sigma[x]]
        for a, b in zip(c, target):
            out[a] = b
    return tuple(out)


def natural_aut_group(decomp: JoinDecomposition, cap: int = DEFAULT_AUT_CAP) -> NaturalAutGroup:
    """Group of natural automorphisms of the join over the quotient.

    Generated by lifts of the fibre-size-preserving automorphisms of the
    quotient and adjacent transpositions inside each fibre.
    """
    x = decomp.quotient.digraph
    gamma = decomp.digraph
    cells = decomp.cells
    sizes = cells.sizes()

    aut_x = brute_force_aut(x, cap=cap)
    compat = brute_force_aut(x, colors=list(sizes), cap=cap)
    lifts = tuple(lift(s, cells) for s in compat.generators)
    n = cells.n
    cell_gens = tuple(transposition(n, c[j], c[j + 1]) for c in cells.cells for j in range(len(c) - 1))

    base = [cells.cells[xv][0] for xv in compat.base]
    in_base = set(base)
    for c in cells.cells:
        for v in c[:-1]:
            if v not in in_base:
                base.append(v)
                in_base.add(v)
    sgs = [lift(s, cells) for s in compat.strong_generators] + list(cell_gens)
    total = PermGroup(n, lifts + cell_gens, base=base, strong_generators=sgs)

    order_formula = compat.order()
    for c in cells.cells:
        order_formula *= math.factorial(len(c))

    hyp = {
        "maximal": decomp.maximal,
        "irreducible": decomp.irreducible,
        "has_arcs": decomp.instance.has_arcs,
        "weakly_connected": weakly_connected(gamma),
        "aut_quotient_transitive": aut_x.is_transitive(),
    }
    if gamma.n <= cap:
        hyp["aut_transitive"] = brute_force_aut(gamma, cap=cap).is_transitive()
        hyp["aut_transitive_heuristic"] = False
    else:
        hyp["aut_transitive"] = total.is_transitive()
        hyp["aut_transitive_heuristic"] = True
    ok = (
        hyp["maximal"]
        and hyp["irreducible"]
        and (hyp["weakly_connected"] or not hyp["aut_quotient_transitive"])
        and (hyp["weakly_connected"] or not hyp["aut_transitive"])
    )
    hyp["satisfied"] = ok
    if not ok:
        warnings.warn(f"natural automorphism hypotheses not met: {hyp}", HypothesisWarning, stacklevel=2)
    return NaturalAutGroup(
        total=total,
        lifted_quotient_gens=lifts,
        cell_gens=cell_gens,
        complete=compat.order() == aut_x.order(),
        order_formula=order_formula,
        aut_quotient_order=aut_x.order(),
        compatible_quotient_order=compat.order(),
        hypotheses=hyp,
        verified=ok and not hyp["aut_transitive_heuristic"],
    )


def check_bipartite_join_equivalences(x: Digraph, sizes: Sequence[int], samples: int = 20,
                                      seed: int = 0, cap: int = DEFAULT_AUT_CAP) -> dict:
    """Evaluate the three equivalent conditions for a join with empty fibres independently."""
    gamma = x_join(x, sizes)
    cells = join_cells(sizes)
    irreducible = is_irreducible(x)
    join_is_twin = twin_partition(gamma) == cells
    aut = brute_force_aut(gamma, cap=cap)
    witness = next((g for g in aut.generators if not is_natural(g, cells)), None)
    gens_natural = witness is None
    rng = random.Random(seed)
    sampled_natural = True
    if aut.generators:
        for _ in range(samples):
            p = tuple(range(gamma.n))
            for _ in range(rng.randint(1, 6)):
                p = compose(rng.choice(aut.generators), p)
            assert is_automorphism(gamma, p)
            if not is_natural(p, cells):
                sampled_natural = False
                if witness is None:
                    witness = p
    # products of cell-preserving permutations preserve cells
    assert sampled_natural or not gens_natural
    all_natural = gens_natural and sampled_natural
    # Twin vertices of X whose fibres are all singletons can be swapped
    # naturally, so (3) may hold although X is reducible.
    twin_classes = [c for c in twin_partition(x).cells if len(c) > 1]
    singleton_twins = bool(twin_classes) and all(sizes[v] == 1 for c in twin_classes for v in c)
    return {
        "irreducible": irreducible,
        "join_is_unworthy": join_is_twin,
        "all_natural": all_natural,
        "unnatural_witness": None if witness is None else list(witness),
        "agree": irreducible == join_is_twin == all_natural,
        "singleton_twin_fibres": singleton_twins,
    }
