"""Property suite: each structural lemma checked against brute force.

Every check takes an instance (and a ``random.Random``) and returns
``("pass" | "fail" | "skip", detail)``. :func:`run_suite` aggregates them in
a fixed order so reports are reproducible for a given seed.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .constructions import (
    BicosetInstance,
    build_bicoset_labeled,
    core_reduce,
    g_hat,
    join_partition,
    make_instance,
)
from .digraph import (
    Digraph,
    extend_by_identity,
    is_automorphism,
    is_invariant_partition,
    is_irreducible,
    is_natural,
    quotient_digraph,
    twin_partition,
    weakly_connected,
    x_join,
)
from .groups import (
    all_subgroups,
    double_coset,
    intermediate_subgroups,
    make_group,
)
from .instance import instance_to_dict
from .perm import orbit_partition
from .recognition import (
    HypothesisWarning,
    digraph_level_recognize,
    join_identity_witness,
    maximal_join_subgroups,
    natural_aut_group,
    recognize,
)
from .search import brute_force_aut

SMALL_GROUP_SPECS = (
    {"kind": "cyclic", "n": 1},
    {"kind": "cyclic", "n": 2},
    {"kind": "cyclic", "n": 3},
    {"kind": "cyclic", "n": 4},
    {"kind": "cyclic", "n": 5},
    {"kind": "cyclic", "n": 6},
    {"kind": "cyclic", "n": 7},
    {"kind": "cyclic", "n": 8},
    {"kind": "cyclic", "n": 9},
    {"kind": "cyclic", "n": 10},
    {"kind": "cyclic", "n": 12},
    {"kind": "dihedral", "n": 2},
    {"kind": "dihedral", "n": 4},
    {"kind": "dihedral", "n": 5},
    {"kind": "dihedral", "n": 6},
    {"kind": "symmetric", "n": 3},
    {"kind": "product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "cyclic", "n": 4}]},
    {"kind": "product", "factors": [{"kind": "cyclic", "n": 3}, {"kind": "cyclic", "n": 3}]},
    {"kind": "product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "cyclic", "n": 6}]},
    {"kind": "product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "symmetric", "n": 3}]},
    {"kind": "product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "cyclic", "n": 2},
                                    {"kind": "cyclic", "n": 3}]},
)


@lru_cache(maxsize=None)
def _group(key: str):
    G = make_group(json.loads(key))
    return G, tuple(all_subgroups(G))


def group_with_subgroups(spec: dict):
    return _group(json.dumps(spec, sort_keys=True))


def random_instance(rng: random.Random, specs=SMALL_GROUP_SPECS, density: float | None = None) -> BicosetInstance:
    """Random ``B(G, H_0, H_1; S_0, S_1)`` with S_i double-coset closures of random subsets."""
    G, subs = group_with_subgroups(rng.choice(specs))
    H0, H1 = rng.choice(subs), rng.choice(subs)
    S = []
    for i in (0, 1):
        p = density if density is not None else rng.choice((0.0, 0.1, 0.2, 0.35, 0.5))
        raw = [g for g in G.elements if rng.random() < p]
        S.append(raw)
    return make_instance(G, H0, H1, S[0], S[1], close=True)


# ---------------------------------------------------------------------------
# checks


def _has_isolated(g: Digraph) -> bool:
    return bool(((g.out_degree() + g.in_degree()) == 0).any())


def check_well_defined(inst, rng, ctx):
    """Arc iff x^-1 y in S_i, for every pair of coset representatives."""
    lb = build_bicoset_labeled(inst)
    G = inst.G
    for i in (0, 1):
        for x in G.elements:
            for y in G.elements:
                expect = G.mul(G.inv(x), y) in inst.S[i]
                got = bool(lb.digraph.adj[lb.vertex_of(i, x), lb.vertex_of(1 - i, y)])
                if expect != got:
                    return "fail", {"part": i, "x": x, "y": y, "expected": expect}
    return "pass", None


def check_ghat_in_aut(inst, rng, ctx):
    lb = build_bicoset_labeled(inst)
    dg = lb.digraph
    if ctx.get("inject_fault"):
        dg = dg.with_arcs_toggled([(0, lb.parts.cells[1][0])])
    gh = g_hat(lb)
    for g in gh.generators:
        if not is_automorphism(dg, g):
            bad = next(a for a in dg.arcs() if not dg.adj[g[a[0]], g[a[1]]])
            return "fail", {"generator": list(g), "arc": list(bad)}
    if gh.orbits() != lb.parts:
        return "fail", {"orbits": [list(c) for c in gh.orbits().cells]}
    return "pass", None


def check_twin_invariant(inst, rng, ctx):
    lb = build_bicoset_labeled(inst)
    tp = twin_partition(lb.digraph)
    if not is_invariant_partition(g_hat(lb), tp):
        return "fail", {"twin_partition": [list(c) for c in tp.cells]}
    return "pass", None


def check_twin_refines_parts(inst, rng, ctx):
    lb = build_bicoset_labeled(inst)
    if _has_isolated(lb.digraph):
        return "skip", "digraph has isolated vertices"
    tp = twin_partition(lb.digraph)
    if not tp.refines(lb.parts):
        return "fail", {"twin_partition": [list(c) for c in tp.cells]}
    return "pass", None


def random_digraph(rng: random.Random, max_n: int = 10) -> Digraph:
    """Random digraph, half the time built as a join so that it has twins."""
    if rng.random() < 0.5:
        n = rng.randint(1, max_n)
        p = rng.random()
        return Digraph(np.array([[u != v and rng.random() < p for v in range(n)] for u in range(n)]))
    k = rng.randint(1, 5)
    p = rng.random()
    x = Digraph(np.array([[u != v and rng.random() < p for v in range(k)] for u in range(k)]))
    return x_join(x, [rng.randint(1, 3) for _ in range(k)])


def check_quotient_irreducible(inst, rng, ctx):
    lb = build_bicoset_labeled(inst)
    for g in (lb.digraph, random_digraph(rng)):
        q = quotient_digraph(g, twin_partition(g))
        if not is_irreducible(q):
            return "fail", {"arcs": g.arcs(), "n": g.n}
    return "pass", None


def check_twin_class_perms(inst, rng, ctx):
    lb = build_bicoset_labeled(inst)
    dg = lb.digraph
    for cell in twin_partition(dg).cells:
        if len(cell) < 2:
            continue
        img = list(cell)
        rng.shuffle(img)
        p = extend_by_identity(dg.n, dict(zip(cell, img)))
        if not is_automorphism(dg, p):
            return "fail", {"perm": list(p)}
    return "pass", None


def check_kernel_orbits(inst, rng, ctx):
    lb = build_bicoset_labeled(inst)
    dg = lb.digraph
    if _has_isolated(dg):
        return "skip", "digraph has isolated vertices"
    tp = twin_partition(dg)
    parts = lb.parts.cells
    for i in (0, 1):
        other = parts[1 - i]
        # part-preserving automorphisms fixing the other part pointwise
        colors = [("p", 0 if v in parts[0] else 1) for v in range(dg.n)]
        for v in other:
            colors[v] = ("f", v)
        kernel = brute_force_aut(dg, colors=colors, cap=ctx.get("cap", 64))
        orbs = orbit_partition(dg.n, kernel.generators)
        mine = {c for c in orbs.cells if c[0] in parts[i]}
        twins = {c for c in tp.cells if c[0] in parts[i]}
        if mine != twins:
            return "fail", {"part": i, "kernel_orbits": sorted(map(list, mine)), "twins": sorted(map(list, twins))}
    return "pass", None


def check_core_reduce(inst, rng, ctx):
    try:
        core_reduce(inst)
    except RuntimeError as e:
        return "fail", str(e)
    return "pass", None


def _intermediate(inst, i, cap):
    return intermediate_subgroups(inst.G, inst.H[i], cap)


def check_join_partition_invariant(inst, rng, ctx):
    """Every P(H_i, K_i) is invariant under the left-multiplication action."""
    lb = build_bicoset_labeled(inst)
    gh = g_hat(lb)
    for K0 in _intermediate(inst, 0, ctx.get("subgroup_cap", 24)):
        for K1 in _intermediate(inst, 1, ctx.get("subgroup_cap", 24)):
            p = join_partition(lb, K0, K1)
            if not is_invariant_partition(gh, p) or not p.refines(lb.parts):
                return "fail", {"K0": sorted(K0.elements), "K1": sorted(K1.elements)}
    return "pass", None


def check_join_equivalence(inst, rng, ctx):
    """Closure identity iff digraph-level all-or-nothing arcs, for all intermediate pairs."""
    lb = build_bicoset_labeled(inst)
    n_pairs = 0
    for K0 in _intermediate(inst, 0, ctx.get("subgroup_cap", 24)):
        for K1 in _intermediate(inst, 1, ctx.get("subgroup_cap", 24)):
            identity = join_identity_witness(inst, (K0, K1)) is None
            structural = digraph_level_recognize(lb.digraph, lb.parts, join_partition(lb, K0, K1))
            n_pairs += 1
            if identity != structural:
                return "fail", {"K0": sorted(K0.elements), "K1": sorted(K1.elements),
                                "identity": identity, "structural": structural}
    return "pass", {"pairs": n_pairs}


def check_maximality(inst, rng, ctx):
    K = maximal_join_subgroups(inst)
    if join_identity_witness(inst, K) is not None:
        return "fail", {"reason": "formula pair violates the identity"}
    cand = [_intermediate(inst, i, ctx.get("subgroup_cap", 24)) for i in (0, 1)]
    if any(K[i] not in cand[i] for i in (0, 1)):
        return "fail", {"reason": "formula subgroup is not intermediate"}
    for K0 in cand[0]:
        for K1 in cand[1]:
            if join_identity_witness(inst, (K0, K1)) is None:
                if not (K0 <= K[0] and K1 <= K[1]):
                    return "fail", {"K0": sorted(K0.elements), "K1": sorted(K1.elements)}
    return "pass", None


def check_irreducible_at_max(inst, rng, ctx):
    if not inst.has_arcs:
        return "skip", "digraph has no arcs"
    d = recognize(inst)
    if not d.irreducible:
        return "fail", {"reason": "quotient reducible"}
    if twin_partition(d.digraph) != d.cells:
        return "fail", {"reason": "twin partition differs from the join partition"}
    return "pass", None


def check_aut_order(inst, rng, ctx):
    if not inst.has_arcs:
        return "skip", "digraph has no arcs"
    d = recognize(inst)
    cap = ctx.get("cap", 64)
    if d.digraph.n > cap:
        return "skip", "over automorphism cap"
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        nat = natural_aut_group(d, cap=cap)
    if not nat.hypotheses["satisfied"]:
        return "skip", "hypotheses not satisfied"
    aut = brute_force_aut(d.digraph, cap=cap)
    if aut.order() != nat.order_formula:
        return "fail", {"brute": aut.order(), "natural": nat.order_formula}
    if any(not aut.contains(g) for g in nat.total.generators):
        return "fail", {"reason": "natural generator outside Aut"}
    if any(not is_natural(g, d.cells) for g in aut.generators):
        return "fail", {"reason": "unnatural automorphism"}
    if d.is_wreath:
        m = d.cell_sizes[0]
        if aut.order() != nat.aut_quotient_order * math.factorial(m) ** d.quotient.digraph.n:
            return "fail", {"reason": "wreath order mismatch"}
    return "pass", {"order": aut.order()}


def check_parts_preserved_or_swapped(inst, rng, ctx):
    lb = build_bicoset_labeled(inst)
    dg = lb.digraph
    if not weakly_connected(dg):
        return "skip", "not weakly connected"
    aut = brute_force_aut(dg, cap=ctx.get("cap", 64))
    for g in aut.generators:
        if not is_invariant_partition([g], lb.parts):
            return "fail", {"generator": list(g)}
    return "pass", None


CHECKS = (
    ("well_defined", "double-coset well-definedness", check_well_defined),
    ("ghat_in_aut", "left multiplication is in Aut", check_ghat_in_aut),
    ("twin_invariant", "twin partition is G-hat invariant", check_twin_invariant),
    ("twin_refines_parts", "twin partition refines the bipartition", check_twin_refines_parts),
    ("quotient_irreducible", "twin quotient is irreducible", check_quotient_irreducible),
    ("twin_class_perms", "twin-class permutations are automorphisms", check_twin_class_perms),
    ("kernel_orbits", "kernel orbits are twin classes", check_kernel_orbits),
    ("core_reduce", "core reduction", check_core_reduce),
    ("join_partition_invariant", "join partition", check_join_partition_invariant),
    ("join_equivalence", "closure identity iff join reconstruction", check_join_equivalence),
    ("maximality", "maximal K_i", check_maximality),
    ("irreducible_at_max", "quotient irreducible at maximal K", check_irreducible_at_max),
    ("aut_order", "natural order equals brute-force order", check_aut_order),
    ("parts_preserved_or_swapped", "bipartition block system", check_parts_preserved_or_swapped),
)


@dataclass
class CheckOutcome:
    name: str
    lemma: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    skip_reasons: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "lemma": self.lemma,
            "status": "pass" if self.ok else "fail",
            "passed": self.passed,
            "failed": self.failed,
            "skipped": self.skipped,
            "skip_reasons": dict(sorted(self.skip_reasons.items())),
            "counterexamples": self.counterexamples,
        }


def run_suite(instances, seed: int = 0, inject_fault: bool = False, cap: int = 64,
              only=None, max_counterexamples: int = 3) -> list:
    """Run every check (or those named in ``only``) on every instance."""
    ctx = {"cap": cap, "subgroup_cap": 24}
    outcomes = []
    instances = list(instances)
    for name, lemma, fn in CHECKS:
        if only is not None and name not in only:
            continue
        out = CheckOutcome(name, lemma)
        rng = random.Random(f"{seed}:{name}")
        for k, inst in enumerate(instances):
            local = dict(ctx, inject_fault=inject_fault and k == 0)
            status, detail = fn(inst, rng, local)
            if status == "pass":
                out.passed += 1
            elif status == "skip":
                out.skipped += 1
                out.skip_reasons[detail] = out.skip_reasons.get(detail, 0) + 1
            else:
                out.failed += 1
                if len(out.counterexamples) < max_counterexamples:
                    out.counterexamples.append({"instance": instance_to_dict(inst), "detail": detail})
        outcomes.append(out)
    return outcomes


def random_instances(seed: int, count: int, specs=SMALL_GROUP_SPECS) -> list:
    rng = random.Random(seed)
    return [random_instance(rng, specs) for _ in range(count)]


def exhaustive_instances(max_order: int, specs=SMALL_GROUP_SPECS):
    """Every instance over the listed groups of order <= ``max_order``: all
    subgroup pairs and all double-coset unions for both connection sets."""
    for spec in specs:
        G, subs = group_with_subgroups(spec)
        if G.order > max_order:
            continue
        for H0 in subs:
            for H1 in subs:
                blocks = []
                for A, B in ((H0, H1), (H1, H0)):
                    blocks.append(sorted({double_coset(G, A, g, B) for g in G.elements}, key=sorted))
                for pick0 in itertools.product((False, True), repeat=len(blocks[0])):
                    S0 = frozenset().union(*(d for d, on in zip(blocks[0], pick0) if on))
                    for pick1 in itertools.product((False, True), repeat=len(blocks[1])):
                        S1 = frozenset().union(*(d for d, on in zip(blocks[1], pick1) if on))
                        yield BicosetInstance(G, (H0, H1), (S0, S1))
