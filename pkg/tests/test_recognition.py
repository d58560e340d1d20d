import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicoset.constructions import build_bicoset_labeled, join_partition, make_instance
from bicoset.digraph import Digraph, is_automorphism, is_natural, join_cells, twin_partition
from bicoset.errors import NotAJoin, NotIntermediate, NotRefinement
from bicoset.groups import (
    cyclic,
    dihedral,
    intermediate_subgroups,
    subgroup_generated,
    trivial_subgroup,
    whole_group,
)
from bicoset.partition import Partition
from bicoset.perm import PermGroup
from bicoset.recognition import (
    HypothesisWarning,
    check_bipartite_join_equivalences,
    digraph_level_recognize,
    haar_recognize,
    join_identity_witness,
    lift,
    maximal_join_subgroups,
    natural_aut_group,
    recognize,
)
from bicoset.search import brute_force_aut
from bicoset.verify import random_instance


def z15():
    G = cyclic(15)
    return make_instance(G, subgroup_generated(G, [3]), subgroup_generated(G, [5]), G.elements, [])


def test_z15_recognition():
    d = recognize(z15())
    assert len(d.K[0]) == len(d.K[1]) == 15
    assert d.cell_sizes == (3, 5)
    assert d.quotient.digraph.arcs() == [(0, 1)]
    assert d.irreducible and d.maximal and not d.is_wreath and not d.trivial_join
    assert d.fiber_sizes == (3, 5)
    nat = natural_aut_group(d)
    assert nat.order() == 720 and nat.complete


def test_explicit_pairs_and_errors():
    inst = z15()
    G = inst.G
    d = recognize(inst, inst.H[0], inst.H[1])
    assert d.trivial_join and not d.maximal
    with pytest.raises(NotIntermediate):
        recognize(inst, trivial_subgroup(G), inst.H[1])
    with pytest.raises(ValueError):
        recognize(inst, inst.H[0], None)
    G6 = cyclic(6)
    one = trivial_subgroup(G6)
    bad = make_instance(G6, one, one, [1], [])
    with pytest.raises(NotAJoin) as e:
        recognize(bad, whole_group(G6), one)
    i, k, s, k2 = e.value.witness
    assert i == 0 and s == 1


def test_digraph_level_refinement_error():
    lb = build_bicoset_labeled(z15())
    with pytest.raises(NotRefinement):
        digraph_level_recognize(lb.digraph, lb.parts, Partition([range(8)]))


def test_haar_recognize_cayley_like():
    G = cyclic(6)
    d = haar_recognize(G, [0, 3], [0, 3])
    assert len(d.K[0]) == len(d.K[1]) == 2
    assert d.is_wreath and d.cell_sizes == (2, 2)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_closure_identity_iff_join(rnd):
    inst = random_instance(rnd)
    lb = build_bicoset_labeled(inst)
    for K0 in intermediate_subgroups(inst.G, inst.H[0]):
        for K1 in intermediate_subgroups(inst.G, inst.H[1]):
            identity = join_identity_witness(inst, (K0, K1)) is None
            cells = join_partition(lb, K0, K1)
            # oracle: every pair of cells across parts is all-or-nothing
            all_or_nothing = all(
                len({bool(lb.digraph.adj[u, v]) for u in a for v in b}) == 1
                for a in cells.cells for b in cells.cells
            )
            assert identity == all_or_nothing
            assert identity == digraph_level_recognize(lb.digraph, lb.parts, cells)


@settings(max_examples=100, deadline=None)
@given(st.randoms(use_true_random=False))
def test_stabilizer_formula_is_maximum(rnd):
    inst = random_instance(rnd)
    K = maximal_join_subgroups(inst)
    valid = [(a, b) for a in intermediate_subgroups(inst.G, inst.H[0])
             for b in intermediate_subgroups(inst.G, inst.H[1])
             if join_identity_witness(inst, (a, b)) is None]
    assert (K[0], K[1]) in valid
    assert all(a <= K[0] and b <= K[1] for a, b in valid)


@settings(max_examples=80, deadline=None)
@given(st.randoms(use_true_random=False))
def test_natural_group_against_brute_force(rnd):
    inst = random_instance(rnd)
    if not inst.has_arcs:
        return
    d = recognize(inst)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", HypothesisWarning)
        nat = natural_aut_group(d)
    assert all(is_automorphism(d.digraph, p) and is_natural(p, d.cells) for p in nat.total.generators)
    # independent Schreier-Sims on the same generators
    assert PermGroup(d.digraph.n, nat.total.generators).order() == nat.order()
    aut = brute_force_aut(d.digraph)
    assert all(aut.contains(p) for p in nat.total.generators)
    if nat.hypotheses["satisfied"]:
        assert aut.order() == nat.order()
        assert twin_partition(d.digraph) == d.cells


def test_example_one_not_complete():
    G = cyclic(5)
    inst = make_instance(G, trivial_subgroup(G), whole_group(G), [0], [0], close=True)
    d = recognize(inst)
    nat = natural_aut_group(d)
    assert d.cell_sizes == (5, 1)
    assert nat.aut_quotient_order == 2 and nat.compatible_quotient_order == 1
    assert not nat.complete
    assert nat.order() == brute_force_aut(d.digraph).order() == 120


def test_wreath_order_formula():
    G = dihedral(3)
    inst = make_instance(G, subgroup_generated(G, [3]), subgroup_generated(G, [3]), [1], [1], close=True)
    d = recognize(inst)
    nat = natural_aut_group(d)
    if d.is_wreath:
        m = d.cell_sizes[0]
        assert nat.order() == nat.compatible_quotient_order * math.factorial(m) ** d.quotient.digraph.n


def test_hypothesis_warning_for_non_maximal():
    inst = z15()
    d = recognize(inst, inst.H[0], inst.H[1])
    with pytest.warns(HypothesisWarning):
        nat = natural_aut_group(d)
    assert not nat.hypotheses["satisfied"]


def test_lift():
    cells = join_cells([2, 2, 1])
    assert lift((1, 0, 2), cells) == (2, 3, 0, 1, 4)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5), st.randoms(use_true_random=False))
def test_join_equivalences(k, rnd):
    p = rnd.random()
    x = Digraph(np.array([[u != v and rnd.random() < p for v in range(k)] for u in range(k)]))
    sizes = [rnd.randint(1, 3) for _ in range(k)]
    r = check_bipartite_join_equivalences(x, sizes, seed=rnd.randint(0, 99))
    assert r["irreducible"] == r["join_is_unworthy"]
    if not r["singleton_twin_fibres"]:
        assert r["agree"]
        if not r["irreducible"]:
            assert r["unnatural_witness"] is not None


def test_join_equivalences_reducible_example():
    x = Digraph.from_arcs(3, [(0, 2), (1, 2)])  # 0 and 1 are twins
    r = check_bipartite_join_equivalences(x, [2, 1, 1])
    assert not r["irreducible"] and not r["join_is_unworthy"] and not r["all_natural"]
    assert r["unnatural_witness"] is not None
    assert r["agree"]


def test_singleton_twin_fibres_break_the_third_condition():
    # X = two isolated vertices, both fibres of size 1: the swap is natural
    r = check_bipartite_join_equivalences(Digraph.empty(2), [1, 1])
    assert not r["irreducible"] and not r["join_is_unworthy"]
    assert r["all_natural"] and r["singleton_twin_fibres"] and not r["agree"]
    r = check_bipartite_join_equivalences(Digraph.empty(2), [2, 2])
    assert r["agree"] and not r["all_natural"] and not r["singleton_twin_fibres"]
