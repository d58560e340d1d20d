import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bicoset.errors import InstanceError, NonAssociative, NoIdentity, NotLatinSquare, NotNormal, NotSubgroup
from bicoset.groups import (
    FiniteGroup,
    Subgroup,
    all_subgroups,
    core,
    cyclic,
    dihedral,
    direct_product,
    double_coset,
    double_coset_closure,
    intermediate_subgroups,
    is_double_coset_union,
    is_normal,
    left_cosets,
    make_group,
    quotient_group,
    subgroup_generated,
    symmetric,
    trivial_subgroup,
    whole_group,
)
from bicoset.verify import SMALL_GROUP_SPECS, group_with_subgroups


def brute_isomorphic(A: FiniteGroup, B: FiniteGroup) -> bool:
    """Oracle: try every bijection."""
    if A.order != B.order:
        return False
    n = A.order
    for f in itertools.permutations(range(n)):
        if all(f[A.mul(a, b)] == B.mul(f[a], f[b]) for a in range(n) for b in range(n)):
            return True
    return False


def brute_subgroups(G: FiniteGroup) -> set:
    """Oracle: every subset containing the identity and closed under products."""
    out = set()
    others = [g for g in G.elements if g != G.identity]
    for r in range(len(others) + 1):
        for combo in itertools.combinations(others, r):
            s = frozenset(combo) | {G.identity}
            if all(G.mul(a, b) in s for a in s for b in s):
                out.add(s)
    return out


def element_order(G, g):
    k, x = 1, g
    while x != G.identity:
        x = G.mul(x, g)
        k += 1
    return k


@pytest.mark.parametrize("spec", SMALL_GROUP_SPECS, ids=lambda s: str(s))
def test_constructed_tables_are_groups(spec):
    G = make_group(spec)
    FiniteGroup(G.table)  # full validation
    assert all(G.mul(g, G.inv(g)) == G.identity for g in G.elements)


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5, 6])
def test_dihedral_relations(n):
    D = dihedral(n)
    assert D.order == 2 * n
    r, s = (1 % n), n
    assert D.prod(s, r, s) == D.inv(r)
    assert element_order(D, s) == 2
    if n > 1:
        assert element_order(D, r) == n


def test_dihedral_labels():
    D = dihedral(4)
    assert D.labels[0] == "e"
    assert D.element("r1s") == 1 + 4
    assert D.element("s") == 4
    with pytest.raises(KeyError):
        D.element("t")


def test_symmetric_matches_composition():
    S = symmetric(3)
    perms = list(itertools.permutations(range(3)))
    for i, p in enumerate(perms):
        for j, q in enumerate(perms):
            pq = tuple(p[q[x]] for x in range(3))
            assert perms[S.mul(i, j)] == pq
    assert not S.is_abelian()
    assert S.labels[0] == "()"
    assert sorted(S.labels) == sorted(["()", "(2 3)", "(1 2)", "(1 2 3)", "(1 3 2)", "(1 3)"])


def test_product_of_coprime_cyclics_is_cyclic():
    P = direct_product(cyclic(2), cyclic(3))
    assert brute_isomorphic(P, cyclic(6))
    assert any(element_order(P, g) == 6 for g in P.elements)
    assert P.labels[4] == "(1,1)"


def test_klein_is_not_cyclic():
    assert not brute_isomorphic(direct_product(cyclic(2), cyclic(2)), cyclic(4))
    assert brute_isomorphic(direct_product(cyclic(2), cyclic(2)), dihedral(2))


def test_validation_errors():
    with pytest.raises(NotLatinSquare):
        FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(NotLatinSquare):
        FiniteGroup([[0, 1, 2], [1, 2]])
    with pytest.raises(NoIdentity):
        FiniteGroup([[0, 2, 1], [2, 1, 0], [1, 0, 2]])
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NonAssociative):
        FiniteGroup(loop)


def test_make_group_errors():
    with pytest.raises(InstanceError):
        make_group({"kind": "klein"})
    with pytest.raises(InstanceError):
        make_group({"kind": "cyclic"})
    with pytest.raises(InstanceError):
        make_group({"kind": "cyclic", "n": 0})
    with pytest.raises(InstanceError):
        make_group({"kind": "product", "factors": []})
    G = make_group({"kind": "table", "table": [[0, 1], [1, 0]], "labels": ["e", "a"]})
    assert G.element("a") == 1


def test_subgroup_must_be_closed():
    G = cyclic(6)
    with pytest.raises(NotSubgroup):
        Subgroup(G, frozenset({0, 1}))
    with pytest.raises(NotSubgroup):
        Subgroup(G, frozenset({3}))
    assert subgroup_generated(G, [2]).elements == frozenset({0, 2, 4})


@pytest.mark.parametrize("spec", [
    {"kind": "cyclic", "n": 12},
    {"kind": "symmetric", "n": 3},
    {"kind": "dihedral", "n": 4},
    {"kind": "product", "factors": [{"kind": "cyclic", "n": 2}, {"kind": "cyclic", "n": 4}]},
], ids=str)
def test_all_subgroups_match_subset_enumeration(spec):
    G = make_group(spec)
    assert {H.elements for H in all_subgroups(G)} == brute_subgroups(G)


def test_subgroup_counts():
    assert len(all_subgroups(cyclic(12))) == 6
    assert len(all_subgroups(symmetric(3))) == 6
    assert len(all_subgroups(dihedral(4))) == 10


def test_intermediate_subgroups_sorted_and_bounded():
    G = cyclic(12)
    H = subgroup_generated(G, [6])
    ks = intermediate_subgroups(G, H)
    assert [len(k) for k in ks] == sorted(len(k) for k in ks)
    assert ks[0].elements == H.elements and ks[-1].elements == frozenset(G.elements)
    assert {len(k) for k in ks} == {2, 4, 6, 12}


def test_left_cosets_partition_group():
    G = symmetric(3)
    H = subgroup_generated(G, [G.element("(1 2)")])
    cl = left_cosets(G, H)
    assert cl.cosets[0] == H.elements
    assert len(cl) == 3
    assert frozenset().union(*cl.cosets) == frozenset(G.elements)
    for rep, c in zip(cl.reps, cl.cosets):
        assert frozenset(G.mul(rep, h) for h in H.elements) == c
    rest = cl.cosets[1:]
    assert [min(c) for c in rest] == sorted(min(c) for c in rest)


def test_double_coset_in_s3_has_size_four():
    # oracle: enumerate h*g*k directly on permutation tuples
    perms = list(itertools.permutations(range(3)))
    comp = lambda p, q: tuple(p[q[x]] for x in range(3))
    h12, h13 = (1, 0, 2), (2, 1, 0)
    Hp, Kp = [(0, 1, 2), h12], [(0, 1, 2), h13]
    g = (0, 1, 2)
    expect = {comp(comp(h, g), k) for h in Hp for k in Kp}
    assert len(expect) == 4

    G = symmetric(3)
    H = Subgroup(G, frozenset(perms.index(p) for p in Hp))
    K = Subgroup(G, frozenset(perms.index(p) for p in Kp))
    got = double_coset(G, H, perms.index(g), K)
    assert got == frozenset(perms.index(p) for p in expect)


def test_core_and_normality():
    G = symmetric(3)
    t = subgroup_generated(G, [G.element("(1 2)")])
    a3 = subgroup_generated(G, [G.element("(1 2 3)")])
    assert core(G, t).elements == frozenset({G.identity})
    assert core(G, a3).elements == a3.elements
    assert is_normal(G, a3) and not is_normal(G, t)
    with pytest.raises(NotNormal):
        quotient_group(G, t)


def test_quotient_group():
    G = cyclic(12)
    N = subgroup_generated(G, [4])
    Q, proj = quotient_group(G, N)
    assert Q.order == 4
    assert brute_isomorphic(Q, cyclic(4))
    for a in G.elements:
        for b in G.elements:
            assert proj[G.mul(a, b)] == Q.mul(proj[a], proj[b])
    Q2, _ = quotient_group(symmetric(3), subgroup_generated(symmetric(3), [3]))
    assert Q2.order == 2


small_specs = st.sampled_from([s for s in SMALL_GROUP_SPECS])


@settings(max_examples=80, deadline=None)
@given(spec=small_specs, data=st.data())
def test_double_coset_closure_properties(spec, data):
    G, subs = group_with_subgroups(spec)
    H = data.draw(st.sampled_from(subs))
    K = data.draw(st.sampled_from(subs))
    S = frozenset(data.draw(st.sets(st.sampled_from(list(G.elements)))))
    C = double_coset_closure(G, S, H, K)
    assert S <= C
    assert is_double_coset_union(G, C, H, K)
    assert double_coset_closure(G, C, H, K) == C
    # oracle: union of the double cosets of elements of S
    union = frozenset().union(*(double_coset(G, H, s, K) for s in S)) if S else frozenset()
    assert C == union


@settings(max_examples=60, deadline=None)
@given(spec=small_specs, data=st.data())
def test_double_cosets_partition(spec, data):
    G, subs = group_with_subgroups(spec)
    H = data.draw(st.sampled_from(subs))
    K = data.draw(st.sampled_from(subs))
    dcs = {double_coset(G, H, g, K) for g in G.elements}
    assert sum(len(d) for d in dcs) == G.order
    assert trivial_subgroup(G) <= H <= whole_group(G)
