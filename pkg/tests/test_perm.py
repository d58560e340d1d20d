import itertools
import math

from hypothesis import given, settings
from hypothesis import strategies as st

from bicoset.perm import (
    PermGroup,
    compose,
    cycles,
    fmt_perm,
    identity,
    inverse,
    is_identity,
    orbit_partition,
    transposition,
)


def closure(n, gens):
    """Oracle: breadth-first closure under right multiplication by generators."""
    e = tuple(range(n))
    seen = {e}
    frontier = [e]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[x[i]] for i in range(n))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def from_cycles(n, *cycs):
    """1-based cycle notation to an image tuple."""
    p = list(range(n))
    for c in cycs:
        for a, b in zip(c, c[1:] + c[:1]):
            p[a - 1] = b - 1
    return tuple(p)


def test_compose_applies_right_first():
    p = (1, 2, 0)
    q = (1, 0, 2)
    assert compose(p, q) == tuple(p[q[i]] for i in range(3))
    assert compose(p, inverse(p)) == identity(3)
    assert is_identity(compose(inverse(q), q))
    assert compose((0,), (0,)) == (0,)


def test_cycles_and_format():
    p = (1, 2, 0, 4, 3, 5)
    assert cycles(p) == [[0, 1, 2], [3, 4]]
    assert fmt_perm(p) == "(0 1 2)(3 4)"
    assert fmt_perm(identity(3)) == "()"


def test_orbit_partition():
    p = orbit_partition(6, [transposition(6, 0, 2), transposition(6, 3, 4)])
    assert sorted(map(sorted, p.cells)) == [[0, 2], [1], [3, 4], [5]]


def test_symmetric_group_orders():
    for n in range(1, 9):
        gens = [transposition(n, 0, 1) if n > 1 else identity(n), tuple(list(range(1, n)) + [0])]
        assert PermGroup(n, gens).order() == math.factorial(n)


def test_alternating_group():
    n = 6
    gens = [tuple([1, 2, 0] + list(range(3, n))), tuple([0] + list(range(2, n)) + [1])]  # 3-cycle, 5-cycle
    G = PermGroup(n, gens)
    assert G.order() == math.factorial(n) // 2
    assert not G.contains(transposition(n, 0, 1))


def test_mathieu_groups():
    m11 = PermGroup(11, [from_cycles(11, list(range(1, 12))), from_cycles(11, [3, 7, 11, 8], [4, 10, 5, 6])])
    assert m11.order() == 7920
    m12 = PermGroup(12, [from_cycles(12, list(range(1, 12))),
                         from_cycles(12, [3, 7, 11, 8], [4, 10, 5, 6]),
                         from_cycles(12, [1, 12], [2, 11], [3, 6], [4, 8], [5, 9], [7, 10])])
    assert m12.order() == 95040
    assert m12.is_transitive()


def test_trivial_group():
    G = PermGroup(4, [])
    assert G.order() == 1
    assert G.contains(identity(4))
    assert not G.contains(transposition(4, 0, 1))
    assert G.elements() == {identity(4)}


def test_trusted_base_matches_schreier_sims():
    # S3 x S3 acting on 6 points, with a hand-made base and strong generating set
    a, b = transposition(6, 0, 1), (1, 2, 0, 3, 4, 5)
    c, d = transposition(6, 3, 4), (0, 1, 2, 4, 5, 3)
    sgs = [b, a, c, d]
    base = [0, 1, 3, 4]
    G = PermGroup(6, sgs, base=base, strong_generators=[a, b, c, d, transposition(6, 1, 2), transposition(6, 4, 5)])
    H = PermGroup(6, sgs)
    assert G.order() == H.order() == 36


perm_lists = st.integers(min_value=1, max_value=6).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.permutations(list(range(n))).map(tuple), min_size=0, max_size=3))
)


@settings(max_examples=120, deadline=None)
@given(perm_lists)
def test_order_and_membership_against_closure(arg):
    n, gens = arg
    G = PermGroup(n, gens)
    oracle = closure(n, gens)
    assert G.order() == len(oracle)
    for p in itertools.islice(itertools.permutations(range(n)), 200):
        assert G.contains(p) == (p in oracle)
    assert G.elements() == oracle
    assert set(map(frozenset, G.orbits().cells)) == set(map(frozenset, orbit_partition(n, gens).cells))
