"""Finite groups as multiplication tables, with subgroup and coset machinery.

Elements are integer ids ``0..n-1``. All built-in constructors put the
identity at id 0. Element subsets (connection sets, double cosets) are plain
``frozenset`` objects; subgroups are wrapped in :class:`Subgroup` so that
closure has been checked once.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    CapExceeded,
    InstanceError,
    NoIdentity,
    NonAssociative,
    NotLatinSquare,
    NotNormal,
    NotSubgroup,
)

DEFAULT_SUBGROUP_CAP = 24


class FiniteGroup:
    """A finite group given by its Cayley table, ``table[a, b] = a*b``."""

    def __init__(self, table, labels: Sequence[str] | None = None, check: bool = True):
        try:
            t = np.array(table, dtype=np.int64)
        except (TypeError, ValueError):
            raise NotLatinSquare("table must be a square array of integers") from None
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise NotLatinSquare("table must be a non-empty square array")
        n = t.shape[0]
        if check:
            _validate_table(t)
        t.setflags(write=False)
        self.table = t
        self.order = n
        ident = np.flatnonzero((t == np.arange(n)).all(axis=1))
        self.identity = int(ident[0])
        inv = np.argmax(t == self.identity, axis=1)
        inv.setflags(write=False)
        self.inverse = inv
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise InstanceError("labels", f"expected {n} labels, got {len(labels)}")
        self.labels = tuple(str(x) for x in labels)
        self.spec = None  # constructor spec when built by make_group

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def __len__(self):
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def prod(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = int(self.table[out, x])
        return out

    def element(self, label: str) -> int:
        """Look up an element id by its display label."""
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def set_product(self, a: Iterable[int], b: Iterable[int]) -> frozenset:
        a = np.fromiter(a, dtype=np.int64)
        b = np.fromiter(b, dtype=np.int64)
        if a.size == 0 or b.size == 0:
            return frozenset()
        return frozenset(np.unique(self.table[np.ix_(a, b)]).tolist())

    def is_abelian(self) -> bool:
        return bool((self.table == self.table.T).all())


def _validate_table(t: np.ndarray) -> None:
    n = t.shape[0]
    full = np.arange(n)
    if t.min() < 0 or t.max() >= n:
        raise NotLatinSquare("entries out of range")
    if not (np.sort(t, axis=1) == full).all() or not (np.sort(t, axis=0) == full[:, None]).all():
        raise NotLatinSquare("rows and columns must be permutations")
    two_sided = [e for e in range(n) if (t[e] == full).all() and (t[:, e] == full).all()]
    if not two_sided:
        raise NoIdentity("no two-sided identity element")
    left = t[t]  # left[a, b, c] = (a*b)*c
    right = t[full[:, None, None], t[None, :, :]]  # a*(b*c)
    bad = np.argwhere(left != right)
    if bad.size:
        a, b, c = bad[0].tolist()
        raise NonAssociative(f"({a}*{b})*{c} != {a}*({b}*{c})")


# ---------------------------------------------------------------------------
# constructors


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise InstanceError("group.n", "cyclic order must be positive")
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, check=False)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the regular n-gon, order 2n.

    Element ``k + n*e`` is ``r^k s^e``; ``s r s = r^-1``.
    """
    if n < 1:
        raise InstanceError("group.n", "dihedral parameter must be positive")
    size = 2 * n
    table = np.empty((size, size), dtype=np.int64)
    for x in range(size):
        a, e = x % n, x // n
        for y in range(size):
            b, f = y % n, y // n
            k = (a + (b if e == 0 else -b)) % n
            table[x, y] = k + n * ((e + f) % 2)
    labels = []
    for x in range(size):
        k, e = x % n, x // n
        if k == 0 and e == 0:
            labels.append("e")
        else:
            labels.append((f"r{k}" if k else "") + ("s" if e else ""))
    return FiniteGroup(table, labels, check=False)


def _cycle_label(p: Sequence[int]) -> str:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [i], p[i]
        seen.add(i)
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def symmetric(n: int) -> FiniteGroup:
    """S_n on points 1..n; ``(p*q)(x) = p(q(x))``. Ids follow lexicographic order."""
    if n < 1:
        raise InstanceError("group.n", "symmetric degree must be positive")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return FiniteGroup(table, [_cycle_label(p) for p in perms], check=False)


def direct_product(*factors: FiniteGroup) -> FiniteGroup:
    """Direct product; ``(a, b)`` has id ``a*|B| + b`` (mixed radix, first factor slowest)."""
    if not factors:
        raise InstanceError("group.factors", "product needs at least one factor")
    out = factors[0]
    for g in factors[1:]:
        m = g.order
        n = out.order * m
        idx = np.arange(n)
        a, b = idx // m, idx % m
        table = out.table[a[:, None], a[None, :]] * m + g.table[b[:, None], b[None, :]]
        labels = [f"({out.labels[i]},{g.labels[j]})" for i in range(out.order) for j in range(m)]
        out = FiniteGroup(table, labels, check=False)
    return out


def make_group(spec: Mapping) -> FiniteGroup:
    """Build a group from a constructor spec such as ``{"kind": "cyclic", "n": 15}``.

    Kinds: ``cyclic``, ``dihedral``, ``symmetric`` (parameter ``n``), ``product``
    (``factors``: list of specs) and ``table`` (``table``: rows, optional ``labels``).
    """
    if not isinstance(spec, Mapping) or "kind" not in spec:
        raise InstanceError("group", "expected an object with a 'kind' key")
    kind = spec["kind"]
    if kind in ("cyclic", "dihedral", "symmetric"):
        n = spec.get("n")
        if not isinstance(n, int) or isinstance(n, bool):
            raise InstanceError("group.n", "integer parameter required")
        G = {"cyclic": cyclic, "dihedral": dihedral, "symmetric": symmetric}[kind](n)
    elif kind == "product":
        factors = spec.get("factors")
        if not isinstance(factors, list) or not factors:
            raise InstanceError("group.factors", "non-empty list of group specs required")
        G = direct_product(*(make_group(f) for f in factors))
    elif kind == "table":
        if "table" not in spec:
            raise InstanceError("group.table", "missing table")
        G = FiniteGroup(spec["table"], spec.get("labels"))
    else:
        raise InstanceError("group.kind", f"unknown group kind {kind!r}")
    G.spec = dict(spec)
    return G


# ---------------------------------------------------------------------------
# subgroups and cosets


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(repr=False)
    elements: frozenset

    def __post_init__(self):
        G = self.parent
        els = self.elements
        if G.identity not in els:
            raise NotSubgroup("subgroup must contain the identity")
        if G.set_product(els, els) != els:
            raise NotSubgroup("subset is not closed under multiplication")

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.elements

    def __iter__(self):
        return iter(sorted(self.elements))

    def __le__(self, other: "Subgroup") -> bool:
        return self.elements <= other.elements

    def __lt__(self, other: "Subgroup") -> bool:
        return self.elements < other.elements

    @property
    def sorted(self) -> tuple:
        return tuple(sorted(self.elements))

    def index(self) -> int:
        return self.parent.order // len(self.elements)


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset([G.identity]))


def whole_group(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, frozenset(G.elements))


def _closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset:
    gens = sorted(set(gens))
    seen = {G.identity}
    frontier = [G.identity]
    t = G.table
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = int(t[x, g])
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def subgroup_generated(G: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    gens = list(gens)
    for g in gens:
        if not 0 <= g < G.order:
            raise InstanceError("generators", f"element id {g} out of range")
    return Subgroup(G, _closure(G, gens))


@dataclass(frozen=True)
class CosetList:
    subgroup: Subgroup
    cosets: tuple  # tuple of frozensets
    reps: tuple

    def __len__(self):
        return len(self.cosets)

    def index_of(self) -> dict:
        """Map each group element to the position of its coset."""
        out = {}
        for i, c in enumerate(self.cosets):
            for g in c:
                out[g] = i
        return out


def left_cosets(G: FiniteGroup, H: Subgroup) -> CosetList:
    """Left cosets gH, identity coset first, the rest by minimal representative."""
    h = np.array(H.sorted, dtype=np.int64)
    seen = np.zeros(G.order, dtype=bool)
    cosets = []
    order = [G.identity] + [g for g in G.elements if g != G.identity]
    for g in order:
        if seen[g]:
            continue
        c = G.table[g, h]
        seen[c] = True
        cosets.append(frozenset(c.tolist()))
    first, rest = cosets[0], sorted(cosets[1:], key=min)
    cosets = [first] + rest
    return CosetList(H, tuple(cosets), tuple(min(c) for c in cosets))


def double_coset(G: FiniteGroup, H: Subgroup, g: int, K: Subgroup) -> frozenset:
    return G.set_product(G.set_product(H.elements, [g]), K.elements)


def double_coset_closure(G: FiniteGroup, S: Iterable[int], H: Subgroup, K: Subgroup) -> frozenset:
    """Smallest superset S' of S with H S' K = S'."""
    return G.set_product(G.set_product(H.elements, S), K.elements)


def is_double_coset_union(G: FiniteGroup, S: Iterable[int], H: Subgroup, K: Subgroup) -> bool:
    S = frozenset(S)
    return double_coset_closure(G, S, H, K) == S


def closure_witness(G: FiniteGroup, S: frozenset, H: Subgroup, K: Subgroup):
    """First ``(h, s, k)`` (in id order) with ``h*s*k`` outside S, or None."""
    for s in sorted(S):
        for h in H.sorted:
            hs = G.mul(h, s)
            for k in K.sorted:
                if G.mul(hs, k) not in S:
                    return h, s, k
    return None


def inverse_set(G: FiniteGroup, S: Iterable[int]) -> frozenset:
    return frozenset(G.inv(s) for s in S)


def conjugate(G: FiniteGroup, H: Subgroup, g: int) -> frozenset:
    """The set g H g^-1."""
    return frozenset(G.prod(g, h, G.inv(g)) for h in H.elements)


def is_normal(G: FiniteGroup, N: Subgroup) -> bool:
    return all(conjugate(G, N, g) == N.elements for g in G.elements)


def core(G: FiniteGroup, H: Subgroup) -> Subgroup:
    """Largest normal subgroup of G inside H: the intersection of all conjugates."""
    els = H.elements
    for g in G.elements:
        els = els & conjugate(G, H, g)
    return Subgroup(G, els)


def quotient_group(G: FiniteGroup, N: Subgroup):
    """Return ``(G/N, projection)``; ``projection[g]`` is the id of the coset gN."""
    if not is_normal(G, N):
        raise NotNormal("subgroup is not normal")
    cl = left_cosets(G, N)
    where = cl.index_of()
    reps = cl.reps
    m = len(reps)
    table = [[where[G.mul(reps[a], reps[b])] for b in range(m)] for a in range(m)]
    labels = [G.labels[r] + ("N" if len(N) > 1 else "") for r in reps]
    Q = FiniteGroup(table, labels, check=False)
    projection = tuple(where[g] for g in G.elements)
    return Q, projection


def intermediate_subgroups(G: FiniteGroup, H: Subgroup, cap: int = DEFAULT_SUBGROUP_CAP) -> list:
    """All K with H <= K <= G, sorted by (size, elements)."""
    if G.order > cap:
        raise CapExceeded(f"|G| = {G.order} exceeds subgroup enumeration cap {cap}")
    found = {H.elements}
    queue = [H.elements]
    while queue:
        K = queue.pop()
        gens = sorted(K)
        for g in G.elements:
            if g in K:
                continue
            L = _closure(G, gens + [g])
            if L not in found:
                found.add(L)
                queue.append(L)
    return [Subgroup(G, s) for s in sorted(found, key=lambda s: (len(s), sorted(s)))]


def all_subgroups(G: FiniteGroup, cap: int = DEFAULT_SUBGROUP_CAP) -> list:
    return intermediate_subgroups(G, trivial_subgroup(G), cap)
