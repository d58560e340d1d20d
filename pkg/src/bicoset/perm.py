"""Permutation groups: stabilizer chains via deterministic Schreier-Sims.

Permutations are tuples of images, ``p[i]`` is the image of ``i``. Products
compose right to left: ``compose(p, q)`` applies ``q`` first.
"""

from __future__ import annotations

from operator import itemgetter
from typing import Iterable, Sequence

from .partition import Partition

Perm = tuple


def identity(n: int) -> Perm:
    return tuple(range(n))


def compose(p: Perm, q: Perm) -> Perm:
    """``p o q``: first q, then p."""
    if len(q) <= 1:
        return tuple(p[i] for i in q)
    return itemgetter(*q)(p)


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def is_identity(p: Perm) -> bool:
    return all(i == x for i, x in enumerate(p))


def is_perm(p: Sequence[int], n: int) -> bool:
    return len(p) == n and sorted(p) == list(range(n))


def transposition(n: int, a: int, b: int) -> Perm:
    out = list(range(n))
    out[a], out[b] = b, a
    return tuple(out)


def cycles(p: Perm) -> list:
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
        out.append(cyc)
    return out


def fmt_perm(p: Perm) -> str:
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles(p)) or "()"


def orbit_partition(n: int, gens: Iterable[Perm]) -> Partition:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for i, x in enumerate(g):
            a, b = find(i), find(x)
            if a != b:
                parent[max(a, b)] = min(a, b)
    return Partition.from_labels([find(v) for v in range(n)])


class _Level:
    __slots__ = ("point", "gens", "trans", "trans_inv")

    def __init__(self, point, gens, n):
        self.point = point
        self.gens = list(gens)
        self.trans = {point: identity(n)}
        self.rebuild(n)

    def rebuild(self, n):
        # extend only: existing coset representatives must stay fixed so that
        # Schreier generators already verified remain valid
        trans = self.trans
        queue = list(trans)
        for x in queue:
            u = trans[x]
            for g in self.gens:
                y = g[x]
                if y not in trans:
                    trans[y] = compose(g, u)
                    queue.append(y)
        if not hasattr(self, "trans_inv"):
            self.trans_inv = {}

    def inv(self, x):
        r = self.trans_inv.get(x)
        if r is None:
            r = inverse(self.trans[x])
            self.trans_inv[x] = r
        return r


class PermGroup:
    """A permutation group given by generators, with a stabilizer chain.

    The chain is computed lazily. If ``base`` and ``strong_generators`` are
    supplied they are trusted as a base and strong generating set (callers
    that build groups with known structure use this to skip Schreier-Sims).
    """

    def __init__(self, degree: int, generators: Iterable[Sequence[int]] = (), *,
                 base: Sequence[int] | None = None,
                 strong_generators: Iterable[Perm] | None = None):
        self.degree = degree
        gens = []
        for g in generators:
            g = tuple(g)
            if not is_perm(g, degree):
                raise ValueError(f"not a permutation of 0..{degree - 1}: {g}")
            if not is_identity(g) and g not in gens:
                gens.append(g)
        self.generators = tuple(gens)
        self._levels = None
        if base is not None:
            sgs = [tuple(g) for g in (strong_generators if strong_generators is not None else gens)]
            self._levels = self._chain_from_sgs(list(base), sgs)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"

    # -- stabilizer chain -------------------------------------------------

    def _chain_from_sgs(self, base, sgs):
        n = self.degree
        levels = []
        for i, b in enumerate(base):
            prefix = base[:i]
            gens = [g for g in sgs if all(g[p] == p for p in prefix)]
            levels.append(_Level(b, gens, n))
        return levels

    @property
    def levels(self) -> list:
        if self._levels is None:
            self._levels = self._schreier_sims()
        return self._levels

    def _sift(self, g, levels, start=0):
        """Strip g through levels[start:]; return (residue, level reached)."""
        for j in range(start, len(levels)):
            lev = levels[j]
            b = g[lev.point]
            if b not in lev.trans:
                return g, j
            g = compose(lev.inv(b), g)
        return g, len(levels)

    def _schreier_sims(self):
        n = self.degree
        gens = list(self.generators)
        base: list = []
        for g in gens:
            if all(g[b] == b for b in base):
                base.append(next(i for i in range(n) if g[i] != i))
        levels = [
            _Level(b, [g for g in gens if all(g[p] == p for p in base[:i])], n)
            for i, b in enumerate(base)
        ]
        # checked[i]: (point, gen) Schreier generators already verified at level i
        checked = [set() for _ in levels]
        i = len(levels) - 1
        while i >= 0:
            lev = levels[i]
            restart = False
            for beta in list(lev.trans):
                u = lev.trans[beta]
                for s in lev.gens:
                    key = (beta, s)
                    if key in checked[i]:
                        continue
                    checked[i].add(key)
                    sb = s[beta]
                    h = compose(lev.inv(sb), compose(s, u))
                    if is_identity(h):
                        continue
                    res, j = self._sift(h, levels, i + 1)
                    if j == len(levels) and is_identity(res):
                        continue
                    if j == len(levels):
                        pt = next(x for x in range(n) if res[x] != x)
                        levels.append(_Level(pt, [], n))
                        checked.append(set())
                    for l in range(i + 1, j + 1):
                        levels[l].gens.append(res)
                        levels[l].rebuild(n)
                    i = j
                    restart = True
                    break
                if restart:
                    break
            if not restart:
                i -= 1
        return levels

    # -- queries ----------------------------------------------------------

    @property
    def base(self) -> tuple:
        return tuple(l.point for l in self.levels)

    @property
    def strong_generators(self) -> tuple:
        seen = []
        for lev in self.levels:
            for g in lev.gens:
                if g not in seen:
                    seen.append(g)
        return tuple(seen)

    def basic_orbit_lengths(self) -> tuple:
        return tuple(len(l.trans) for l in self.levels)

    def order(self) -> int:
        out = 1
        for k in self.basic_orbit_lengths():
            out *= k
        return out

    def contains(self, perm: Sequence[int]) -> bool:
        p = tuple(perm)
        if not is_perm(p, self.degree):
            return False
        res, j = self._sift(p, self.levels)
        return j == len(self.levels) and is_identity(res)

    __contains__ = contains

    def orbits(self) -> Partition:
        return orbit_partition(self.degree, self.generators)

    def is_transitive(self) -> bool:
        return len(self.orbits()) <= 1

    def elements(self, limit: int = 10**6) -> set:
        """Enumerate by closure; independent of the stabilizer chain."""
        ident = identity(self.degree)
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = compose(g, x)
                    if y not in seen:
                        seen.add(y)
                        if len(seen) > limit:
                            raise OverflowError("group larger than enumeration limit")
                        nxt.append(y)
            frontier = nxt
        return seen

    def stabilizer_generators(self, points: Sequence[int]) -> list:
        """Generators of the pointwise stabilizer of ``points`` when they form a base prefix."""
        base = self.base
        k = len(points)
        if tuple(points) != base[:k]:
            raise ValueError("points must be a prefix of the base")
        if k >= len(self.levels):
            return []
        return list(self.levels[k].gens)


def perm_group_from_generators(degree: int, gens: Iterable[Sequence[int]]) -> PermGroup:
    return PermGroup(degree, gens)
