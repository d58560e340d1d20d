"""Ordered vertex partitions."""

from __future__ import annotations

from typing import Iterable, Sequence


class Partition:
    """Disjoint nonempty cells covering ``0..n-1``.

    Cells are sorted tuples. By default cells are ordered by their minimal
    vertex; pass ``keep_order=True`` to preserve the given cell order (used
    when the order carries meaning, e.g. quotient vertex ids).
    """

    __slots__ = ("cells", "cell_of", "n")

    def __init__(self, cells: Iterable[Iterable[int]], n: int | None = None, keep_order: bool = False):
        cells = [tuple(sorted(c)) for c in cells]
        if any(not c for c in cells):
            raise ValueError("partition cells must be nonempty")
        if not keep_order:
            cells.sort(key=lambda c: c[0])
        size = sum(len(c) for c in cells)
        if n is None:
            n = size
        cell_of = [-1] * n
        for i, c in enumerate(cells):
            for v in c:
                if not 0 <= v < n or cell_of[v] != -1:
                    raise ValueError(f"vertex {v} out of range or repeated")
                cell_of[v] = i
        if size != n:
            raise ValueError("cells do not cover all vertices")
        self.cells = tuple(cells)
        self.cell_of = tuple(cell_of)
        self.n = n

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        """Group vertices with equal labels; cells ordered by first vertex."""
        groups: dict = {}
        for v, lab in enumerate(labels):
            groups.setdefault(lab, []).append(v)
        return cls(groups.values(), n=len(labels))

    @classmethod
    def discrete(cls, n: int) -> "Partition":
        return cls(([v] for v in range(n)), n=n)

    @classmethod
    def unit(cls, n: int) -> "Partition":
        return cls([range(n)], n=n) if n else cls([], n=0)

    def __len__(self):
        return len(self.cells)

    def __iter__(self):
        return iter(self.cells)

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and set(self.cells) == set(other.cells)

    def __hash__(self):
        return hash(frozenset(self.cells))

    def __repr__(self):
        return f"Partition({[list(c) for c in self.cells]})"

    def sizes(self) -> tuple:
        return tuple(len(c) for c in self.cells)

    def is_discrete(self) -> bool:
        return len(self.cells) == self.n

    def refines(self, other: "Partition") -> bool:
        """True iff every cell lies inside a cell of ``other``."""
        return all(len({other.cell_of[v] for v in c}) == 1 for c in self.cells)

    def restricted(self, vertices: Iterable[int]) -> list:
        """Cells contained in ``vertices`` (cells meeting it partially are an error)."""
        vs = set(vertices)
        out = []
        for c in self.cells:
            inside = [v in vs for v in c]
            if all(inside):
                out.append(c)
            elif any(inside):
                raise ValueError("cell straddles the given vertex set")
        return out
