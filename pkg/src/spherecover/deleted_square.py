"""Deleted squares of simplicial complexes as regular CW complexes.

The deleted square of a complex K has one cell per ordered pair of disjoint
nonempty faces of K. The coordinate swap is a free cellular involution; its
orbit complex has one cell per unordered pair. All incidence numbers are
taken mod 2, so boundaries are plain index lists with parity-1 entries.
"""

from __future__ import annotations

from collections import Counter
from itertools import combinations
from typing import Callable, Hashable

from .simplicial import Face, SimplicialComplex, facets_of

ProductCell = tuple[Face, Face]
# Canonical form of an unordered pair: lexicographically smaller face first.
OrbitCell = tuple[Face, Face]

Cell = Hashable


class CWComplexGF2:
    """A finite regular CW complex with mod-2 boundary incidences.

    cells[d] is the lexicographically sorted tuple of d-cells, boundary[d][j]
    the sorted tuple of (d-1)-cell indices hitting cell j with odd incidence.
    Instances are immutable after construction.
    """

    def __init__(self, cells: list[list[Cell]], boundary: list[list[list[int]]]):
        if len(cells) != len(boundary):
            raise ValueError("cells and boundary must have one entry per dimension")
        self.cells: tuple[tuple[Cell, ...], ...] = tuple(tuple(layer) for layer in cells)
        self.boundary: tuple[tuple[tuple[int, ...], ...], ...] = tuple(
            tuple(tuple(col) for col in layer) for layer in boundary
        )
        self._index: dict[Cell, tuple[int, int]] = {
            c: (d, j) for d, layer in enumerate(self.cells) for j, c in enumerate(layer)
        }
        for d, layer in enumerate(self.boundary):
            if len(layer) != len(self.cells[d]):
                raise ValueError(f"boundary/cell count mismatch in dimension {d}")
            limit = len(self.cells[d - 1]) if d > 0 else 0
            for col in layer:
                if d == 0 and col:
                    raise ValueError("0-cells have empty boundary")
                if any(not 0 <= i < limit for i in col):
                    raise ValueError(f"boundary index out of range in dimension {d}")

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.cells)

    @property
    def n_cells(self) -> int:
        return sum(self.counts)

    @property
    def euler(self) -> int:
        return sum((-1) ** d * c for d, c in enumerate(self.counts))

    def index_of(self, cell: Cell) -> tuple[int, int]:
        return self._index[cell]

    def boundary_cells(self, cell: Cell) -> list[Cell]:
        d, j = self._index[cell]
        if d == 0:
            return []
        return [self.cells[d - 1][i] for i in self.boundary[d][j]]

    def boundary_squares_to_zero(self) -> bool:
        """Check the chain-complex identity: the boundary of a boundary is 0 mod 2."""
        for d in range(2, self.dim + 1):
            lower = self.boundary[d - 1]
            for col in self.boundary[d]:
                acc: Counter[int] = Counter()
                for i in col:
                    acc.update(lower[i])
                if any(m % 2 for m in acc.values()):
                    return False
        return True

    def to_listing(self, label: Callable[[Cell], str] = repr) -> dict:
        """Debug-friendly listing: every cell with its dimension and boundary labels."""
        entries = []
        for d, layer in enumerate(self.cells):
            for j, c in enumerate(layer):
                entries.append({
                    "dim": d,
                    "label": label(c),
                    "boundary": [label(self.cells[d - 1][i]) for i in self.boundary[d][j]],
                })
        return {
            "dimension": self.dim,
            "cells_per_dim": list(self.counts),
            "cells": entries,
        }


def product_label(c: ProductCell) -> str:
    sigma, tau = c
    return "(%s)x(%s)" % (",".join(map(str, sigma)), ",".join(map(str, tau)))


def orbit_label(c: OrbitCell) -> str:
    a, b = c
    return "{(%s),(%s)}" % (",".join(map(str, a)), ",".join(map(str, b)))


def product_shape(c: ProductCell) -> tuple[int, int]:
    """Vertex counts (|sigma|, |tau|) of an ordered pair cell."""
    return (len(c[0]), len(c[1]))


def orbit_shape(c: OrbitCell) -> tuple[int, int]:
    """Unordered vertex-count shape, larger factor first."""
    a, b = len(c[0]), len(c[1])
    return (a, b) if a >= b else (b, a)


def swap(c: ProductCell) -> ProductCell:
    """The free involution exchanging the two factors."""
    return (c[1], c[0])


def orbit_key(c: ProductCell) -> OrbitCell:
    """Canonical representative of the swap orbit of c."""
    a, b = c
    return (a, b) if a < b else (b, a)


def _product_boundary(c: ProductCell) -> list[ProductCell]:
    sigma, tau = c
    out: list[ProductCell] = [(s, tau) for s in facets_of(sigma)]
    out.extend((sigma, t) for t in facets_of(tau))
    return out


def deleted_square(K: SimplicialComplex) -> CWComplexGF2:
    """Build the deleted square of K with cells ordered lexicographically per dimension."""
    by_dim: dict[int, list[ProductCell]] = {}
    all_faces = sorted(K.faces)
    vertex_sets = {f: set(f) for f in all_faces}
    universe = range(K.n_vertices)
    max_size = K.dim + 1
    for sigma in all_faces:
        complement = [v for v in universe if v not in vertex_sets[sigma]]
        for size in range(1, min(max_size, len(complement)) + 1):
            for tau in combinations(complement, size):
                if tau in K.faces:
                    cell = (sigma, tau)
                    by_dim.setdefault(len(sigma) + len(tau) - 2, []).append(cell)
    if not by_dim:
        return CWComplexGF2([], [])
    top = max(by_dim)
    cells = [sorted(by_dim.get(d, [])) for d in range(top + 1)]
    index = [{c: j for j, c in enumerate(layer)} for layer in cells]
    boundary: list[list[list[int]]] = []
    for d in range(top + 1):
        layer: list[list[int]] = []
        for c in cells[d]:
            if d == 0:
                layer.append([])
            else:
                layer.append(sorted(index[d - 1][f] for f in _product_boundary(c)))
        boundary.append(layer)
    return CWComplexGF2(cells, boundary)


def orbit_complex(D: CWComplexGF2) -> CWComplexGF2:
    """Quotient a deleted square by the swap involution.

    Each orbit keeps its canonical representative; a boundary orbit survives
    iff it absorbs an odd number of the representative's boundary cells.
    """
    cells: list[list[OrbitCell]] = []
    for layer in D.cells:
        seen = {orbit_key(c) for c in layer}
        if any(c[0] == c[1] for c in seen):
            raise ValueError("swap has a fixed cell; input is not a deleted square")
        if 2 * len(seen) != len(layer):
            raise ValueError("orbits do not pair up cells two by two")
        cells.append(sorted(seen))
    index = [{c: j for j, c in enumerate(layer)} for layer in cells]
    boundary: list[list[list[int]]] = []
    for d, layer in enumerate(cells):
        cols: list[list[int]] = []
        for rep in layer:
            if d == 0:
                cols.append([])
                continue
            parity: Counter[OrbitCell] = Counter(
                orbit_key(f) for f in D.boundary_cells(rep)
            )
            cols.append(sorted(index[d - 1][f] for f, m in parity.items() if m % 2))
        boundary.append(cols)
    return CWComplexGF2(cells, boundary)
