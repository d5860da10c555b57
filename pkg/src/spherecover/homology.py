"""Mod-2 cellular homology via bit-packed Gaussian elimination.

Boundary operators become GF2Matrix instances (rows = lower cells, columns =
higher cells) packed 64 columns per uint64 word. Betti numbers come from the
rank formula beta_d = c_d - rank(d_d) - rank(d_{d+1}); no cycle generators
are ever produced. The free-facet scan that certifies vanishing top homology
lives here as well, since it reads the same incidence data.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable

import numpy as np

from .deleted_square import CWComplexGF2

Cell = Hashable

_ONE = np.uint64(1)


class GF2Matrix:
    """A dense matrix over the two-element field, rows packed into uint64 words."""

    __slots__ = ("n_rows", "n_cols", "words")

    def __init__(self, n_rows: int, n_cols: int, words: np.ndarray | None = None):
        if n_rows < 0 or n_cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        n_words = (n_cols + 63) // 64
        if words is None:
            words = np.zeros((n_rows, n_words), dtype=np.uint64)
        if words.shape != (n_rows, n_words) or words.dtype != np.uint64:
            raise ValueError("packed storage has the wrong shape or dtype")
        self.n_rows = n_rows
        self.n_cols = n_cols
        self.words = words

    @classmethod
    def identity(cls, n: int) -> GF2Matrix:
        m = cls(n, n)
        for i in range(n):
            m.set(i, i)
        return m

    @classmethod
    def from_rows(cls, rows: list[list[int]], n_cols: int | None = None) -> GF2Matrix:
        if n_cols is None:
            n_cols = len(rows[0]) if rows else 0
        m = cls(len(rows), n_cols)
        for i, row in enumerate(rows):
            for j, v in enumerate(row):
                if v & 1:
                    m.set(i, j)
        return m

    @classmethod
    def from_column_support(cls, n_rows: int, columns: list[list[int]]) -> GF2Matrix:
        """Build from per-column lists of row indices carrying a 1."""
        m = cls(n_rows, len(columns))
        for j, rows in enumerate(columns):
            w, b = divmod(j, 64)
            bit = _ONE << np.uint64(b)
            for i in rows:
                m.words[i, w] ^= bit
        return m

    def set(self, i: int, j: int) -> None:
        w, b = divmod(j, 64)
        self.words[i, w] |= _ONE << np.uint64(b)

    def get(self, i: int, j: int) -> int:
        w, b = divmod(j, 64)
        return int((self.words[i, w] >> np.uint64(b)) & _ONE)

    def to_rows(self) -> list[list[int]]:
        return [[self.get(i, j) for j in range(self.n_cols)] for i in range(self.n_rows)]

    def copy(self) -> GF2Matrix:
        return GF2Matrix(self.n_rows, self.n_cols, self.words.copy())

    def column_weights(self) -> list[int]:
        return [sum(self.get(i, j) for i in range(self.n_rows)) for j in range(self.n_cols)]


def gf2_rank(m: GF2Matrix) -> int:
    """Rank over GF(2) by forward elimination with first-nonzero pivoting.

    Works on a copy of the packed rows; per pivot column the rows still
    carrying that bit are cleared with one vectorized xor.
    """
    if m.n_rows == 0 or m.n_cols == 0:
        return 0
    work = m.words.copy()
    rank = 0
    for col in range(m.n_cols):
        w = col >> 6
        b = np.uint64(col & 63)
        hot = np.nonzero((work[rank:, w] >> b) & _ONE)[0]
        if hot.size == 0:
            continue
        pivot = rank + int(hot[0])
        if pivot != rank:
            work[[rank, pivot]] = work[[pivot, rank]]
        below = hot[1:] + rank
        if below.size:
            work[below] ^= work[rank]
        rank += 1
        if rank == m.n_rows:
            break
    return rank


def boundary_matrix(C: CWComplexGF2, d: int) -> GF2Matrix:
    """The degree-d boundary operator of C as a GF2Matrix."""
    if not 1 <= d <= C.dim:
        raise ValueError(f"boundary degree {d} out of range 1..{C.dim}")
    columns = [list(col) for col in C.boundary[d]]
    return GF2Matrix.from_column_support(len(C.cells[d - 1]), columns)


@dataclass(frozen=True)
class BettiProfile:
    """Mod-2 Betti numbers beta_0..beta_top and the Euler characteristic."""

    betti: tuple[int, ...]
    euler: int

    def __post_init__(self):
        alt = sum((-1) ** d * b for d, b in enumerate(self.betti))
        if self.betti and alt != self.euler:
            raise ValueError("Euler characteristic disagrees with the Betti numbers")


def betti_profile(C: CWComplexGF2) -> BettiProfile:
    """Full mod-2 Betti profile of C from boundary ranks."""
    if C.dim < 0:
        return BettiProfile(betti=(), euler=0)
    counts = C.counts
    ranks = [0] * (C.dim + 2)
    for d in range(1, C.dim + 1):
        ranks[d] = gf2_rank(boundary_matrix(C, d))
    betti = tuple(counts[d] - ranks[d] - ranks[d + 1] for d in range(C.dim + 1))
    return BettiProfile(betti=betti, euler=C.euler)


def top_homology_vanishes(C: CWComplexGF2) -> bool:
    """True iff the top boundary operator has full column rank.

    Dimension-0 complexes have no top boundary to kill anything, so the
    statement is vacuously true there.
    """
    if C.dim <= 0:
        return True
    top = len(C.cells[C.dim])
    if top == 0:
        return True
    return gf2_rank(boundary_matrix(C, C.dim)) == top


@dataclass(frozen=True)
class FreeFacetReport:
    """Coface structure of the top dimension of a complex.

    For every top cell the report lists its free facets (facets with exactly
    one top coface), and for every facet of a top cell the full list of top
    cofaces, optionally tagged by a cell classifier.
    """

    top_dim: int
    top_cells: tuple[Cell, ...]
    free_facets_of: dict[Cell, tuple[Cell, ...]]
    top_cofaces_of: dict[Cell, tuple[Cell, ...]]
    tag_of: dict[Cell, object] = field(default_factory=dict)

    def cells_with_free_facet(self) -> list[Cell]:
        return [c for c in self.top_cells if self.free_facets_of[c]]

    def cells_without_free_facet(self) -> list[Cell]:
        return [c for c in self.top_cells if not self.free_facets_of[c]]

    def all_have_free_facet(self) -> bool:
        return all(self.free_facets_of[c] for c in self.top_cells)

    def free_facet_fraction(self) -> float:
        if not self.top_cells:
            return 1.0
        return len(self.cells_with_free_facet()) / len(self.top_cells)


def free_facet_report(
    C: CWComplexGF2,
    type_tagger: Callable[[Cell], object] | None = None,
) -> FreeFacetReport:
    """Count top cofaces of every facet of a top-dimensional cell.

    A facet with exactly one top coface is free; a complex whose every top
    cell owns a free facet has vanishing top mod-2 homology.
    """
    if C.dim < 1:
        raise ValueError("free-facet analysis needs dimension at least 1")
    d = C.dim
    tops = C.cells[d]
    subs = C.cells[d - 1]
    cofaces: dict[Cell, list[Cell]] = {}
    for j, c in enumerate(tops):
        for i in C.boundary[d][j]:
            cofaces.setdefault(subs[i], []).append(c)
    free_of: dict[Cell, tuple[Cell, ...]] = {}
    for j, c in enumerate(tops):
        facets = [subs[i] for i in C.boundary[d][j]]
        free_of[c] = tuple(f for f in facets if len(cofaces[f]) == 1)
    tags: dict[Cell, object] = {}
    if type_tagger is not None:
        for c in tops:
            tags[c] = type_tagger(c)
        for f in cofaces:
            tags[f] = type_tagger(f)
    return FreeFacetReport(
        top_dim=d,
        top_cells=tuple(tops),
        free_facets_of=free_of,
        top_cofaces_of={f: tuple(cs) for f, cs in cofaces.items()},
        tag_of=tags,
    )
