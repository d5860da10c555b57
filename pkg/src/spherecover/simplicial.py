"""Skeleta of simplices and face-level primitives.

Faces are canonical tuples of strictly increasing 0-based vertex indices;
equality is structural, so faces can serve directly as cell labels.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

Face = tuple[int, ...]


def face(vertices) -> Face:
    """Canonicalize an iterable of vertex indices into a Face."""
    f = tuple(sorted(vertices))
    if not f:
        raise ValueError("a face needs at least one vertex")
    if any(v < 0 for v in f):
        raise ValueError(f"negative vertex index in {f}")
    if any(a == b for a, b in zip(f, f[1:])):
        raise ValueError(f"repeated vertex in {f}")
    return f


@dataclass(frozen=True)
class SimplicialComplex:
    """A finite simplicial complex on vertices 0..n_vertices-1."""

    n_vertices: int
    faces: frozenset[Face]

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.faces) - 1

    def faces_by_dim(self) -> list[list[Face]]:
        """Faces graded by dimension, each grade sorted lexicographically."""
        grades: list[list[Face]] = [[] for _ in range(self.dim + 1)]
        for f in self.faces:
            grades[len(f) - 1].append(f)
        for g in grades:
            g.sort()
        return grades

    def validate(self) -> None:
        """Check vertex bounds and downward closure."""
        for f in self.faces:
            if f != face(f):
                raise ValueError(f"non-canonical face {f}")
            if f[-1] >= self.n_vertices:
                raise ValueError(f"face {f} exceeds vertex count {self.n_vertices}")
            for g in facets_of(f):
                if g not in self.faces:
                    raise ValueError(f"missing facet {g} of {f}")


def skeleton_complex(n_vertices: int, k: int) -> SimplicialComplex:
    """The k-dimensional skeleton of the simplex on n_vertices vertices."""
    if n_vertices < 1:
        raise ValueError("need at least one vertex")
    if not 0 <= k <= n_vertices - 1:
        raise ValueError(f"skeleton dimension {k} out of range for {n_vertices} vertices")
    faces = frozenset(
        f for size in range(1, k + 2) for f in combinations(range(n_vertices), size)
    )
    return SimplicialComplex(n_vertices=n_vertices, faces=faces)


def skeleton_face_count(n_vertices: int, k: int) -> int:
    """Closed-form face count of skeleton_complex(n_vertices, k)."""
    return sum(comb(n_vertices, i) for i in range(1, k + 2))


def facets_of(f: Face) -> list[Face]:
    """All nonempty codimension-1 subfaces, sorted lexicographically."""
    if len(f) == 1:
        return []
    return sorted(tuple(v for v in f if v != u) for u in f)


def are_disjoint(a: Face, b: Face) -> bool:
    """True iff the two faces share no vertex."""
    return not set(a) & set(b)
