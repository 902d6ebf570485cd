"""Finite simplicial complexes, boundary operators, and set operations.

A complex fixes one deterministic total order on its simplices
(dimension-major, then lexicographic on vertex tuples); every matrix and
chain coordinate vector in the package is written in that order.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable

import numpy as np

from .linalg import SparseMatrix, check_modulus, dense_rank, nullspace


class MalformedSimplexError(ValueError):
    """Vertex list is not strictly increasing non-negative integers."""


class NotSubcomplexError(ValueError):
    """An operation required a subcomplex relationship that does not hold."""


class Simplex(tuple):
    """A simplex as a strictly increasing tuple of non-negative vertex ids."""

    __slots__ = ()

    def __new__(cls, vertices: Iterable[int]):
        vs = tuple(int(v) for v in vertices)
        if not vs:
            raise MalformedSimplexError("a simplex needs at least one vertex")
        if any(v < 0 for v in vs):
            raise MalformedSimplexError(f"negative vertex id in {vs}")
        if any(a >= b for a, b in zip(vs, vs[1:])):
            raise MalformedSimplexError(f"vertices must be strictly increasing, got {vs}")
        return super().__new__(cls, vs)

    @property
    def dim(self) -> int:
        return len(self) - 1

    def facets(self) -> list["Simplex"]:
        """Codimension-1 faces, in vertex-deletion order."""
        if self.dim == 0:
            return []
        return [Simplex(self[:i] + self[i + 1:]) for i in range(len(self))]

    def boundary(self) -> list[tuple[int, "Simplex"]]:
        """(sign, facet) pairs; deleting the vertex at position i carries sign (-1)^i."""
        return [((-1) ** i, f) for i, f in enumerate(self.facets())]

    def faces(self) -> list["Simplex"]:
        """All proper faces, every dimension."""
        out = []
        for k in range(1, len(self)):
            out.extend(Simplex(c) for c in combinations(self, k))
        return out


class SimplicialComplex:
    """An immutable finite simplicial complex, closed under the face relation."""

    __slots__ = ("_by_dim", "_index", "_all")

    def __init__(self, simplices: Iterable[Simplex]):
        pool = {s if isinstance(s, Simplex) else Simplex(s) for s in simplices}
        for s in pool:
            for f in s.facets():
                if f not in pool:
                    raise ValueError(f"not closed under faces: {s} present but {f} missing")
        top = max((s.dim for s in pool), default=-1)
        by_dim = tuple(tuple(sorted(s for s in pool if s.dim == k)) for k in range(top + 1))
        index = {s: i for block in by_dim for i, s in enumerate(block)}
        object.__setattr__(self, "_by_dim", by_dim)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "_all", frozenset(pool))

    def __setattr__(self, name, value):
        raise AttributeError("SimplicialComplex is immutable")

    @property
    def dim(self) -> int:
        return len(self._by_dim) - 1

    def simplices(self, k: int | None = None) -> tuple[Simplex, ...]:
        if k is None:
            return tuple(s for block in self._by_dim for s in block)
        if k < 0 or k > self.dim:
            return ()
        return self._by_dim[k]

    def n_cells(self, k: int) -> int:
        return len(self.simplices(k))

    def index(self, s: Simplex) -> int:
        """Position of s within the ordered list of its own dimension."""
        return self._index[s]

    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self.simplices(0))

    def maximal_simplices(self) -> tuple[Simplex, ...]:
        cofaced = set()
        for s in self._all:
            for f in s.facets():
                cofaced.add(f)
        return tuple(sorted((s for s in self._all if s not in cofaced),
                            key=lambda s: (s.dim, s)))

    def __contains__(self, s) -> bool:
        return s in self._all

    def __len__(self) -> int:
        return len(self._all)

    def __iter__(self):
        return iter(self.simplices())

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self._all == other._all

    def __hash__(self):
        return hash(self._all)

    def __repr__(self):
        counts = ",".join(str(self.n_cells(k)) for k in range(self.dim + 1))
        return f"SimplicialComplex(dim {self.dim}; cells {counts or '-'})"


EMPTY_COMPLEX = SimplicialComplex(())


@dataclass(frozen=True)
class ChainCoordinates:
    """A k-chain as a coefficient vector over the ambient complex's k-simplices."""

    degree: int
    coefficients: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.coefficients, dtype=np.int64)
        arr.setflags(write=False)
        object.__setattr__(self, "coefficients", arr)


def close_under_faces(generators: Iterable) -> SimplicialComplex:
    """Smallest complex containing the generators."""
    pool: set[Simplex] = set()
    for g in generators:
        s = g if isinstance(g, Simplex) else Simplex(g)
        pool.add(s)
        pool.update(s.faces())
    return SimplicialComplex(pool)


def boundary_matrix(K: SimplicialComplex, k: int, p: int) -> SparseMatrix:
    """Matrix of the boundary operator from k-chains to (k-1)-chains.

    Degree 0 maps to the zero space, so the k=0 matrix has no rows.
    """
    p = check_modulus(p)
    if k < 0:
        raise ValueError("degree must be non-negative")
    cols = K.simplices(k)
    rows = K.simplices(k - 1) if k > 0 else ()
    entries: dict[tuple[int, int], int] = {}
    for j, s in enumerate(cols):
        if k == 0:
            continue
        for sign, f in s.boundary():
            entries[(K.index(f), j)] = sign % p
    return SparseMatrix(len(rows), len(cols), p, entries)


def betti_numbers(K: SimplicialComplex, p: int) -> list[int]:
    """b_k = dim ker d_k - rank d_{k+1}, for k = 0 .. dim K."""
    p = check_modulus(p)
    out = []
    for k in range(K.dim + 1):
        dk = boundary_matrix(K, k, p).dense()
        dk1 = boundary_matrix(K, k + 1, p).dense()
        cycles = nullspace(dk, p).shape[1]
        out.append(cycles - dense_rank(dk1, p))
    return out


def intersect(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    """Set intersection of simplices; automatically face-closed."""
    return SimplicialComplex(set(A.simplices()) & set(B.simplices()))


def union(A: SimplicialComplex, B: SimplicialComplex) -> SimplicialComplex:
    """Set union of simplices over a shared vertex universe."""
    return SimplicialComplex(set(A.simplices()) | set(B.simplices()))


def is_subcomplex(A: SimplicialComplex, K: SimplicialComplex) -> bool:
    return all(s in K for s in A.simplices())


def relative_basis(X: SimplicialComplex, A: SimplicialComplex, k: int) -> tuple[Simplex, ...]:
    """The quotient chain basis in degree k: k-simplices of X not in A."""
    return tuple(s for s in X.simplices(k) if s not in A)


def relative_boundary_matrix(X: SimplicialComplex, A: SimplicialComplex,
                             k: int, p: int) -> SparseMatrix:
    """Boundary of the quotient complex C(X)/C(A) on the relative basis.

    Coordinates of faces lying in A are deleted.
    """
    p = check_modulus(p)
    if not is_subcomplex(A, X):
        raise NotSubcomplexError("A is not a subcomplex of X")
    cols = relative_basis(X, A, k)
    rows = relative_basis(X, A, k - 1) if k > 0 else ()
    row_pos = {s: i for i, s in enumerate(rows)}
    entries: dict[tuple[int, int], int] = {}
    for j, s in enumerate(cols):
        if k == 0:
            continue
        for sign, f in s.boundary():
            i = row_pos.get(f)
            if i is not None:
                entries[(i, j)] = sign % p
    return SparseMatrix(len(rows), len(cols), p, entries)
