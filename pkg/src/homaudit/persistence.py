"""Persistent homology of a filtration.

Per-step homology bases with chosen cycle representatives, the induced maps
between consecutive steps, persistent groups as images of composed maps,
interval (barcode) decomposition, and the graded module with its degree-one
shift action. The same machinery runs on quotient chain complexes for
relative pairs.

All algebra happens on step indices; the rational threshold values are
carried along as labels only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import linalg
from .complexes import (ChainCoordinates, SimplicialComplex, Simplex, boundary_matrix,
                        intersect, is_subcomplex, relative_basis,
                        relative_boundary_matrix)
from .linalg import Subspace, check_modulus
from .morse import Filtration


class NotACycleError(ValueError):
    """A chain handed to a homology coordinatization was not a cycle."""


@dataclass(frozen=True)
class StepHomology:
    """Homology of one filtration step in one degree.

    `representatives` columns are cycles whose classes form the chosen basis;
    `boundaries` columns span the boundary subspace. Together they span the
    cycle space, so any cycle has unique coordinates (boundary part, class part).
    """

    modulus: int
    chain_dim: int
    representatives: np.ndarray   # chain_dim x dim
    boundaries: np.ndarray        # chain_dim x (number of boundaries)

    @property
    def dim(self) -> int:
        return self.representatives.shape[1]

    def class_of(self, chains: np.ndarray) -> np.ndarray:
        """Homology coordinates of cycle columns (boundary summands discarded)."""
        chains = np.asarray(chains, dtype=np.int64) % self.modulus
        single = chains.ndim == 1
        if single:
            chains = chains.reshape(-1, 1)
        if chains.shape[0] != self.chain_dim:
            raise linalg.DimensionMismatchError("chain length differs from the step's chain space")
        stacked = np.hstack([self.boundaries, self.representatives])
        coords = linalg.solve_matrix(stacked, chains, self.modulus)
        if coords is None:
            raise NotACycleError("chain is not a cycle of this step")
        out = coords[self.boundaries.shape[1]:, :]
        return out[:, 0] if single else out


def _homology_basis(d_k: np.ndarray, d_k1: np.ndarray, p: int) -> StepHomology:
    """Choose boundary and representative bases from the two boundary operators.

    Representatives are the kernel-basis cycles that stay independent after
    the boundary columns, found in one echelon pass for determinism.
    """
    cycles = linalg.nullspace(d_k, p)
    _, piv = linalg.row_reduce(d_k1, p)
    bounds = d_k1[:, list(piv)]
    _, pivots = linalg.row_reduce(np.hstack([bounds, cycles]), p)
    nb = bounds.shape[1]
    reps = cycles[:, [c - nb for c in pivots if c >= nb]]
    return StepHomology(p, d_k.shape[1], reps, bounds)


@dataclass(frozen=True)
class _StepChains:
    """Chain-level data of one step: ordered bases and boundary matrices per degree."""

    bases: tuple[tuple[Simplex, ...], ...]
    boundaries: tuple[np.ndarray, ...]

    def basis(self, k: int) -> tuple[Simplex, ...]:
        return self.bases[k] if 0 <= k < len(self.bases) else ()

    def boundary(self, k: int) -> np.ndarray:
        if 0 <= k < len(self.boundaries):
            return self.boundaries[k]
        rows = len(self.basis(k - 1))
        return np.zeros((rows, 0), dtype=np.int64)


def _absolute_chains(step: SimplicialComplex, max_degree: int, p: int) -> _StepChains:
    # one degree beyond max_degree so top-degree homology sees its boundaries
    bases = tuple(step.simplices(k) for k in range(max_degree + 2))
    bnds = tuple(boundary_matrix(step, k, p).dense() for k in range(max_degree + 2))
    return _StepChains(bases, bnds)


def _relative_chains(x_step: SimplicialComplex, a_step: SimplicialComplex,
                     max_degree: int, p: int) -> _StepChains:
    bases = tuple(relative_basis(x_step, a_step, k) for k in range(max_degree + 2))
    bnds = tuple(relative_boundary_matrix(x_step, a_step, k, p).dense()
                 for k in range(max_degree + 2))
    return _StepChains(bases, bnds)


def _embedding(prev: _StepChains, nxt: _StepChains, k: int) -> np.ndarray:
    """Chain map of one inclusion step in degree k.

    Basis simplices keep their coordinate when still present downstream; in the
    relative case a simplex that has entered A maps to zero.
    """
    rows = {s: i for i, s in enumerate(nxt.basis(k))}
    mat = np.zeros((len(rows), len(prev.basis(k))), dtype=np.int64)
    for j, s in enumerate(prev.basis(k)):
        i = rows.get(s)
        if i is not None:
            mat[i, j] = 1
    return mat


class PersistenceResult:
    """Homology bases, induced maps, and query operations for one filtration.

    Produced by compute_persistence (absolute) or relative_persistence
    (quotient complexes of a pair); immutable afterwards.
    """

    def __init__(self, filtration: Filtration, modulus: int, max_degree: int,
                 chains: Sequence[_StepChains]):
        self.filtration = filtration
        self.modulus = modulus
        self.max_degree = max_degree
        self._chains = tuple(chains)
        self._homology: dict[tuple[int, int], StepHomology] = {}
        self._maps: dict[tuple[int, int], np.ndarray] = {}  # (k, u): step u -> u+1
        self._composed: dict[tuple[int, int, int], np.ndarray] = {}
        for k in range(max_degree + 1):
            for u, chain in enumerate(self._chains):
                self._homology[(k, u)] = _homology_basis(
                    chain.boundary(k), chain.boundary(k + 1), modulus)
            for u in range(len(self._chains) - 1):
                prev, nxt = self._chains[u], self._chains[u + 1]
                emb = _embedding(prev, nxt, k)
                included = linalg.mat_mul(emb, self._homology[(k, u)].representatives, modulus)
                self._maps[(k, u)] = self._homology[(k, u + 1)].class_of(included)

    @property
    def n_steps(self) -> int:
        return len(self._chains)

    def labels(self) -> tuple[str, ...]:
        return self.filtration.labels()

    def _check_degree(self, k: int) -> None:
        if k < 0:
            raise IndexError(f"negative degree {k}")

    def homology(self, k: int, u: int) -> StepHomology:
        self._check_degree(k)
        if not 0 <= u < self.n_steps:
            raise IndexError(f"step index {u} out of range")
        if k > self.max_degree:
            return StepHomology(self.modulus, 0,
                                np.zeros((0, 0), dtype=np.int64),
                                np.zeros((0, 0), dtype=np.int64))
        return self._homology[(k, u)]

    def dim(self, k: int, u: int) -> int:
        return self.homology(k, u).dim

    def dims(self, k: int) -> tuple[int, ...]:
        return tuple(self.dim(k, u) for u in range(self.n_steps))

    def basis_simplices(self, k: int, u: int) -> tuple[Simplex, ...]:
        if k > self.max_degree:
            return ()
        return self._chains[u].basis(k)

    def chain_boundary(self, k: int, u: int) -> np.ndarray:
        return self._chains[u].boundary(k) if k <= self.max_degree else \
            np.zeros((len(self.basis_simplices(k - 1, u)), 0), dtype=np.int64)

    def step_map(self, k: int, u: int) -> np.ndarray:
        """Matrix of the induced map from step u to step u+1."""
        self._check_degree(k)
        if k > self.max_degree:
            return np.zeros((0, 0), dtype=np.int64)
        return self._maps[(k, u)]

    def induced_matrix(self, k: int, u: int, v: int) -> np.ndarray:
        """Matrix of the composed induced map from step u to step v (u <= v)."""
        if not 0 <= u <= v < self.n_steps:
            raise IndexError(f"bad step pair ({u}, {v})")
        if u == v:
            return np.eye(self.dim(k, u), dtype=np.int64)
        key = (k, u, v)
        if key not in self._composed:
            m = self.induced_matrix(k, u, v - 1)
            self._composed[key] = linalg.mat_mul(self.step_map(k, v - 1), m, self.modulus)
        return self._composed[key]

    def persistent_group(self, k: int, u: int, v: int) -> Subspace:
        """Image of the composed induced map, as a subspace of step-v homology."""
        return linalg.image_basis(self.induced_matrix(k, u, v), self.modulus)

    def class_of_chain(self, u: int, chain: ChainCoordinates) -> np.ndarray:
        """Homology coordinates at step u of a cycle given in chain coordinates."""
        return self.homology(chain.degree, u).class_of(chain.coefficients)


def compute_persistence(filtration: Filtration, modulus: int,
                        max_degree: Optional[int] = None) -> PersistenceResult:
    """Persistent homology of a filtration up to max_degree (default: dim of K)."""
    p = check_modulus(modulus)
    if max_degree is None:
        max_degree = max(filtration.complex.dim, 0)
    chains = [_absolute_chains(step, max_degree, p) for step in filtration.steps]
    return PersistenceResult(filtration, p, max_degree, chains)


def relative_persistence(X: SimplicialComplex, A: SimplicialComplex,
                         filtration: Filtration, modulus: int,
                         max_degree: Optional[int] = None) -> PersistenceResult:
    """Persistence of the quotient complexes C(X_u)/C(A_u).

    The filtration filters X; each step is paired with its intersection with A.
    """
    p = check_modulus(modulus)
    if filtration.complex != X:
        raise ValueError("filtration does not filter X")
    if not is_subcomplex(A, X):
        from .complexes import NotSubcomplexError
        raise NotSubcomplexError("A is not a subcomplex of X")
    if max_degree is None:
        max_degree = max(X.dim, 0)
    chains = [_relative_chains(step, intersect(step, A), max_degree, p)
              for step in filtration.steps]
    return PersistenceResult(filtration, p, max_degree, chains)


# ---------------------------------------------------------------------------
# barcode

@dataclass(frozen=True)
class Interval:
    """A bar: born at step index `birth`, mapping to zero at step `death`
    (None for classes that survive the whole filtration). Labels echo the
    filtration thresholds."""

    birth: int
    death: Optional[int]
    birth_label: str
    death_label: Optional[str]

    def contains(self, u: int, v: int) -> bool:
        return self.birth <= u and (self.death is None or self.death > v)

    def __str__(self):
        return f"[{self.birth_label}, {self.death_label if self.death is not None else 'inf'})"


@dataclass(frozen=True)
class Barcode:
    degree: int
    intervals: tuple[Interval, ...]

    def count_containing(self, u: int, v: int) -> int:
        return sum(1 for iv in self.intervals if iv.contains(u, v))

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return len(self.intervals)


def barcode(result: PersistenceResult, k: int) -> Barcode:
    """Interval decomposition in degree k.

    Multiplicities come from the rank function of the composed induced maps,
    so by construction dim H^{u,v} equals the number of intervals containing
    [u, v]; the consistency is still asserted exhaustively in the test suite.
    """
    n = result.n_steps
    labels = result.labels()
    r = {(u, v): linalg.dense_rank(result.induced_matrix(k, u, v), result.modulus)
         for u in range(n) for v in range(u, n)}

    def rk(u: int, v: int) -> int:
        return 0 if u < 0 else r[(u, v)]

    bars = []
    for b in range(n):
        for d in range(b + 1, n):
            mult = (rk(b, d - 1) - rk(b, d)) - (rk(b - 1, d - 1) - rk(b - 1, d))
            if mult < 0:
                raise AssertionError("negative interval multiplicity; rank function corrupt")
            bars.extend(Interval(b, d, labels[b], labels[d]) for _ in range(mult))
        mult = rk(b, n - 1) - rk(b - 1, n - 1)
        if mult < 0:
            raise AssertionError("negative interval multiplicity; rank function corrupt")
        bars.extend(Interval(b, None, labels[b], None) for _ in range(mult))
    bars.sort(key=lambda iv: (iv.birth, n + 1 if iv.death is None else iv.death))
    return Barcode(k, tuple(bars))


# ---------------------------------------------------------------------------
# graded persistence module

@dataclass(frozen=True)
class GradedElement:
    """One element of a graded module: a coordinate vector per step."""

    components: tuple[np.ndarray, ...]

    def is_zero(self) -> bool:
        return all(not c.any() for c in self.components)

    def __eq__(self, other):
        return (isinstance(other, GradedElement)
                and len(self.components) == len(other.components)
                and all(np.array_equal(a, b)
                        for a, b in zip(self.components, other.components)))


class GradedModule:
    """Direct sum of the per-step homologies with the degree-one shift action.

    shifts[u] maps component u into component u+1 for u < n-1; the shift at
    the top index is the identity, so multiplication folds the last component
    onto itself and survivor classes are never killed by the action.
    """

    __slots__ = ("modulus", "dims", "shifts")

    def __init__(self, modulus: int, dims: Sequence[int], shifts: Sequence[np.ndarray]):
        if len(shifts) != len(dims):
            raise ValueError("one shift matrix per component is required")
        for u, s in enumerate(shifts[:-1]):
            if s.shape != (dims[u + 1], dims[u]):
                raise ValueError(f"shift {u} has shape {s.shape}, expected "
                                 f"({dims[u + 1]}, {dims[u]})")
        top = shifts[-1]
        if top.shape != (dims[-1], dims[-1]) or not np.array_equal(
                top % modulus, np.eye(dims[-1], dtype=np.int64)):
            raise ValueError("the top-index shift must be the identity")
        object.__setattr__(self, "modulus", modulus)
        object.__setattr__(self, "dims", tuple(dims))
        object.__setattr__(self, "shifts", tuple(shifts))

    def __setattr__(self, name, value):
        raise AttributeError("GradedModule is immutable")

    @property
    def n_steps(self) -> int:
        return len(self.dims)

    def element(self, components: Sequence) -> GradedElement:
        comps = []
        for u, c in enumerate(components):
            arr = np.asarray(c, dtype=np.int64) % self.modulus
            if arr.shape != (self.dims[u],):
                raise linalg.DimensionMismatchError(
                    f"component {u} must have length {self.dims[u]}")
            comps.append(arr)
        if len(comps) != self.n_steps:
            raise linalg.DimensionMismatchError("wrong number of components")
        return GradedElement(tuple(comps))

    def zero(self) -> GradedElement:
        return self.element([np.zeros(d, dtype=np.int64) for d in self.dims])

    def x_action(self, elem: GradedElement) -> GradedElement:
        """Multiply by the polynomial variable: shift every component up one
        index (component 0 receives 0), with the top component folding onto
        itself through the identity."""
        n = self.n_steps
        out = [np.zeros(d, dtype=np.int64) for d in self.dims]
        for u in range(n - 1):
            out[u + 1] = (out[u + 1] + linalg.mat_mul(
                self.shifts[u], elem.components[u].reshape(-1, 1), self.modulus)[:, 0]) % self.modulus
        out[n - 1] = (out[n - 1] + elem.components[n - 1]) % self.modulus
        return GradedElement(tuple(out))


def graded_module(result: PersistenceResult, k: int) -> GradedModule:
    n = result.n_steps
    dims = [result.dim(k, u) for u in range(n)]
    shifts = [result.step_map(k, u) for u in range(n - 1)]
    shifts.append(np.eye(dims[-1], dtype=np.int64))
    return GradedModule(result.modulus, dims, shifts)


def direct_sum(a: GradedModule, b: GradedModule) -> GradedModule:
    """Componentwise direct sum; shifts act block-diagonally."""
    if a.modulus != b.modulus or a.n_steps != b.n_steps:
        raise ValueError("modules are not compatible")
    dims = [da + db for da, db in zip(a.dims, b.dims)]
    shifts = []
    for u in range(a.n_steps):
        sa, sb = a.shifts[u], b.shifts[u]
        block = np.zeros((sa.shape[0] + sb.shape[0], sa.shape[1] + sb.shape[1]),
                         dtype=np.int64)
        block[:sa.shape[0], :sa.shape[1]] = sa
        block[sa.shape[0]:, sa.shape[1]:] = sb
        shifts.append(block)
    return GradedModule(a.modulus, dims, shifts)
