"""Long sequences of a filtered triad (Mayer-Vietoris) or pair, audited at
three levels: ordinary homology per sublevel (exact), persistent groups
between two sublevels (order 2, exactness may fail), and graded persistence
modules (exact componentwise).

Sequences are finite windows over degrees 0..dim X; beyond the top degree
the tails are closed off with zero spaces and zero maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from . import linalg
from .complexes import (SimplicialComplex, intersect, is_subcomplex, union,
                        NotSubcomplexError)
from .linalg import DimensionMismatchError, NotInvariantError
from .morse import Filtration
from .persistence import (GradedModule, PersistenceResult, compute_persistence,
                          direct_sum, graded_module, relative_persistence)

ORDINARY = "ordinary"
PERSISTENT = "persistent-group"
MODULE = "graded-module"

TERM_X = "X"
TERM_INT = "A∩B"
TERM_SUM = "A⊕B"
TERM_A = "A"
TERM_REL = "(X,A)"


class NotCoveringError(ValueError):
    """The triad does not satisfy X = A ∪ B as subcomplexes."""


class RestrictionLeakError(RuntimeError):
    """A restricted map left its target persistent group.

    Commutativity of the inclusion squares forbids this; seeing it means the
    implementation (not the input) is wrong.
    """


@dataclass(frozen=True)
class SequenceTerm:
    label: str
    degree: int
    dim: int
    dims_per_step: Optional[tuple[int, ...]] = None  # graded-module level only


@dataclass(frozen=True)
class GradedMap:
    """A map of graded modules, one matrix per step index."""

    per_step: tuple[np.ndarray, ...]


@dataclass(frozen=True)
class LinearSequence:
    level: str
    kind: str  # 'mayer-vietoris' or 'pair'
    terms: tuple[SequenceTerm, ...]
    maps: tuple[Union[np.ndarray, GradedMap], ...]  # maps[i]: terms[i] -> terms[i+1]
    modulus: int
    u: Optional[int] = None
    v: Optional[int] = None


@dataclass(frozen=True)
class StepAudit:
    step: int
    dim: int
    dim_image_in: int
    dim_kernel_out: int
    order2: bool
    exact: bool
    defect: int


@dataclass(frozen=True)
class PositionAudit:
    term: str
    degree: int
    dim: int
    dim_image_in: int
    dim_kernel_out: int
    order2: bool
    exact: bool
    defect: int
    steps: Optional[tuple[StepAudit, ...]] = None


@dataclass(frozen=True)
class SequenceAudit:
    level: str
    kind: str
    positions: tuple[PositionAudit, ...]
    order2: bool
    exact: bool

    def position(self, term: str, degree: int) -> PositionAudit:
        for pos in self.positions:
            if pos.term == term and pos.degree == degree:
                return pos
        raise KeyError(f"no position ({term}, degree {degree})")

    def defects(self) -> dict[tuple[str, int], int]:
        return {(pos.term, pos.degree): pos.defect
                for pos in self.positions if pos.defect != 0}


# ---------------------------------------------------------------------------
# systems: cached persistence of all spaces in a triad / pair

class MayerVietorisSystem:
    """Absolute persistence of X, A, B, and A∩B over one filtration of X."""

    kind = "mayer-vietoris"

    def __init__(self, X: SimplicialComplex, A: SimplicialComplex, B: SimplicialComplex,
                 filtration: Filtration, modulus: int, max_degree: Optional[int] = None):
        if not (is_subcomplex(A, X) and is_subcomplex(B, X)):
            raise NotSubcomplexError("A and B must be subcomplexes of X")
        if union(A, B) != X:
            raise NotCoveringError("A ∪ B does not cover X")
        if filtration.complex != X:
            raise ValueError("the filtration must filter X")
        self.X, self.A, self.B = X, A, B
        self.modulus = linalg.check_modulus(modulus)
        self.top_degree = max(X.dim, 0) if max_degree is None else max_degree
        self.filtration = filtration
        self.RX = compute_persistence(filtration, modulus, self.top_degree)
        self.RA = compute_persistence(filtration.restrict_to(A), modulus, self.top_degree)
        self.RB = compute_persistence(filtration.restrict_to(B), modulus, self.top_degree)
        self.RAB = compute_persistence(filtration.restrict_to(intersect(A, B)),
                                       modulus, self.top_degree)

    @property
    def n_steps(self) -> int:
        return len(self.filtration)

    def _term_result(self, label: str) -> PersistenceResult:
        return {TERM_X: self.RX, TERM_INT: self.RAB}[label]

    def map_at(self, gap: str, k: int, u: int) -> np.ndarray:
        if gap == "delta":
            return mv_connecting(self, k, u)
        if gap == "alpha":
            s = induced_inclusion_map(self.RAB, self.RA, k, u)
            t = (-induced_inclusion_map(self.RAB, self.RB, k, u)) % self.modulus
            return np.vstack([s, t])
        if gap == "beta":
            za = induced_inclusion_map(self.RA, self.RX, k, u)
            zb = induced_inclusion_map(self.RB, self.RX, k, u)
            return np.hstack([za, zb])
        raise ValueError(gap)

    def term_dim(self, label: str, k: int, u: int) -> int:
        if label == TERM_SUM:
            return self.RA.dim(k, u) + self.RB.dim(k, u)
        return self._term_result(label).dim(k, u)

    def vertical(self, label: str, k: int, u: int, v: int) -> np.ndarray:
        if label == TERM_SUM:
            return _block_diag(self.RA.induced_matrix(k, u, v),
                               self.RB.induced_matrix(k, u, v))
        return self._term_result(label).induced_matrix(k, u, v)

    def term_module(self, label: str, k: int) -> GradedModule:
        if label == TERM_SUM:
            return direct_sum(graded_module(self.RA, k), graded_module(self.RB, k))
        return graded_module(self._term_result(label), k)

    # within one degree: delta lands in A∩B, alpha in the sum, beta back in X;
    # the lead term sits one degree up at the head of the window
    term_cycle = (TERM_INT, TERM_SUM, TERM_X)
    lead_term = TERM_X


class PairSystem:
    """Absolute persistence of X and A plus relative persistence of (X, A)."""

    kind = "pair"

    def __init__(self, X: SimplicialComplex, A: SimplicialComplex,
                 filtration: Filtration, modulus: int, max_degree: Optional[int] = None):
        if not is_subcomplex(A, X):
            raise NotSubcomplexError("A must be a subcomplex of X")
        if filtration.complex != X:
            raise ValueError("the filtration must filter X")
        self.X, self.A = X, A
        self.modulus = linalg.check_modulus(modulus)
        self.top_degree = max(X.dim, 0) if max_degree is None else max_degree
        self.filtration = filtration
        self.RX = compute_persistence(filtration, modulus, self.top_degree)
        self.RA = compute_persistence(filtration.restrict_to(A), modulus, self.top_degree)
        self.RXA = relative_persistence(X, A, filtration, modulus, self.top_degree)

    @property
    def n_steps(self) -> int:
        return len(self.filtration)

    def _term_result(self, label: str) -> PersistenceResult:
        return {TERM_X: self.RX, TERM_A: self.RA, TERM_REL: self.RXA}[label]

    def map_at(self, gap: str, k: int, u: int) -> np.ndarray:
        if gap == "delta":
            return pair_connecting(self, k, u)
        if gap == "alpha":
            return induced_inclusion_map(self.RA, self.RX, k, u)
        if gap == "beta":
            return quotient_map(self, k, u)
        raise ValueError(gap)

    def term_dim(self, label: str, k: int, u: int) -> int:
        return self._term_result(label).dim(k, u)

    def vertical(self, label: str, k: int, u: int, v: int) -> np.ndarray:
        return self._term_result(label).induced_matrix(k, u, v)

    def term_module(self, label: str, k: int) -> GradedModule:
        return graded_module(self._term_result(label), k)

    term_cycle = (TERM_A, TERM_X, TERM_REL)
    lead_term = TERM_REL


System = Union[MayerVietorisSystem, PairSystem]


def _block_diag(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros((a.shape[0] + b.shape[0], a.shape[1] + b.shape[1]), dtype=np.int64)
    out[:a.shape[0], :a.shape[1]] = a
    out[a.shape[0]:, a.shape[1]:] = b
    return out


# ---------------------------------------------------------------------------
# the three horizontal maps, chain level

def induced_inclusion_map(R_sub: PersistenceResult, R_sup: PersistenceResult,
                          k: int, u: int) -> np.ndarray:
    """Matrix of H_k(sub_u) -> H_k(sup_u) in the chosen homology bases.

    Representative cycles are re-coordinatized along the inclusion and reduced
    modulo the boundaries of the bigger step.
    """
    sub_basis = R_sub.basis_simplices(k, u)
    sup_basis = R_sup.basis_simplices(k, u)
    pos = {s: i for i, s in enumerate(sup_basis)}
    missing = [s for s in sub_basis if s not in pos]
    if missing:
        raise NotSubcomplexError(f"simplex {tuple(missing[0])} of the sub-step is "
                                 "not a cell of the containing step")
    reps = R_sub.homology(k, u).representatives
    emb = np.zeros((len(sup_basis), len(sub_basis)), dtype=np.int64)
    for j, s in enumerate(sub_basis):
        emb[pos[s], j] = 1
    included = linalg.mat_mul(emb, reps, R_sub.modulus)
    return R_sup.homology(k, u).class_of(included)


def _restrict_coords(chains: np.ndarray, from_basis, to_basis, what: str) -> np.ndarray:
    """Re-index chain columns from one simplex basis onto another, requiring
    every nonzero coefficient to sit on a simplex of the target basis."""
    pos = {s: i for i, s in enumerate(to_basis)}
    out = np.zeros((len(to_basis), chains.shape[1]), dtype=np.int64)
    for i, s in enumerate(from_basis):
        row = chains[i]
        if s in pos:
            out[pos[s]] = row
        elif row.any():
            raise NotCoveringError(f"{what}: coefficient leaks onto {tuple(s)}")
    return out


def mv_connecting(sys: MayerVietorisSystem, k: int, u: int,
                  assign_shared_to: str = "A") -> np.ndarray:
    """Connecting map H_{k+1}(X_u) -> H_k((A∩B)_u): split each representative
    chain into an A-part and a B-part and take the class of the A-part's
    boundary. Simplices of A∩B go to the A side (or B, for the
    well-definedness cross-check)."""
    p = sys.modulus
    a_step = sys.RA.filtration.steps[u]
    b_step = sys.RB.filtration.steps[u]
    x_basis = sys.RX.basis_simplices(k + 1, u)
    reps = sys.RX.homology(k + 1, u).representatives
    a_mask = np.zeros(len(x_basis), dtype=np.int64)
    for i, s in enumerate(x_basis):
        in_a, in_b = s in a_step, s in b_step
        if not in_a and not in_b:
            raise NotCoveringError(f"simplex {tuple(s)} lies in neither A nor B at step {u}")
        if in_a and (assign_shared_to == "A" or not in_b):
            a_mask[i] = 1
    a_part = (reps * a_mask[:, None]) % p
    boundary = linalg.mat_mul(sys.RX.chain_boundary(k + 1, u), a_part, p)
    ab_chains = _restrict_coords(boundary, sys.RX.basis_simplices(k, u),
                                 sys.RAB.basis_simplices(k, u),
                                 "connecting chain boundary left A∩B")
    return sys.RAB.homology(k, u).class_of(ab_chains)


def pair_connecting(sys: PairSystem, k: int, u: int) -> np.ndarray:
    """Connecting map H_{k+1}(X_u, A_u) -> H_k(A_u): lift each relative class
    to a chain of X_u and take the class of its boundary, which lands in A_u."""
    p = sys.modulus
    rel_reps = sys.RXA.homology(k + 1, u).representatives
    lifted = _restrict_coords(rel_reps, sys.RXA.basis_simplices(k + 1, u),
                              sys.RX.basis_simplices(k + 1, u), "relative lift")
    boundary = linalg.mat_mul(sys.RX.chain_boundary(k + 1, u), lifted, p)
    a_chains = _restrict_coords(boundary, sys.RX.basis_simplices(k, u),
                                sys.RA.basis_simplices(k, u),
                                "relative cycle boundary left A")
    return sys.RA.homology(k, u).class_of(a_chains)


def quotient_map(sys: PairSystem, k: int, u: int) -> np.ndarray:
    """Matrix of H_k(X_u) -> H_k(X_u, A_u): project representative chains onto
    the relative basis and reduce modulo relative boundaries."""
    reps = sys.RX.homology(k, u).representatives
    x_basis = sys.RX.basis_simplices(k, u)
    rel_basis = sys.RXA.basis_simplices(k, u)
    pos = {s: i for i, s in enumerate(rel_basis)}
    out = np.zeros((len(rel_basis), reps.shape[1]), dtype=np.int64)
    for i, s in enumerate(x_basis):
        if s in pos:
            out[pos[s]] = reps[i]
    return sys.RXA.homology(k, u).class_of(out)


# ---------------------------------------------------------------------------
# sequence assembly

def _term_schedule(sys: System) -> list[tuple[str, int]]:
    """(label, degree) of every term, the leading above-top-degree term included."""
    D = sys.top_degree
    schedule = [(sys.lead_term, D + 1)]
    for k in range(D, -1, -1):
        schedule.extend((label, k) for label in sys.term_cycle)
    return schedule


def _gap_schedule(sys: System) -> list[tuple[str, int]]:
    """(map name, degree) for every arrow between consecutive terms."""
    D = sys.top_degree
    gaps = []
    for k in range(D, -1, -1):
        gaps.extend([("delta", k), ("alpha", k), ("beta", k)])
    return gaps


def ordinary_sequence(sys: System, u: int) -> tuple[LinearSequence, SequenceAudit]:
    """The long sequence of sublevel u, which must audit exact everywhere."""
    terms = [SequenceTerm(label, k, sys.term_dim(label, k, u))
             for label, k in _term_schedule(sys)]
    maps = [sys.map_at(gap, k, u) for gap, k in _gap_schedule(sys)]
    maps.append(np.zeros((0, terms[-1].dim), dtype=np.int64))
    seq = LinearSequence(ORDINARY, sys.kind, tuple(terms), tuple(maps), sys.modulus, u=u)
    return seq, audit(seq)


def persistent_sequence(sys: System, u: int, v: int) -> tuple[LinearSequence, SequenceAudit]:
    """The sequence of persistent groups between sublevels u <= v.

    Spaces are images of the vertical maps; arrows are the level-v maps
    restricted to those images. Order 2 must always hold; exactness may fail.
    """
    if not 0 <= u <= v < sys.n_steps:
        raise IndexError(f"bad step pair ({u}, {v})")
    p = sys.modulus
    subspaces = [linalg.image_basis(sys.vertical(label, k, u, v), p)
                 for label, k in _term_schedule(sys)]
    terms = [SequenceTerm(label, k, sub.dim)
             for (label, k), sub in zip(_term_schedule(sys), subspaces)]
    maps = []
    for i, (gap, k) in enumerate(_gap_schedule(sys)):
        level_v = sys.map_at(gap, k, v)
        try:
            restricted = linalg.restrict_map(level_v, subspaces[i], subspaces[i + 1], p)
        except NotInvariantError as exc:
            raise RestrictionLeakError(
                f"{gap} at degree {k} left the target persistent group; "
                "the inclusion squares cannot commute") from exc
        maps.append(restricted.dense())
    maps.append(np.zeros((0, terms[-1].dim), dtype=np.int64))
    seq = LinearSequence(PERSISTENT, sys.kind, tuple(terms), tuple(maps), p, u=u, v=v)
    return seq, audit(seq)


def module_sequence(sys: System) -> tuple[LinearSequence, SequenceAudit]:
    """The sequence of graded persistence modules, assembled componentwise.

    Audited per step index at every position; must be exact everywhere.
    """
    n = sys.n_steps
    modules = [sys.term_module(label, k) for label, k in _term_schedule(sys)]
    terms = [SequenceTerm(label, k, sum(mod.dims), mod.dims)
             for (label, k), mod in zip(_term_schedule(sys), modules)]
    maps: list[GradedMap] = []
    for i, (gap, k) in enumerate(_gap_schedule(sys)):
        per_step = tuple(sys.map_at(gap, k, u) for u in range(n))
        _check_shift_compatibility(per_step, modules[i], modules[i + 1], gap, k)
        maps.append(GradedMap(per_step))
    maps.append(GradedMap(tuple(np.zeros((0, d), dtype=np.int64)
                                for d in terms[-1].dims_per_step)))
    seq = LinearSequence(MODULE, sys.kind, tuple(terms), tuple(maps), sys.modulus)
    return seq, audit(seq)


def _check_shift_compatibility(per_step, src: GradedModule, tgt: GradedModule,
                               gap: str, k: int) -> None:
    p = src.modulus
    for u in range(len(per_step) - 1):
        left = linalg.mat_mul(per_step[u + 1], src.shifts[u], p)
        right = linalg.mat_mul(tgt.shifts[u], per_step[u], p)
        if not np.array_equal(left, right):
            raise ValueError(f"graded {gap} at degree {k} does not commute with the "
                             f"shift action between steps {u} and {u + 1}")


# ---------------------------------------------------------------------------
# auditing

def _audit_one(in_map: np.ndarray, out_map: np.ndarray, dim: int, p: int):
    if in_map.shape[0] != dim or out_map.shape[1] != dim:
        raise DimensionMismatchError(
            f"maps of shapes {in_map.shape} -> [{dim}] -> {out_map.shape} do not compose")
    im = linalg.dense_rank(in_map, p)
    ker = dim - linalg.dense_rank(out_map, p)
    order2 = not linalg.mat_mul(out_map, in_map, p).any()
    exact = order2 and im == ker
    return im, ker, order2, exact, ker - im


def audit(seq: LinearSequence) -> SequenceAudit:
    """Per-position image/kernel comparison; order 2 means im ⊆ ker (checked
    as vanishing composition), exact additionally means equal dimensions."""
    p = seq.modulus
    positions = []
    for i, term in enumerate(seq.terms):
        out_map = seq.maps[i]
        if seq.level == MODULE:
            dims = term.dims_per_step
            in_map = seq.maps[i - 1] if i > 0 else GradedMap(
                tuple(np.zeros((d, 0), dtype=np.int64) for d in dims))
            steps = []
            for u, d in enumerate(dims):
                im, ker, o2, ex, defect = _audit_one(
                    in_map.per_step[u], out_map.per_step[u], d, p)
                steps.append(StepAudit(u, d, im, ker, o2, ex, defect))
            positions.append(PositionAudit(
                term.label, term.degree, term.dim,
                sum(s.dim_image_in for s in steps),
                sum(s.dim_kernel_out for s in steps),
                all(s.order2 for s in steps), all(s.exact for s in steps),
                sum(s.defect for s in steps), tuple(steps)))
        else:
            in_map = seq.maps[i - 1] if i > 0 else np.zeros((term.dim, 0), dtype=np.int64)
            im, ker, o2, ex, defect = _audit_one(in_map, out_map, term.dim, p)
            positions.append(PositionAudit(term.label, term.degree, term.dim,
                                           im, ker, o2, ex, defect))
    return SequenceAudit(seq.level, seq.kind, tuple(positions),
                         all(pos.order2 for pos in positions),
                         all(pos.exact for pos in positions))


def check_squares(sys: System, u: int, v: int) -> list[str]:
    """Commutativity of every inclusion square between sublevels u <= v:
    (map at v) ∘ vertical = vertical ∘ (map at u). Returns mismatch
    descriptions; an empty list means all squares commute."""
    schedule = _term_schedule(sys)
    failures = []
    for i, (gap, k) in enumerate(_gap_schedule(sys)):
        src_label, src_k = schedule[i]
        tgt_label, tgt_k = schedule[i + 1]
        m_u = sys.map_at(gap, k, u)
        m_v = sys.map_at(gap, k, v)
        vert_src = sys.vertical(src_label, src_k, u, v)
        vert_tgt = sys.vertical(tgt_label, tgt_k, u, v)
        left = linalg.mat_mul(m_v, vert_src, sys.modulus)
        right = linalg.mat_mul(vert_tgt, m_u, sys.modulus)
        if not np.array_equal(left, right):
            failures.append(f"{gap} square at degree {k} between steps {u} and {v}")
    return failures
