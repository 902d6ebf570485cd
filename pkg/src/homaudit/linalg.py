"""Exact linear algebra over prime fields F_p.

All arithmetic is integer residue arithmetic; no floating point appears
anywhere. The matrices in this project are boundary operators and induced
maps of desk-scale complexes, so reductions run on dense int64 arrays with
explicit mod-p pivoting. Results are deterministic: elimination always
picks the first usable pivot (smallest row, then smallest column).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Union

import numpy as np


class NotInvariantError(ValueError):
    """A map does not carry the given domain subspace into the codomain subspace."""


class DimensionMismatchError(ValueError):
    """Matrix or vector shapes do not compose."""


def is_prime(n: int) -> bool:
    """Trial-division primality test; the moduli here are small."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def check_modulus(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise ValueError(f"modulus must be prime, got {p!r}")
    if p >= 2**31:
        raise ValueError(f"modulus too large for exact int64 arithmetic: {p}")
    return int(p)


@dataclass(frozen=True)
class FieldElement:
    """A residue in F_p. Construction normalizes the value into [0, p)."""

    value: int
    modulus: int

    def __post_init__(self):
        p = check_modulus(self.modulus)
        object.__setattr__(self, "modulus", p)
        object.__setattr__(self, "value", int(self.value) % p)

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.modulus != self.modulus:
                raise ValueError("mixed moduli")
            return other
        return FieldElement(int(other), self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return FieldElement(self.value + o.value, self.modulus)

    def __sub__(self, other):
        o = self._coerce(other)
        return FieldElement(self.value - o.value, self.modulus)

    def __mul__(self, other):
        o = self._coerce(other)
        return FieldElement(self.value * o.value, self.modulus)

    def __neg__(self):
        return FieldElement(-self.value, self.modulus)

    def inverse(self) -> "FieldElement":
        if self.value == 0:
            raise ZeroDivisionError("0 has no inverse")
        return FieldElement(pow(self.value, -1, self.modulus), self.modulus)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value


# ---------------------------------------------------------------------------
# dense helpers (shared by the whole package)

def _as_array(a, p: int) -> np.ndarray:
    arr = np.asarray(a, dtype=np.int64) % p
    if arr.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D array, got shape {arr.shape}")
    return arr


def mat_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Exact product mod p. Falls back to Python ints if int64 could overflow."""
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    inner = a.shape[1]
    # each accumulated sum is < inner * (p-1)^2; keep it inside int64
    if inner * (p - 1) * (p - 1) < 2**62:
        return (a.astype(np.int64) @ b.astype(np.int64)) % p
    return (a.astype(object) @ b.astype(object) % p).astype(np.int64)


def row_reduce(a: np.ndarray, p: int) -> tuple[np.ndarray, tuple[int, ...]]:
    """Reduced row echelon form over F_p and the pivot column indices."""
    m = a.astype(np.int64).copy() % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            m[[r, pr]] = m[[pr, r]]
        inv = pow(int(m[r, c]), -1, p)
        m[r] = (m[r] * inv) % p
        hit = np.nonzero(m[:, c])[0]
        for i in hit:
            if i != r:
                m[i] = (m[i] - m[i, c] * m[r]) % p
        pivots.append(c)
        r += 1
    return m, tuple(pivots)


def dense_rank(a: np.ndarray, p: int) -> int:
    return len(row_reduce(a, p)[1])


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Columns form the standard basis of {x : a x = 0} (free variables set to 1)."""
    rref, pivots = row_reduce(a, p)
    cols = a.shape[1]
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((cols, len(free)), dtype=np.int64)
    for j, fc in enumerate(free):
        basis[fc, j] = 1
        for r, pc in enumerate(pivots):
            basis[pc, j] = (-rref[r, fc]) % p
    return basis


def solve_matrix(a: np.ndarray, b: np.ndarray, p: int) -> Optional[np.ndarray]:
    """One solution X of a X = b (column-wise), or None if any column is unsolvable.

    Free variables are set to 0, so the result is deterministic.
    """
    if b.ndim == 1:
        b = b.reshape(-1, 1)
    if a.shape[0] != b.shape[0]:
        raise DimensionMismatchError(f"cannot solve {a.shape} x = {b.shape}")
    aug, pivots = row_reduce(np.hstack([a % p, b % p]), p)
    n = a.shape[1]
    if any(c >= n for c in pivots):
        return None  # a pivot in the augmented block means an inconsistent column
    x = np.zeros((n, b.shape[1]), dtype=np.int64)
    for r, c in enumerate(pivots):
        x[c] = aug[r, n:]
    return x


def solve(a: np.ndarray, v: np.ndarray, p: int) -> Optional[np.ndarray]:
    x = solve_matrix(a, np.asarray(v, dtype=np.int64).reshape(-1, 1), p)
    return None if x is None else x[:, 0]


# ---------------------------------------------------------------------------
# public matrix / subspace types

EntryLike = Union[int, FieldElement]


class SparseMatrix:
    """Immutable matrix over F_p storing only nonzero entries, keyed by (row, col)."""

    __slots__ = ("rows", "cols", "modulus", "_entries", "_dense")

    def __init__(self, rows: int, cols: int, modulus: int,
                 entries: Union[Mapping[tuple[int, int], EntryLike],
                                Iterable[tuple[int, int, EntryLike]], None] = None):
        p = check_modulus(modulus)
        if rows < 0 or cols < 0:
            raise ValueError("negative dimensions")
        store: dict[tuple[int, int], int] = {}
        if entries is not None:
            items = entries.items() if isinstance(entries, Mapping) else (
                ((r, c), v) for r, c, v in entries)
            for (r, c), v in items:
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r}, {c}) outside a {rows}x{cols} matrix")
                if isinstance(v, FieldElement):
                    if v.modulus != p:
                        raise ValueError("entry modulus differs from matrix modulus")
                    v = v.value
                v = int(v) % p
                if (r, c) in store:
                    raise ValueError(f"duplicate entry at ({r}, {c})")
                if v:
                    store[(r, c)] = v
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "modulus", p)
        object.__setattr__(self, "_entries", store)
        object.__setattr__(self, "_dense", None)

    def __setattr__(self, name, value):
        raise AttributeError("SparseMatrix is immutable")

    @classmethod
    def from_dense(cls, array, modulus: int) -> "SparseMatrix":
        arr = _as_array(array, check_modulus(modulus))
        entries = {(int(r), int(c)): int(arr[r, c]) for r, c in zip(*np.nonzero(arr))}
        return cls(arr.shape[0], arr.shape[1], modulus, entries)

    @classmethod
    def identity(cls, n: int, modulus: int) -> "SparseMatrix":
        return cls(n, n, modulus, {(i, i): 1 for i in range(n)})

    @classmethod
    def zeros(cls, rows: int, cols: int, modulus: int) -> "SparseMatrix":
        return cls(rows, cols, modulus)

    def entry(self, r: int, c: int) -> int:
        return self._entries.get((r, c), 0)

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def items(self):
        return sorted(self._entries.items())

    def dense(self) -> np.ndarray:
        if self._dense is None:
            arr = np.zeros((self.rows, self.cols), dtype=np.int64)
            for (r, c), v in self._entries.items():
                arr[r, c] = v
            arr.setflags(write=False)
            object.__setattr__(self, "_dense", arr)
        return self._dense

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.modulus != other.modulus:
            raise ValueError("mixed moduli")
        return SparseMatrix.from_dense(
            mat_mul(self.dense(), other.dense(), self.modulus), self.modulus)

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix)
                and (self.rows, self.cols, self.modulus) == (other.rows, other.cols, other.modulus)
                and self._entries == other._entries)

    def __hash__(self):
        return hash((self.rows, self.cols, self.modulus, frozenset(self._entries.items())))

    def __repr__(self):
        return f"SparseMatrix({self.rows}x{self.cols} mod {self.modulus}, nnz={self.nnz})"


class Subspace:
    """A subspace of F_p^n spanned by an independent list of coordinate vectors.

    Basis vectors are the columns of `basis`; independence is checked at
    construction.
    """

    __slots__ = ("ambient", "modulus", "basis")

    def __init__(self, ambient: int, vectors, modulus: int):
        p = check_modulus(modulus)
        mat = np.asarray(list(vectors) if not isinstance(vectors, np.ndarray) else vectors,
                         dtype=np.int64)
        if mat.size == 0:
            mat = np.zeros((0, ambient), dtype=np.int64)
        if mat.ndim != 2 or mat.shape[1] != ambient:
            raise DimensionMismatchError(
                f"basis vectors must have length {ambient}, got shape {mat.shape}")
        basis = (mat % p).T  # ambient x dim
        if dense_rank(basis, p) != basis.shape[1]:
            raise ValueError("basis vectors are linearly dependent")
        basis.setflags(write=False)
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "modulus", p)
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_matrix(cls, basis: np.ndarray, modulus: int) -> "Subspace":
        return cls(basis.shape[0], basis.T, modulus)

    @classmethod
    def zero(cls, ambient: int, modulus: int) -> "Subspace":
        return cls(ambient, np.zeros((0, ambient), dtype=np.int64), modulus)

    @classmethod
    def full(cls, ambient: int, modulus: int) -> "Subspace":
        return cls(ambient, np.eye(ambient, dtype=np.int64), modulus)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def vectors(self) -> list[np.ndarray]:
        return [self.basis[:, j].copy() for j in range(self.dim)]

    def contains(self, vector) -> bool:
        v = np.asarray(vector, dtype=np.int64) % self.modulus
        if v.shape != (self.ambient,):
            raise DimensionMismatchError("vector length differs from ambient dimension")
        return solve(self.basis, v, self.modulus) is not None

    def contains_subspace(self, other: "Subspace") -> bool:
        if other.ambient != self.ambient:
            raise DimensionMismatchError("ambient dimensions differ")
        stacked = np.hstack([self.basis, other.basis])
        return dense_rank(stacked, self.modulus) == self.dim

    def __eq__(self, other):
        return (isinstance(other, Subspace) and self.ambient == other.ambient
                and self.modulus == other.modulus and self.dim == other.dim
                and self.contains_subspace(other))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of F_{self.modulus}^{self.ambient})"


# ---------------------------------------------------------------------------
# operations

MatrixLike = Union[SparseMatrix, np.ndarray]


def _dense_of(m: MatrixLike, p: Optional[int] = None) -> tuple[np.ndarray, int]:
    if isinstance(m, SparseMatrix):
        return m.dense(), m.modulus
    if p is None:
        raise ValueError("a modulus is required for plain arrays")
    return _as_array(m, check_modulus(p)), p


def rank(m: MatrixLike, p: Optional[int] = None) -> int:
    """Dimension of the column space of m."""
    a, p = _dense_of(m, p)
    return dense_rank(a, p)


def kernel_basis(m: MatrixLike, p: Optional[int] = None) -> Subspace:
    """Basis of the null space; its dimension is cols - rank."""
    a, p = _dense_of(m, p)
    return Subspace.from_matrix(nullspace(a, p), p)


def image_basis(m: MatrixLike, p: Optional[int] = None) -> Subspace:
    """Basis of the column space: the original columns at pivot positions."""
    a, p = _dense_of(m, p)
    _, pivots = row_reduce(a, p)
    return Subspace.from_matrix(a[:, list(pivots)], p)


def preimage(m: MatrixLike, v, p: Optional[int] = None) -> Optional[np.ndarray]:
    """Some x with m x = v, or None when v is not in the image.

    None is the NotInImage value; unsolvability is an answer, not an error.
    """
    a, p = _dense_of(m, p)
    w = np.asarray(v, dtype=np.int64) % p
    if w.shape != (a.shape[0],):
        raise DimensionMismatchError(
            f"vector of length {w.shape} does not match {a.shape[0]} rows")
    return solve(a, w, p)


def restrict_map(m: MatrixLike, domain_sub: Subspace, codomain_sub: Subspace,
                 p: Optional[int] = None) -> SparseMatrix:
    """Matrix of m restricted to domain_sub, written in codomain_sub coordinates.

    Raises NotInvariantError when some image vector falls outside codomain_sub.
    """
    a, p = _dense_of(m, p)
    if domain_sub.modulus != p or codomain_sub.modulus != p:
        raise ValueError("mixed moduli")
    if domain_sub.ambient != a.shape[1] or codomain_sub.ambient != a.shape[0]:
        raise DimensionMismatchError("subspace ambients do not match the matrix")
    images = mat_mul(a, domain_sub.basis, p)
    coords = solve_matrix(codomain_sub.basis, images, p)
    if coords is None:
        raise NotInvariantError("map does not carry the domain subspace into the codomain subspace")
    return SparseMatrix.from_dense(coords, p)
