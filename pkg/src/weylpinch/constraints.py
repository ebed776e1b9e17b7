"""Linear constraint system for algebraic Weyl tensors and its nullspace.

The constraints are, for every index quadruple, antisymmetry in the first
and last pairs, the first Bianchi identity, pair exchange (redundant but
kept for rank robustness), and one trace row per index pair.  The nullspace
of the assembled system is the space of algebraic Weyl tensors; its
dimension is n(n+1)(n+2)(n-3)/12.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

from .tensor import Tensor4, flatten_index

#: Pivot threshold for Gaussian elimination, relative to the largest entry.
PIVOT_RTOL = 1e-9


class ConsistencyError(RuntimeError):
    """Internal invariant violated (e.g. unexpected constraint rank)."""


def weyl_dimension(n: int) -> int:
    """Number of independent components of an algebraic Weyl tensor,
    n(n+1)(n+2)(n-3)/12; zero in dimension 3."""
    if n < 3:
        raise ValueError(f"dimension must be >= 3, got {n}")
    return n * (n + 1) * (n + 2) * (n - 3) // 12


@dataclass(frozen=True)
class ConstraintSystem:
    """Sparse homogeneous system A w = 0 over the n**4 tensor components."""

    dim: int
    rows: tuple[tuple[tuple[int, float], ...], ...]

    def dense_matrix(self) -> NDArray[np.float64]:
        a = np.zeros((len(self.rows), self.dim**4))
        for r, row in enumerate(self.rows):
            for col, coef in row:
                a[r, col] += coef
        return a

    def residual(self, t: Tensor4) -> float:
        """Max absolute row residual |A w|_inf."""
        if t.dim != self.dim:
            raise ValueError(f"dimension mismatch: {t.dim} != {self.dim}")
        return float(np.abs(self.dense_matrix() @ t.data).max())


def _combine(terms: list[tuple[int, float]]) -> tuple[tuple[int, float], ...]:
    acc: dict[int, float] = {}
    for col, coef in terms:
        acc[col] = acc.get(col, 0.0) + coef
    return tuple((col, coef) for col, coef in sorted(acc.items()) if coef != 0.0)


def build_constraints(n: int) -> ConstraintSystem:
    """Assemble all constraint rows; redundancy is absorbed later by the
    rank computation."""
    if n < 3:
        raise ValueError(f"dimension must be >= 3, got {n}")

    def x(i: int, j: int, k: int, l: int) -> int:
        return flatten_index(i, j, k, l, n)

    rows: list[tuple[tuple[int, float], ...]] = []
    rng = range(1, n + 1)
    for i in rng:
        for j in rng:
            for k in rng:
                for l in rng:
                    for terms in (
                        [(x(i, j, k, l), 1.0), (x(j, i, k, l), 1.0)],
                        [(x(i, j, k, l), 1.0), (x(i, j, l, k), 1.0)],
                        [
                            (x(i, j, k, l), 1.0),
                            (x(i, k, l, j), 1.0),
                            (x(i, l, j, k), 1.0),
                        ],
                        [(x(i, j, k, l), 1.0), (x(k, l, i, j), -1.0)],
                    ):
                        row = _combine(terms)
                        if row:
                            rows.append(row)
    for i in rng:
        for j in rng:
            rows.append(_combine([(x(i, k, j, k), 1.0) for k in rng]))
    return ConstraintSystem(n, tuple(rows))


def _rref(a: NDArray[np.float64]) -> tuple[NDArray[np.float64], list[int]]:
    """Reduced row echelon form via Gaussian elimination with partial
    pivoting; returns the reduced matrix and the pivot columns.

    Duplicate rows (up to sign) are collapsed first and rows that become
    zero are pruned as elimination proceeds; neither changes the row space.
    """
    a = a.copy()
    tol = PIVOT_RTOL * np.abs(a).max()
    lead = np.argmax(a != 0.0, axis=1)
    signs = np.sign(a[np.arange(a.shape[0]), lead])
    a = np.unique(a * np.where(signs == 0.0, 1.0, signs)[:, None], axis=0)
    ncols = a.shape[1]
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        if r == a.shape[0]:
            break
        p = r + int(np.argmax(np.abs(a[r:, c])))
        if abs(a[p, c]) <= tol:
            continue
        a[[r, p]] = a[[p, r]]
        a[r, c:] /= a[r, c]
        a[r, :c] = 0.0
        factors = a[r + 1 :, c].copy()
        a[r + 1 :, c:] -= np.outer(factors, a[r, c:])
        pivot_cols.append(c)
        r += 1
        if r % 128 == 0:
            live = np.abs(a[r:]).max(axis=1) > tol
            a = np.vstack([a[:r], a[r:][live]])
    a = a[:r]
    # back-substitution: clear pivot columns above each pivot row
    for i in range(r - 1, 0, -1):
        c = pivot_cols[i]
        factors = a[:i, c].copy()
        a[:i, c:] -= np.outer(factors, a[i, c:])
    return a, pivot_cols


def constraint_rank(c: ConstraintSystem) -> int:
    """Numerical rank of the row space, computed by elimination."""
    _, pivot_cols = _rref(c.dense_matrix())
    return len(pivot_cols)


@dataclass(frozen=True)
class WeylBasis:
    """Orthonormal basis of the algebraic Weyl subspace, as rows of an
    (m, n**4) matrix."""

    dim: int
    m: int
    vectors: NDArray[np.float64]

    def __post_init__(self) -> None:
        if self.vectors.shape != (self.m, self.dim**4):
            raise ValueError(
                f"basis shape {self.vectors.shape} != ({self.m}, {self.dim**4})"
            )
        v = np.ascontiguousarray(self.vectors, dtype=np.float64)
        v.flags.writeable = False
        object.__setattr__(self, "vectors", v)


@dataclass(frozen=True)
class WeylCoords:
    """Coordinates with respect to a WeylBasis."""

    values: NDArray[np.float64]

    def __post_init__(self) -> None:
        v = np.ascontiguousarray(self.values, dtype=np.float64)
        if v.ndim != 1:
            raise ValueError("coordinates must be a 1-d vector")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


def _gram_schmidt(cols: NDArray[np.float64]) -> NDArray[np.float64]:
    """Modified Gram-Schmidt on the columns, with one re-orthogonalization
    pass for 1e-12-level pairwise orthogonality."""
    q = cols.astype(np.float64).copy()
    k = q.shape[1]
    for _ in range(2):
        for j in range(k):
            for i in range(j):
                q[:, j] -= np.dot(q[:, i], q[:, j]) * q[:, i]
            nrm = np.linalg.norm(q[:, j])
            if nrm == 0.0:
                raise ConsistencyError("linearly dependent nullspace vector")
            q[:, j] /= nrm
    return q


def nullspace_basis(c: ConstraintSystem) -> WeylBasis:
    """Orthonormal basis of the constraint nullspace.

    Gaussian elimination with partial pivoting brings the rows to reduced
    echelon form; the free columns parametrize the nullspace, which is then
    orthonormalized by modified Gram-Schmidt.
    """
    n = c.dim
    m = weyl_dimension(n)
    rref, pivot_cols = _rref(c.dense_matrix())
    rank = len(pivot_cols)
    if rank != n**4 - m:
        raise ConsistencyError(
            f"constraint rank {rank} != expected {n**4 - m} for n={n}"
        )
    if m == 0:
        return WeylBasis(n, 0, np.zeros((0, n**4)))
    free_cols = sorted(set(range(n**4)) - set(pivot_cols))
    null = np.zeros((n**4, m))
    null[free_cols, :] = np.eye(m)
    null[pivot_cols, :] = -rref[:, free_cols]
    return WeylBasis(n, m, _gram_schmidt(null).T)


def embed(coords: WeylCoords, basis: WeylBasis) -> Tensor4:
    """Linear isometry from coordinates into the ambient tensor space."""
    if coords.values.size != basis.m:
        raise ValueError(
            f"coordinate length {coords.values.size} != basis size {basis.m}"
        )
    return Tensor4(basis.dim, coords.values @ basis.vectors)


def project(t: Tensor4, basis: WeylBasis) -> WeylCoords:
    """Coordinates of the orthogonal projection onto the Weyl subspace."""
    if t.dim != basis.dim:
        raise ValueError(f"dimension mismatch: {t.dim} != {basis.dim}")
    return WeylCoords(basis.vectors @ t.data)


@dataclass(frozen=True)
class ResidualReport:
    """Outcome of checking a tensor against all Weyl constraint rows."""

    max_residual: float
    tol: float
    passed: bool


@functools.lru_cache(maxsize=None)
def _dense_constraints(n: int) -> NDArray[np.float64]:
    a = build_constraints(n).dense_matrix()
    a.flags.writeable = False
    return a


def is_algebraic_weyl(t: Tensor4, tol: float = 1e-10) -> ResidualReport:
    """Evaluate every constraint row on the tensor and compare the max
    absolute residual against the tolerance."""
    res = float(np.abs(_dense_constraints(t.dim) @ t.data).max())
    return ResidualReport(max_residual=res, tol=tol, passed=res <= tol)


@functools.lru_cache(maxsize=None)
def weyl_basis(n: int) -> WeylBasis:
    """Cached orthonormal Weyl-subspace basis for dimension n."""
    return nullspace_basis(build_constraints(n))
