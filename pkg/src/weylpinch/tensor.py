"""Dense rank-4 curvature tensors over an orthonormal frame.

All tensors are stored as flat vectors of length n**4 with the component
T_{ijkl} (1-based indices) at position (i-1)n^3 + (j-1)n^2 + (k-1)n + (l-1),
which is exactly C-order of the (n, n, n, n) array.  The frame metric is the
identity, so there is no distinction between upper and lower indices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray

#: Tolerance used when checking that an input has the algebraic curvature
#: symmetries (antisymmetry in both pairs, pair exchange, first Bianchi).
CURVATURE_SYMMETRY_TOL = 1e-10


def flatten_index(i: int, j: int, k: int, l: int, n: int) -> int:
    """Flat position of the component T_{ijkl}, indices 1-based."""
    for idx in (i, j, k, l):
        if not 1 <= idx <= n:
            raise ValueError(f"index {idx} out of range 1..{n}")
    return (i - 1) * n**3 + (j - 1) * n**2 + (k - 1) * n + (l - 1)


def unflatten_index(x: int, n: int) -> tuple[int, int, int, int]:
    """Inverse of :func:`flatten_index`; returns 1-based (i, j, k, l)."""
    if not 0 <= x < n**4:
        raise ValueError(f"flat index {x} out of range 0..{n**4 - 1}")
    i, r = divmod(x, n**3)
    j, r = divmod(r, n**2)
    k, l = divmod(r, n)
    return i + 1, j + 1, k + 1, l + 1


def _frozen(arr: NDArray[np.float64]) -> NDArray[np.float64]:
    arr = np.ascontiguousarray(arr, dtype=np.float64)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Tensor4:
    """Dense rank-4 tensor in an n-dimensional orthonormal frame."""

    dim: int
    data: NDArray[np.float64]  # flat, length dim**4

    def __post_init__(self) -> None:
        if self.dim < 2:
            raise ValueError(f"dimension must be >= 2, got {self.dim}")
        if self.data.shape != (self.dim**4,):
            raise ValueError(
                f"data length {self.data.size} != dim**4 = {self.dim**4}"
            )
        object.__setattr__(self, "data", _frozen(self.data))

    @classmethod
    def zeros(cls, n: int) -> "Tensor4":
        return cls(n, np.zeros(n**4))

    @classmethod
    def from_array(cls, arr: NDArray[np.float64]) -> "Tensor4":
        """Build from an (n, n, n, n) array (0-based indexing)."""
        n = arr.shape[0]
        if arr.shape != (n, n, n, n):
            raise ValueError(f"expected a rank-4 hypercube, got shape {arr.shape}")
        return cls(n, arr.reshape(-1))

    def as_array(self) -> NDArray[np.float64]:
        """Read-only (n, n, n, n) view of the components."""
        n = self.dim
        return self.data.reshape(n, n, n, n)

    def get(self, i: int, j: int, k: int, l: int) -> float:
        return float(self.data[flatten_index(i, j, k, l, self.dim)])


@dataclass(frozen=True)
class Sym2:
    """Symmetric 2-tensor (e.g. Ricci, or the frame metric delta)."""

    dim: int
    data: NDArray[np.float64]  # (dim, dim), exactly symmetric

    def __post_init__(self) -> None:
        if self.data.shape != (self.dim, self.dim):
            raise ValueError(
                f"data shape {self.data.shape} != ({self.dim}, {self.dim})"
            )
        if not np.array_equal(self.data, self.data.T):
            raise ValueError("matrix is not exactly symmetric")
        object.__setattr__(self, "data", _frozen(self.data))

    @classmethod
    def identity(cls, n: int) -> "Sym2":
        return cls(n, np.eye(n))


def _require_same_dim(a: Tensor4 | Sym2, b: Tensor4 | Sym2) -> None:
    if a.dim != b.dim:
        raise ValueError(f"dimension mismatch: {a.dim} != {b.dim}")


def norm_sq(t: Tensor4) -> float:
    """Full contraction sum T_{ijkl}^2."""
    return float(np.dot(t.data, t.data))


def inner(a: Tensor4, b: Tensor4) -> float:
    """Full contraction sum A_{ijkl} B_{ijkl}."""
    _require_same_dim(a, b)
    return float(np.dot(a.data, b.data))


def kulkarni_nomizu(h: Sym2, k: Sym2) -> Tensor4:
    """Kulkarni-Nomizu product of two symmetric 2-tensors.

    (h . k)_{ijkl} = h_ik k_jl - h_il k_jk + h_jl k_ik - h_jk k_il
    """
    _require_same_dim(h, k)
    hm, km = h.data, k.data
    out = (
        np.einsum("ik,jl->ijkl", hm, km)
        - np.einsum("il,jk->ijkl", hm, km)
        + np.einsum("jl,ik->ijkl", hm, km)
        - np.einsum("jk,il->ijkl", hm, km)
    )
    return Tensor4.from_array(out)


def curvature_symmetry_residual(t: Tensor4) -> float:
    """Max violation of the algebraic curvature symmetries (trace-freeness
    excluded): antisymmetry in the first and last index pairs, pair
    exchange, and the first Bianchi identity."""
    a = t.as_array()
    res = max(
        np.abs(a + a.transpose(1, 0, 2, 3)).max(),
        np.abs(a + a.transpose(0, 1, 3, 2)).max(),
        np.abs(a - a.transpose(2, 3, 0, 1)).max(),
        np.abs(a + a.transpose(0, 2, 3, 1) + a.transpose(0, 3, 1, 2)).max(),
    )
    return float(res)


def _check_curvature_symmetries(t: Tensor4) -> None:
    res = curvature_symmetry_residual(t)
    if res > CURVATURE_SYMMETRY_TOL:
        raise ValueError(
            f"input violates the curvature symmetries (residual {res:.3e})"
        )


def ricci(r: Tensor4) -> Sym2:
    """Ricci contraction R_ij = sum_k R_ikjk; input must have the curvature
    symmetries."""
    _check_curvature_symmetries(r)
    mat = np.einsum("ikjk->ij", r.as_array())
    return Sym2(r.dim, (mat + mat.T) / 2.0)


def scalar(r: Tensor4) -> float:
    """Scalar curvature S = sum_ij R_ijij."""
    return float(np.trace(ricci(r).data))


def weyl_from_riemann(r: Tensor4) -> Tensor4:
    """Totally trace-free part of a curvature tensor.

    Subtracts the Ricci and scalar Kulkarni-Nomizu blocks:

        W = R - (Ric . g)/(n-2) + S (g . g) / (2(n-1)(n-2)).

    In dimensions 2 and 3 the result is exactly zero.
    """
    _check_curvature_symmetries(r)
    n = r.dim
    if n <= 3:
        return Tensor4.zeros(n)
    ric = ricci(r)
    s = float(np.trace(ric.data))
    g = Sym2.identity(n)
    w = (
        r.as_array()
        - kulkarni_nomizu(ric, g).as_array() / (n - 2)
        + s * kulkarni_nomizu(g, g).as_array() / (2.0 * (n - 1) * (n - 2))
    )
    return Tensor4.from_array(w)


def frame_rotate(t: Tensor4, o: NDArray[np.float64]) -> Tensor4:
    """Rotate all four slots by an orthogonal matrix:
    T'_{abcd} = O_ai O_bj O_ck O_dl T_{ijkl}."""
    o = np.asarray(o, dtype=np.float64)
    n = t.dim
    if o.shape != (n, n):
        raise ValueError(f"rotation shape {o.shape} != ({n}, {n})")
    if np.abs(o @ o.T - np.eye(n)).max() > 1e-12:
        raise ValueError("matrix is not orthogonal to 1e-12")
    a = t.as_array()
    for axis in range(4):
        a = np.tensordot(o, a, axes=([1], [axis]))
        a = np.moveaxis(a, 0, axis)
    return Tensor4.from_array(a)


def pad_tensor(t: Tensor4, new_dim: int) -> Tensor4:
    """Zero-pad into a larger frame; new-index components are all zero, so
    every algebraic Weyl constraint (including traces) is preserved."""
    if new_dim < t.dim:
        raise ValueError(f"cannot pad from dim {t.dim} down to {new_dim}")
    n = t.dim
    out = np.zeros((new_dim,) * 4)
    out[:n, :n, :n, :n] = t.as_array()
    return Tensor4.from_array(out)
