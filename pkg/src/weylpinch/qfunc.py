"""The cubic curvature invariant, its analytic gradient, and the
scale-invariant ratio q / |W|^3.

The invariant is the double-plus-half contraction

    q(W) = 2 W_pqrs W_ptru W_qtsu + (1/2) W_pqrs W_pqtu W_rstu,

evaluated over all n**4 components with no symmetry assumptions.  The
default evaluator uses pairwise contractions; ``q_value_direct`` is the
literal six-index sum kept as an independent reference.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import product as iproduct

import numpy as np

from .constraints import WeylBasis, WeylCoords, embed
from .tensor import Tensor4

#: Tensors with norm at or below this are rejected by the ratio (a silent
#: zero would mask optimizer degeneracies).
ZERO_NORM_TOL = 1e-12


@functools.lru_cache(maxsize=None)
def _path(subscripts: str, n: int):
    shapes = [(n, n, n, n)] * subscripts.split("->")[0].count(",") + [(n, n, n, n)]
    dummies = [np.empty(s) for s in shapes]
    return np.einsum_path(subscripts, *dummies, optimize="optimal")[0]


def _contract(subscripts: str, *ops: np.ndarray) -> np.ndarray:
    return np.einsum(subscripts, *ops, optimize=_path(subscripts, ops[0].shape[0]))


def q_value(w: Tensor4) -> float:
    """Cubic invariant via pairwise contractions; cubic in w."""
    a = w.as_array()
    t1 = _contract("pqrs,ptru,qtsu->", a, a, a)
    t2 = _contract("pqrs,pqtu,rstu->", a, a, a)
    return float(2.0 * t1 + 0.5 * t2)


def q_value_direct(w: Tensor4) -> float:
    """Literal six-index summation; O(n**6) reference evaluator."""
    a = w.as_array()
    n = w.dim
    total = 0.0
    for p, q, r, s, t, u in iproduct(range(n), repeat=6):
        total += 2.0 * a[p, q, r, s] * a[p, t, r, u] * a[q, t, s, u]
        total += 0.5 * a[p, q, r, s] * a[p, q, t, u] * a[r, s, t, u]
    return total


def q_gradient(w: Tensor4) -> Tensor4:
    """Ambient gradient of the cubic invariant, treating all n**4
    components as independent.

    One contraction pattern per factor occurrence in each term; Euler's
    identity <grad, w> = 3 q(w) holds since the invariant is a cubic form.
    """
    a = w.as_array()
    g = 2.0 * (
        _contract("ptru,qtsu->pqrs", a, a)
        + _contract("pqrs,qtsu->ptru", a, a)
        + _contract("pqrs,ptru->qtsu", a, a)
    )
    g += 0.5 * (
        _contract("pqtu,rstu->pqrs", a, a)
        + _contract("pqrs,rstu->pqtu", a, a)
        + _contract("pqrs,pqtu->rstu", a, a)
    )
    return Tensor4.from_array(g)


def fd_directional(w: Tensor4, d: Tensor4, h: float = 1e-5) -> float:
    """Central-difference directional derivative of the cubic invariant."""
    if h <= 0.0:
        raise ValueError("step must be positive")
    plus = Tensor4(w.dim, w.data + h * d.data)
    minus = Tensor4(w.dim, w.data - h * d.data)
    return (q_value(plus) - q_value(minus)) / (2.0 * h)


def fd_gradient(w: Tensor4, h: float = 1e-5) -> Tensor4:
    """Full component-wise central-difference gradient; O(n**4) invariant
    evaluations, kept as the slow reference for the analytic gradient."""
    if h <= 0.0:
        raise ValueError("step must be positive")
    base = np.array(w.data)
    out = np.empty_like(base)
    for idx in range(base.size):
        step = np.zeros_like(base)
        step[idx] = h
        out[idx] = (
            q_value(Tensor4(w.dim, base + step))
            - q_value(Tensor4(w.dim, base - step))
        ) / (2.0 * h)
    return Tensor4(w.dim, out)


@dataclass(frozen=True)
class QReport:
    """Value, norm and scale-invariant ratio of one tensor."""

    q: float
    norm: float
    ratio: float


def ratio(w: Tensor4) -> float:
    """Scale-invariant ratio q / |W|^3; undefined at (numerically) zero
    tensors."""
    nrm = float(np.linalg.norm(w.data))
    if nrm <= ZERO_NORM_TOL:
        raise ValueError(f"ratio undefined: tensor norm {nrm:.3e} is ~0")
    return q_value(w) / nrm**3


def q_report(w: Tensor4) -> QReport:
    nrm = float(np.linalg.norm(w.data))
    return QReport(q=q_value(w), norm=nrm, ratio=ratio(w))


def ratio_gradient(coords: WeylCoords, basis: WeylBasis) -> WeylCoords:
    """Coordinate gradient of the ratio.

    The basis embedding is an isometry, so |W| = |coords| and the chain
    rule gives grad = (B grad_q)/|c|^3 - 3 q c/|c|^5, which is orthogonal
    to the coordinates (the ratio is scale-invariant).
    """
    c = coords.values
    nrm = float(np.linalg.norm(c))
    if nrm <= ZERO_NORM_TOL:
        raise ValueError(f"ratio gradient undefined: norm {nrm:.3e} is ~0")
    w = embed(coords, basis)
    q = q_value(w)
    gc = basis.vectors @ q_gradient(w).data
    return WeylCoords(gc / nrm**3 - (3.0 * q / nrm**5) * c)
