"""Multi-start maximization of the ratio q / |W|^3 on the unit sphere in
Weyl coordinates.

Each run is Riemannian gradient ascent with Armijo backtracking; the
feasible set is handled exactly by the orthonormal subspace basis, and the
sphere normalization absorbs the scale invariance of the objective.  Runs
are independent and deterministic: run i uses a Philox counter-based
generator keyed with master_seed + i, so results do not depend on the
execution order or the thread count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .constraints import WeylBasis, WeylCoords, embed
from .qfunc import q_gradient, q_value

#: Environment variable controlling how many worker threads ``search`` may
#: use; results are identical for any value.
THREADS_ENV_VAR = "WEYLPINCH_THREADS"

#: Backtracking never shrinks the step below this.
STEP_FLOOR = 1e-16

#: If backtracking hits the floor, the run still counts as converged when
#: the gradient norm is at most this.
FLOOR_GRAD_TOL = 1e-8


@dataclass(frozen=True)
class RunConfig:
    """Parameters of one multi-start search."""

    dim: int
    starts: int = 20
    master_seed: int = 0
    grad_tol: float = 1e-10
    max_iter: int = 10_000
    armijo_c: float = 1e-4
    backtrack: float = 0.5
    initial_step: float = 1.0

    def __post_init__(self) -> None:
        if self.starts < 1:
            raise ValueError("starts must be positive")
        if not 0.0 < self.backtrack < 1.0:
            raise ValueError("backtrack must be in (0, 1)")
        if not 0.0 < self.armijo_c < 1.0:
            raise ValueError("armijo_c must be in (0, 1)")
        if self.grad_tol <= 0.0:
            raise ValueError("grad_tol must be positive")


@dataclass(frozen=True)
class IterateRecord:
    k: int
    ratio: float
    grad_norm: float
    step: float


@dataclass(frozen=True)
class RunResult:
    """One ascent trajectory; the ratio sequence is nondecreasing, so the
    final iterate is the best one."""

    status: str  # "converged" | "max_iter_reached"
    best_ratio: float
    best_coords: WeylCoords
    trace: tuple[IterateRecord, ...]
    seed: int


@dataclass(frozen=True)
class SearchSummary:
    runs: tuple[RunResult, ...]
    best: int  # index of the run with maximal best_ratio (lowest wins ties)
    config: RunConfig

    @property
    def best_run(self) -> RunResult:
        return self.runs[self.best]


def philox_generator(seed: int) -> np.random.Generator:
    """Counter-based generator used for all sampling (documented so ports
    can reproduce the streams)."""
    return np.random.Generator(np.random.Philox(key=seed))


def random_unit_coords(rng: np.random.Generator, m: int) -> WeylCoords:
    """Standard-normal sample normalized to the unit sphere."""
    if m < 1:
        raise ValueError("coordinate dimension must be >= 1")
    v = rng.standard_normal(m)
    return WeylCoords(v / np.linalg.norm(v))


def _ratio_and_grad(
    x: np.ndarray, basis: WeylBasis
) -> tuple[float, np.ndarray]:
    """Ratio and tangent gradient at a unit coordinate vector."""
    w = embed(WeylCoords(x), basis)
    q = q_value(w)
    gc = basis.vectors @ q_gradient(w).data
    g = gc - 3.0 * q * x  # |x| = 1; scale-invariance gradient
    g -= np.dot(g, x) * x  # defensive tangent re-projection
    return q, g


def _ratio_at(x: np.ndarray, basis: WeylBasis) -> float:
    w = embed(WeylCoords(x), basis)
    return q_value(w)


def ascend(start: WeylCoords, basis: WeylBasis, config: RunConfig,
           seed: int = 0) -> RunResult:
    """Gradient ascent on the unit sphere with Armijo backtracking."""
    x = np.array(start.values, dtype=np.float64)
    nrm = float(np.linalg.norm(x))
    if nrm == 0.0:
        raise ValueError("start vector has zero norm")
    if abs(nrm - 1.0) > 1e-9:
        raise ValueError(f"start vector norm {nrm} is not 1 within 1e-9")
    x /= nrm

    trace: list[IterateRecord] = []
    status = "max_iter_reached"
    r, g = _ratio_and_grad(x, basis)
    for k in range(config.max_iter + 1):
        gn = float(np.linalg.norm(g))
        if gn <= config.grad_tol:
            trace.append(IterateRecord(k, r, gn, 0.0))
            status = "converged"
            break
        if k == config.max_iter:
            trace.append(IterateRecord(k, r, gn, 0.0))
            break
        t = config.initial_step
        accepted = False
        while t >= STEP_FLOOR:
            y = x + t * g
            y /= np.linalg.norm(y)
            ry = _ratio_at(y, basis)
            # strict inequality: once the Armijo increase underflows, steps
            # that leave the ratio bit-identical are rejected and the step
            # floor below ends the run instead of stalling
            if ry > r + config.armijo_c * t * gn * gn:
                accepted = True
                break
            t *= config.backtrack
        trace.append(IterateRecord(k, r, gn, t if accepted else 0.0))
        if not accepted:
            # step floor reached: first-order stationary to within the
            # relaxed tolerance counts as converged, otherwise give up
            status = "converged" if gn <= FLOOR_GRAD_TOL else "max_iter_reached"
            break
        x, r = y, ry
        _, g = _ratio_and_grad(x, basis)
    return RunResult(
        status=status,
        best_ratio=r,
        best_coords=WeylCoords(x),
        trace=tuple(trace),
        seed=seed,
    )


def _single_run(basis: WeylBasis, config: RunConfig, index: int) -> RunResult:
    seed = (config.master_seed + index) % 2**64
    rng = philox_generator(seed)
    start = random_unit_coords(rng, basis.m)
    return ascend(start, basis, config, seed=seed)


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV_VAR, "")
    if raw.strip():
        return max(1, int(raw))
    return os.cpu_count() or 1


def search(config: RunConfig, basis: WeylBasis) -> SearchSummary:
    """Run ``config.starts`` independent ascents and keep them all.

    Per-run seeds are master_seed + run index; aggregation is a pure max
    with lowest-index tie-break, so the result is independent of execution
    order and parallelism.
    """
    if basis.dim != config.dim:
        raise ValueError(f"basis dim {basis.dim} != config dim {config.dim}")
    workers = thread_count()
    indices = range(config.starts)
    if workers > 1 and config.starts > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            runs = tuple(pool.map(lambda i: _single_run(basis, config, i), indices))
    else:
        runs = tuple(_single_run(basis, config, i) for i in indices)
    best = 0
    for i, run in enumerate(runs):
        if run.best_ratio > runs[best].best_ratio:
            best = i
    return SearchSummary(runs=runs, best=best, config=config)


def error_log(run: RunResult, target: float) -> list[tuple[int, float]]:
    """Per-iterate error |ratio_k - target|; exact zeros are floored at
    1e-300 so logarithmic plots stay finite."""
    if not np.isfinite(target):
        raise ValueError("target must be finite")
    out = []
    for rec in run.trace:
        e = abs(rec.ratio - target)
        out.append((rec.k, e if e > 0.0 else 1e-300))
    return out
