"""Randomized quasi-Monte Carlo estimation on the open unit cube.

Halton points with Cranley-Patterson random shifts: each replicate adds an
independent uniform vector modulo 1 to the same deterministic point set,
giving an unbiased estimator whose replicate spread yields a standard
error.  Everything is seeded and accumulation order is fixed, so results
are bit-identical for a given (f, m, points, replicates, seed) regardless
of how many worker threads evaluate the replicates.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EvaluationError

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)
MAX_DIMS = len(_PRIMES)

_BOUNDARY_GAP = 1e-15  # evaluation points stay at least this far from 0 and 1


@dataclass(frozen=True)
class QmcResult:
    estimate: complex
    std_err: float
    points: int
    replicates: int
    seed: int

    def __post_init__(self) -> None:
        if self.std_err < 0.0:
            raise ValueError("std_err must be nonnegative")
        if self.replicates < 2:
            raise DomainError("need at least 2 replicates for a standard error")


def _radical_inverse(indices: np.ndarray, base: int) -> np.ndarray:
    result = np.zeros(len(indices))
    factor = 1.0 / base
    n = indices.copy()
    while np.any(n > 0):
        result += factor * (n % base)
        n //= base
        factor /= base
    return result


def halton_point(index: int, dims: int) -> tuple[float, ...]:
    """Coordinates of one Halton point, index offset by 1 so none are 0."""
    if index < 0:
        raise DomainError("index must be nonnegative")
    if not 1 <= dims <= MAX_DIMS:
        raise DomainError(f"dims must lie in [1, {MAX_DIMS}], got {dims}")
    idx = np.array([index + 1], dtype=np.int64)
    return tuple(float(_radical_inverse(idx, b)[0]) for b in _PRIMES[:dims])


def _halton_array(n: int, dims: int) -> np.ndarray:
    idx = np.arange(1, n + 1, dtype=np.int64)
    return np.column_stack([_radical_inverse(idx, b) for b in _PRIMES[:dims]])


def qmc_estimate(
    f,
    m: int,
    points: int = 65536,
    replicates: int = 8,
    seed: int = 1,
    threads: int = 1,
) -> QmcResult:
    """Shifted-Halton estimate of integral of f over (0,1)^m.

    ``f`` receives an (n, m) array of points strictly inside the cube and
    must return an (n,) array (real or complex).  The estimate is the mean
    of the replicate means; std_err is their sample standard deviation over
    sqrt(replicates).
    """
    if not 1 <= m <= MAX_DIMS:
        raise DomainError(f"m must lie in [1, {MAX_DIMS}], got {m}")
    if points < 1:
        raise DomainError("points must be positive")
    if replicates < 2:
        raise DomainError("need at least 2 replicates for a standard error")
    if threads < 1:
        raise DomainError("threads must be positive")

    base = _halton_array(points, m)
    shifts = np.random.default_rng(seed).random((replicates, m))

    def one_replicate(r: int) -> complex:
        pts = (base + shifts[r]) % 1.0
        np.clip(pts, _BOUNDARY_GAP, 1.0 - _BOUNDARY_GAP, out=pts)
        vals = np.asarray(f(pts))
        if vals.shape != (points,):
            raise EvaluationError(
                f"integrand returned shape {vals.shape}, expected ({points},)"
            )
        if not np.all(np.isfinite(vals.real)) or (
            np.iscomplexobj(vals) and not np.all(np.isfinite(vals.imag))
        ):
            raise EvaluationError("integrand returned a non-finite value")
        return complex(vals.mean())

    if threads == 1:
        means = [one_replicate(r) for r in range(replicates)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            means = list(pool.map(one_replicate, range(replicates)))

    arr = np.array(means, dtype=complex)
    estimate = complex(arr.mean())
    var = float(np.sum(np.abs(arr - estimate) ** 2)) / (replicates - 1)
    std_err = math.sqrt(var / replicates)
    return QmcResult(estimate, std_err, points, replicates, seed)
