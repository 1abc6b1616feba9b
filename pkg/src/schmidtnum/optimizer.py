"""Witness-based lower bounds on the random Schmidt robustness R_rn.

Every class-n witness that a pure state psi_b violates yields a lower
bound on R_rn(psi_b).  Restricting to diagonally filtered witnesses built
from a Schmidt coefficient vector a gives the rational objective

    f(a) = -(n sum a_i^2 b_i^2 - (sum a_i b_i)^2) / (n (sum a_i)^2 - 1),

and maximizing f over the nonnegative unit sphere produces the best such
bound (unnormalized-identity convention; no d^2 prefactor).  The search
is a multistart Nelder-Mead simplex on the unconstrained parametrization
a = |x| / ||x||.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import ValidationError

INPUT_NORM_TOL = 1e-10
# Denominator n (sum a_i)^2 - 1 must stay positive; below this the witness
# normalization degenerates (only reachable at product-state corners with
# n = 1).
DENOM_TOL = 1e-12


@dataclass(frozen=True)
class OptimizerConfig:
    """Search settings: restart count, RNG seed, and per-restart stopping."""

    restarts: int = 32
    seed: int = 0
    max_evals: int = 5000
    diameter_tol: float = 1e-10

    def __post_init__(self):
        if self.restarts < 1:
            raise ValidationError("restarts must be >= 1")
        if self.max_evals < 1:
            raise ValidationError("max_evals must be >= 1")


@dataclass(frozen=True, eq=False)
class OptimizationResult:
    """Best point found by the multistart search.

    ``best_value`` equals ``rrn_objective(best_a, b, n)`` unless
    ``clamped`` is set, in which case every probed value was negative and
    the vacuous bound 0 is reported instead.
    """

    best_a: np.ndarray
    best_value: float
    restarts_run: int
    converged: bool
    objective_evals: int
    clamped: bool = False


def _check_coeffs(v, name: str) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size < 2:
        raise ValidationError(f"{name} must be a 1-d list of length >= 2")
    if np.any(v < 0):
        raise ValidationError(f"{name} must be nonnegative")
    dev = abs(float(np.sum(v * v)) - 1.0)
    if dev > INPUT_NORM_TOL:
        raise ValidationError(
            f"{name} must be normalized: sum {name}_i^2 deviates by {dev:.3e}"
        )
    return v


def rrn_objective(a, b, n: int) -> float:
    """Lower bound on R_rn(psi_b) from the witness with coefficients a.

    Both vectors must be normalized, nonnegative, and of the same length
    d > n.  Positive values are genuine bounds; nonpositive values mean
    the witness does not detect psi_b.
    """
    a = _check_coeffs(a, "a")
    b = _check_coeffs(b, "b")
    if a.size != b.size:
        raise ValidationError("a and b must have the same length")
    if not 1 <= n < a.size:
        raise ValidationError(f"need 1 <= n < d, got n={n}, d={a.size}")
    denom = n * float(np.sum(a)) ** 2 - 1.0
    if denom <= DENOM_TOL:
        raise ValidationError(
            "degenerate witness normalization: n (sum a_i)^2 - 1 is not positive"
        )
    num = n * float(np.sum(a * a * b * b)) - float(np.sum(a * b)) ** 2
    return -num / denom


def _objective_on_sphere(x: np.ndarray, b: np.ndarray, n: int) -> float:
    """Negated objective on the unconstrained parametrization (for minimize);
    degenerate points are penalized instead of raising."""
    a = np.abs(x)
    nrm = np.linalg.norm(a)
    if nrm < 1e-12:
        return np.inf
    a = a / nrm
    denom = n * a.sum() ** 2 - 1.0
    if denom <= DENOM_TOL:
        return np.inf
    num = n * np.sum(a * a * b * b) - np.sum(a * b) ** 2
    return num / denom


def maximize_rrn_lower_bound(b, n: int,
                             config: OptimizerConfig | None = None
                             ) -> OptimizationResult:
    """Multistart Nelder-Mead maximization of rrn_objective over a.

    Seeds are (i) b itself, (ii) the uniform vector, (iii) pseudo-random
    nonnegative unit vectors from a generator seeded with config.seed, so
    the same seed always reproduces the same result and adding restarts
    only extends the seed stream.  Ties go to the earliest restart.
    """
    if config is None:
        config = OptimizerConfig()
    b = _check_coeffs(b, "b")
    d = b.size
    if not 1 <= n < d:
        raise ValidationError(f"need 1 <= n < d, got n={n}, d={d}")

    rng = np.random.default_rng(config.seed)
    seeds = [b.copy(), np.full(d, 1.0 / math.sqrt(d))]
    while len(seeds) < config.restarts:
        x = np.abs(rng.normal(size=d))
        seeds.append(x / np.linalg.norm(x))
    seeds = seeds[: config.restarts]

    best_val = -np.inf
    best_a = seeds[0]
    best_converged = False
    evals = 0
    for x0 in seeds:
        res = minimize(
            _objective_on_sphere, x0, args=(b, n), method="Nelder-Mead",
            options={
                "xatol": config.diameter_tol,
                "fatol": np.inf,  # stop on simplex diameter alone
                "maxfev": config.max_evals,
            },
        )
        evals += int(res.nfev)
        val = -float(res.fun)
        if val > best_val:
            best_val = val
            a = np.abs(np.asarray(res.x, dtype=float))
            best_a = a / np.linalg.norm(a)
            best_converged = bool(res.success)

    clamped = best_val < 0.0
    if clamped:
        best_val = 0.0
    return OptimizationResult(
        best_a=best_a,
        best_value=best_val,
        restarts_run=len(seeds),
        converged=best_converged,
        objective_evals=evals,
        clamped=clamped,
    )


def reference_fit(a1sq: float) -> float:
    """Empirical reference curve 0.15 a1^0.85 (1 - a1^2)^0.85 for the
    d=3, n=2 leading-coefficient sweep."""
    a1 = math.sqrt(a1sq)
    return 0.15 * a1 ** 0.85 * (1.0 - a1sq) ** 0.85


@dataclass(frozen=True, eq=False)
class SweepPoint:
    """One row of the leading-coefficient sweep."""

    a1sq: float
    bound: float
    fit: float
    best_a: tuple


def sweep_leading_coefficient(n: int = 2, grid=None,
                              config: OptimizerConfig | None = None,
                              d: int = 3) -> list[SweepPoint]:
    """Lower bounds along the family b = (a1, a2, ..., a2) in dimension d.

    For each a1^2 in ``grid`` (values strictly inside (0, 1)), the tail
    coefficients are a2 = sqrt((1 - a1^2)/(d - 1)) and the optimizer is
    run for Schmidt level n.  Each row also carries the d=3 reference fit
    for comparison.
    """
    if grid is None:
        grid = [i / 20 for i in range(1, 20)]
    if config is None:
        config = OptimizerConfig()
    if not 1 <= n < d:
        raise ValidationError(f"need 1 <= n < d, got n={n}, d={d}")
    rows = []
    for a1sq in grid:
        a1sq = float(a1sq)
        if not 0.0 < a1sq < 1.0:
            raise ValidationError(f"grid values must lie in (0, 1), got {a1sq}")
        a1 = math.sqrt(a1sq)
        a2 = math.sqrt((1.0 - a1sq) / (d - 1))
        b = np.full(d, a2)
        b[0] = a1
        result = maximize_rrn_lower_bound(b / np.linalg.norm(b), n, config)
        rows.append(SweepPoint(
            a1sq=a1sq,
            bound=result.best_value,
            fit=reference_fit(a1sq),
            best_a=tuple(float(x) for x in result.best_a),
        ))
    return rows
