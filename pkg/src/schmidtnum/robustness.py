"""Closed-form robustness values and Schmidt-robustness bounds.

Conventions
-----------
All random-robustness quantities (R_r, R_rn) follow the unnormalized-
identity convention: the mixing operator is the bare identity 1, not the
maximally mixed state 1/d^2.  Multiplying by d^2 converts to the
normalized convention; the command-line layer exposes a flag for that.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NumericsError, ValidationError
from .states import PureState

_MEASURES = ("R_s", "R_g", "R_r", "R_gn", "R_rn", "ball_radius")
_KINDS = ("exact", "lower", "upper", "conjectured")


@dataclass(frozen=True)
class BoundReport:
    """A robustness value tagged with its measure and bound kind.

    ``raw_value`` retains the unclamped value when a lower bound was
    clamped at zero.
    """

    measure: str
    kind: str
    value: float
    params: dict
    raw_value: float | None = None

    def __post_init__(self):
        if self.measure not in _MEASURES:
            raise ValidationError(f"unknown measure {self.measure!r}")
        if self.kind not in _KINDS:
            raise ValidationError(f"unknown bound kind {self.kind!r}")
        if self.value < 0:
            raise ValidationError("reported bound values are nonnegative")


def robustness_pure(psi: PureState) -> BoundReport:
    """Exact robustness of a pure state: R_s = R_g = (sum a_i)^2 - 1.

    The robustness with respect to separable states coincides with the
    generalised robustness for pure states.
    """
    value = psi.coeff_sum ** 2 - 1.0
    return BoundReport("R_s", "exact", max(value, 0.0),
                       {"d": psi.local_dim})


def random_robustness_pure(psi: PureState) -> BoundReport:
    """Exact random robustness R_r = a_1 a_2 (unnormalized identity)."""
    a = psi.coeffs
    return BoundReport("R_r", "exact", float(a[0] * a[1]),
                       {"d": psi.local_dim})


def gen_schmidt_bounds(psi: PureState, n: int
                       ) -> tuple[BoundReport, BoundReport]:
    """Lower and upper bounds on the generalised Schmidt robustness R_gn.

    lower = max(0, (sum a_i)^2 / n - 1), upper = R_g (d-n)/((d-1) n).
    The raw (possibly negative) lower bound is retained in the report.
    """
    d = psi.local_dim
    if not 1 <= n <= d:
        raise ValidationError(f"need 1 <= n <= d, got n={n}, d={d}")
    r_g = psi.coeff_sum ** 2 - 1.0
    raw_lower = psi.coeff_sum ** 2 / n - 1.0
    params = {"d": d, "n": n}
    lower = BoundReport("R_gn", "lower", max(0.0, raw_lower), params,
                        raw_value=raw_lower)
    upper = BoundReport("R_gn", "upper", r_g * (d - n) / ((d - 1) * n), params)
    return lower, upper


def gen_schmidt_robustness_maxent(d: int, n: int) -> BoundReport:
    """Exact generalised Schmidt robustness of P+: R_gn = (d-n)/n."""
    if not 1 <= n <= d:
        raise ValidationError(f"need 1 <= n <= d, got n={n}, d={d}")
    return BoundReport("R_gn", "exact", (d - n) / n, {"d": d, "n": n})


def random_schmidt_robustness_maxent(d: int, n: int) -> BoundReport:
    """Exact random Schmidt robustness of P+: R_rn = (d-n)/(d(nd-1))."""
    if not 1 <= n <= d:
        raise ValidationError(f"need 1 <= n <= d, got n={n}, d={d}")
    return BoundReport("R_rn", "exact", (d - n) / (d * (n * d - 1)),
                       {"d": d, "n": n})


def random_schmidt_upper_weak(d: int, n: int) -> BoundReport:
    """Dimension-only upper bound R_rn <= (d-n)/(nd-1), valid for every
    pure state of local dimension d."""
    if not 1 <= n < d:
        raise ValidationError(f"need 1 <= n < d, got n={n}, d={d}")
    return BoundReport("R_rn", "upper", (d - n) / (n * d - 1), {"d": d, "n": n})


def random_schmidt_upper(psi: PureState, n: int) -> BoundReport:
    """State-dependent upper bound R_rn <= a_1 a_2 (d-n)/(dn-1).

    Clamped to 0 when the Schmidt rank is at most n (the state is already
    in S_n, so its random Schmidt robustness vanishes).  Tight at P+.
    """
    d = psi.local_dim
    if not 1 <= n < d:
        raise ValidationError(f"need 1 <= n < d, got n={n}, d={d}")
    a = psi.coeffs
    value = float(a[0] * a[1]) * (d - n) / (d * n - 1)
    if psi.schmidt_rank <= n:
        value = 0.0
    return BoundReport("R_rn", "upper", value, {"d": d, "n": n})


def conjectured_ball_radius(k: int, d_max: int | None = None
                            ) -> tuple[BoundReport, int]:
    """Conjectured Schmidt-ball radius: the largest beta such that
    1 + beta*rho keeps Schmidt number <= k for every normalized rho.

    Scans integer d' in (k, d_max] for the smallest isotropic threshold
    d'(kd'-1)/(d'-k); the scan is exact (rational arithmetic).  The
    minimum sits at d' = 2k with value 2(2k^2 - 1).  The result is a
    conjecture, not a theorem; it is tagged accordingly.
    """
    if k < 1:
        raise ValidationError(f"k must be >= 1, got {k}")
    if d_max is None:
        d_max = 4 * k
    if d_max <= k:
        raise ValidationError(f"d_max must exceed k, got d_max={d_max}, k={k}")
    best_val: Fraction | None = None
    best_dp = 0
    for dp in range(k + 1, d_max + 1):
        val = Fraction(dp * (k * dp - 1), dp - k)
        if best_val is None or val < best_val:
            best_val, best_dp = val, dp
    if d_max >= 2 * k:
        expected = 2 * (2 * k * k - 1)
        if best_val != expected or best_dp != 2 * k:
            raise NumericsError(
                f"ball-radius scan returned {best_val} at d'={best_dp}, "
                f"expected {expected} at d'={2 * k}"
            )
    report = BoundReport(
        "ball_radius", "conjectured", float(best_val),
        {"k": k, "d_max": d_max, "optimal_dprime": best_dp},
    )
    return report, best_dp
