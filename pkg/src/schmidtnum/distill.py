"""Partial-transpose distillability screen and the reduction criterion.

A state rho is distillable whenever rho^{T_B} has an eigenvalue lambda
with lambda < -R_r2(psi), where psi is the corresponding eigenvector and
R_r2 its random Schmidt-2 robustness.  R_r2 is not known exactly for
general pure states, so the screen substitutes an upper bound; any valid
upper bound keeps the implication sound.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import BipartiteOperator, hermitian_eigensystem, is_psd, partial_trace, partial_transpose
from .states import PureState, schmidt_decompose

STATE_TOL = 1e-9
REDUCTION_PSD_TOL = 1e-10
# Margin on the strict inequality lambda < -bound.
VERDICT_TOL = 1e-12
# Eigenvalues within this of the minimum count as degenerate with it.
DEGENERACY_TOL = 1e-10

BOUND_CHOICES = ("theorem5", "weak", "conjecture1")
# The conjecture1 mode rests on the unproven ball-radius value 2(2k^2-1)
# at k = 2; certificates using it are stamped conjectural.
CONJECTURED_R2 = 1.0 / 14.0


@dataclass(frozen=True, eq=False)
class DistillCertificate:
    """Outcome of the partial-transpose distillability screen."""

    lambda_min: float
    eigvec_schmidt: PureState
    r2_bound: float
    bound_choice: str
    conjectural: bool
    verdict: str  # "distillable" | "inconclusive"


def _require_state(rho: BipartiteOperator) -> None:
    if abs(rho.trace - 1.0) > STATE_TOL:
        raise ValidationError(
            f"input must be normalized: trace {rho.trace} deviates from 1"
        )
    if not is_psd(rho.matrix, tol=STATE_TOL):
        raise ValidationError("input must be positive semidefinite")


def npt_spectrum(rho: BipartiteOperator) -> tuple[np.ndarray, np.ndarray]:
    """Full eigensystem of rho^{T_B}, eigenvalues ascending.

    Requires a normalized PSD input; negative eigenvalues of the partial
    transpose certify entanglement.
    """
    _require_state(rho)
    return hermitian_eigensystem(partial_transpose(rho).matrix)


def _r2_upper_bound(psi: PureState, d: int, choice: str) -> tuple[float, bool]:
    """Upper bound on R_r2 of the eigenvector, and whether it is conjectural."""
    if psi.schmidt_rank <= 2:
        # Already in S_2: the exact value is 0, whatever the mode.
        return 0.0, False
    if choice == "theorem5":
        a = psi.coeffs
        return float(a[0] * a[1]) * (d - 2) / (2 * d - 1), False
    if choice == "weak":
        return (d - 2) / (2 * d - 1), False
    return CONJECTURED_R2, True


def distillability_check(rho: BipartiteOperator,
                         bound_choice: str = "theorem5") -> DistillCertificate:
    """Screen rho for distillability via its most negative T_B eigenvalue.

    ``bound_choice`` selects the substitute for R_r2(psi):
      * "theorem5"   - a1 a2 (d-2)/(2d-1) from the eigenvector's own
                       Schmidt coefficients (tightest of the three);
      * "weak"       - the dimension-only bound (d-2)/(2d-1);
      * "conjecture1"- the constant 1/14, valid only if the conjectured
                       Schmidt-ball radius holds; stamped conjectural.

    When the minimal eigenvalue is degenerate, every eigenvector returned
    for that eigenspace is tried and the smallest bound wins.  A state with
    no negative eigenvalue comes back "inconclusive" with lambda_min
    recorded.
    """
    if bound_choice not in BOUND_CHOICES:
        raise ValidationError(
            f"bound_choice must be one of {BOUND_CHOICES}, got {bound_choice!r}"
        )
    d = rho.local_dim
    w, V = npt_spectrum(rho)
    lam = float(w[0])
    best: tuple[float, bool, PureState] | None = None
    for i in np.flatnonzero(w - w[0] <= DEGENERACY_TOL):
        psi, _, _ = schmidt_decompose(V[:, i])
        bound, conjectural = _r2_upper_bound(psi, d, bound_choice)
        if best is None or bound < best[0]:
            best = (bound, conjectural, psi)
    r2_bound, conjectural, psi = best
    verdict = "distillable" if lam < -r2_bound - VERDICT_TOL else "inconclusive"
    return DistillCertificate(lam, psi, r2_bound, bound_choice,
                              conjectural, verdict)


def reduction_criterion(rho: BipartiteOperator) -> str:
    """Reduction criterion: "distillable" when 1 (x) rho_B - rho or
    rho_A (x) 1 - rho fails to be PSD, else "not-detected"."""
    _require_state(rho)
    d = rho.local_dim
    eye = np.eye(d)
    rho_a = partial_trace(rho, "B")
    rho_b = partial_trace(rho, "A")
    for op in (np.kron(eye, rho_b) - rho.matrix,
               np.kron(rho_a, eye) - rho.matrix):
        if not is_psd(op, tol=REDUCTION_PSD_TOL):
            return "distillable"
    return "not-detected"


def example_state() -> BipartiteOperator:
    """Built-in 3x3 example: an NPT state missed by the reduction criterion.

    Its partial transpose has the non-degenerate minimal eigenvalue -1/8
    with eigenvector (|00> + |11> - |22>)/sqrt(3), so the screen certifies
    distillability (bound 1/15 < 1/8) while both reduction operators stay
    PSD.
    """
    M = np.zeros((9, 9))
    np.fill_diagonal(M, [1, 2, 2, 2, 1, 2, 2, 2, 2])
    M[1, 3] = M[3, 1] = -1
    M[2, 6] = M[6, 2] = 2
    M[5, 7] = M[7, 5] = 2
    return BipartiteOperator(M.astype(complex) / 16, 3, normalized=True)
