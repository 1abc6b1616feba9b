"""Finite twirl verification for the subset-mixture construction.

The pipeline takes the uniform subset mixture (proportional to
Z + [d(n-1)/(d-n)] P+), conjugates by the QFT pair T (x) T*, and applies a
finite phase-mixing twirl of 2d diagonal unitaries that cancels all
off-pattern matrix entries.  The survivor is proportional to the boundary
state rho(beta_n) with beta_n = (d-n)/n, which certifies that states on
the Schmidt-number-n boundary of the isotropic family are reachable by
mixing Schmidt-rank-n pure states.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import BipartiteOperator, _as_square, kron
from .states import PureState, max_entangled, rho_g, subset_mixture, z_operator

UNITARY_TOL = 1e-9
# Projective comparisons (M/Tr M against target/Tr target) pass below this.
PROPORTIONALITY_TOL = 1e-9


def qft_matrix(d: int) -> np.ndarray:
    """Quantum Fourier transform T[j,k] = exp(2 pi i jk/d)/sqrt(d)."""
    if d < 2:
        raise ValidationError(f"d must be >= 2, got {d}")
    j = np.arange(d)
    return np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def uu_star_conjugate(M: BipartiteOperator, U) -> BipartiteOperator:
    """Conjugate by U (x) U*: the twirl step (U (x) U*) M (U (x) U*)^dagger.

    Trace and spectrum are preserved; P+ is a fixed point for every
    unitary U.
    """
    d = M.local_dim
    U = _as_square(U, "U")
    if U.shape[0] != d:
        raise ValidationError(f"U must be {d}x{d}, got {U.shape}")
    res = float(np.max(np.abs(U.conj().T @ U - np.eye(d))))
    if res > UNITARY_TOL:
        raise ValidationError(f"U is not unitary: residue {res:.3e}")
    W = kron(U, U.conj())
    return BipartiteOperator(W @ M.matrix @ W.conj().T, d, M.normalized)


def phase_mixing_pipeline(M: BipartiteOperator) -> BipartiteOperator:
    """Sequential phase-mixing twirl with 2d diagonal unitaries.

    For each l = 0..d-1, first with U|k> = exp(i pi delta_{kl})|k> and then
    with U|k> = exp(i pi delta_{kl}/2)|k>, replace K by the equal mixture
    (1/2)(U (x) U*) K (U (x) U*)^dagger + (1/2) K, each step feeding the
    next.  The composite kills every matrix entry outside the
    |ii><jj| / |ij><ij| pattern and leaves on-pattern entries untouched.
    """
    d = M.local_dim
    K = M.matrix
    for phase in (np.pi, np.pi / 2):
        for l in range(d):
            u = np.ones(d, dtype=complex)
            u[l] = np.exp(1j * phase)
            # (U (x) U*) K (U (x) U*)^dagger for diagonal U is an entrywise
            # phase mask: K[p,q] *= w[p] * conj(w[q]) with w = u (x) u*.
            w = np.outer(u, u.conj()).ravel()
            K = 0.5 * (np.outer(w, w.conj()) * K) + 0.5 * K
    return BipartiteOperator(K, d, M.normalized)


@dataclass(frozen=True)
class TwirlVerification:
    """Residue report for one (d, n) run of the construction pipeline.

    ``ok`` is True only when every residue is below the proportionality
    tolerance; a failed run returns the full mismatch detail rather than
    raising.
    """

    d: int
    n: int
    beta_n: float
    ok: bool
    tolerance: float
    residues: dict


def _projective_residue(A: np.ndarray, B: np.ndarray) -> float:
    """Max-norm distance between A/Tr(A) and B/Tr(B)."""
    ta, tb = np.trace(A).real, np.trace(B).real
    if abs(ta) < 1e-300 or abs(tb) < 1e-300:
        return float("inf")
    return float(np.max(np.abs(A / ta - B / tb)))


def verify_construction(d: int, n: int) -> TwirlVerification:
    """Run the full subset-mixture -> QFT -> phase-mixing pipeline.

    Checks, projectively and in max-norm:
      * the uniform subset mixture against Z + [d(n-1)/(d-n)] P+;
      * the twirled output against 1 - Z + [dn(d-1)/(d-n)] P+;
      * the same output against (beta_n rho_g + P+)/(1 + beta_n) built
        from the state constructors, with beta_n = (d-n)/n.
    Also records how far the mixing output strays from the literal
    conjugated input on the surviving entry pattern.
    """
    if not 2 <= n < d:
        raise ValidationError(f"need 2 <= n < d, got n={n}, d={d}")
    P = max_entangled(d).matrix
    Z = z_operator(d).matrix
    eye = np.eye(d * d)

    mixture = subset_mixture(d, n)
    K = Z + d * (n - 1) / (d - n) * P
    subset_residue = _projective_residue(mixture.matrix, K)

    T = qft_matrix(d)
    Kp = d * uu_star_conjugate(
        BipartiteOperator(K, d, normalized=False), T
    ).matrix
    Kpp = phase_mixing_pipeline(
        BipartiteOperator(Kp, d, normalized=False)
    ).matrix

    target = eye - Z + d * n * (d - 1) / (d - n) * P
    final_residue = _projective_residue(Kpp, target)

    beta_n = (d - n) / n
    rho_sep = rho_g(PureState.maximally_entangled(d)).matrix
    rho_form = (beta_n * rho_sep + P) / (1.0 + beta_n)
    rho_residue = _projective_residue(Kpp, rho_form)

    # The mixing must not touch surviving |ii><jj| / |ij><ij| entries.
    diag_idx = np.arange(d) * (d + 1)
    pattern = np.zeros((d * d, d * d), dtype=bool)
    np.fill_diagonal(pattern, True)
    pattern[np.ix_(diag_idx, diag_idx)] = True
    preserved_residue = float(np.max(np.abs((Kpp - Kp)[pattern])))
    offpattern_residue = float(np.max(np.abs(Kpp[~pattern])))

    residues = {
        "subset_vs_closed_form": subset_residue,
        "final_vs_closed_form": final_residue,
        "final_vs_rho_form": rho_residue,
        "pattern_entries_preserved": preserved_residue,
        "offpattern_after_mixing": offpattern_residue,
    }
    ok = all(r <= PROPORTIONALITY_TOL for r in residues.values())
    return TwirlVerification(d, n, beta_n, ok, PROPORTIONALITY_TOL, residues)
