"""Schmidt witnesses: canonical family, filtered variants, and evaluation.

A class-k witness is Hermitian, nonnegative on every state of Schmidt
number <= k, and negative somewhere on a state of higher Schmidt number.
Witnesses here are indexed by that largest safe class k.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericsError, ValidationError
from .linalg import BipartiteOperator
from .states import local_filter, max_entangled

# Witness values on Hermitian states are real; an imaginary residue above
# this aborts with a numerical-integrity error.
IMAG_TOL = 1e-8
# Input coefficient lists must be normalized within this tolerance.
INPUT_NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Witness:
    """Hermitian operator tagged with its Schmidt class k.

    ``degenerate`` marks witnesses that collapsed to (numerically) zero
    under filtering; they are valid operators but detect nothing.
    """

    op: BipartiteOperator
    schmidt_class: int
    degenerate: bool = False

    def __post_init__(self):
        k = int(self.schmidt_class)
        if not 1 <= k < self.op.local_dim:
            raise ValidationError(
                f"schmidt_class must satisfy 1 <= k < d={self.op.local_dim}, got {k}"
            )
        object.__setattr__(self, "schmidt_class", k)

    @property
    def trace(self) -> float:
        return self.op.trace


def canonical_witness(d: int, k: int) -> Witness:
    """The witness 1 - (d/k) P+ of Schmidt class k, trace d^2 - d/k.

    Nonnegative on all Schmidt-number-<= k states (their overlap with P+
    is at most k/d) and optimal for the isotropic family: its value on
    1 + beta*P+ changes sign exactly at beta = d(dk-1)/(d-k).
    """
    if not 1 <= k < d:
        raise ValidationError(f"need 1 <= k < d, got k={k}, d={d}")
    M = np.eye(d * d, dtype=complex) - (d / k) * max_entangled(d).matrix
    return Witness(BipartiteOperator(M, d, normalized=False), k)


def filter_witness(W: Witness, A, B) -> Witness:
    """Locally filtered witness (A (x) B) W (A (x) B)^dagger, same class."""
    filtered = local_filter(W.op, A, B)
    degenerate = bool(np.max(np.abs(filtered.matrix)) < 1e-14)
    return Witness(filtered, W.schmidt_class, degenerate=degenerate)


def diag_filtered_witness(a, n: int) -> Witness:
    """Class-n witness from diagonal filtering with coefficients a.

    Returns sum_{ij} a_i a_j |ij><ij| - (1/n) |psi_a><psi_a| where
    |psi_a> = sum_i a_i |ii>; the trace is (sum a_i)^2 - 1/n.
    """
    a = np.asarray(a, dtype=float)
    d = a.size
    if np.any(a < 0):
        raise ValidationError("coefficients must be nonnegative")
    dev = abs(float(np.sum(a * a)) - 1.0)
    if dev > INPUT_NORM_TOL:
        raise ValidationError(
            f"coefficients must be normalized: sum a_i^2 deviates by {dev:.3e}"
        )
    if not 1 <= n < d:
        raise ValidationError(f"need 1 <= n < d, got n={n}, d={d}")
    weights = np.outer(a, a).ravel()
    psi = np.zeros(d * d, dtype=complex)
    psi[:: d + 1] = a
    M = np.diag(weights).astype(complex) - np.outer(psi, psi.conj()) / n
    return Witness(BipartiteOperator(M, d, normalized=False), n)


def witness_value(W: Witness, rho: BipartiteOperator) -> float:
    """Tr(W rho), checked to be real within the integrity tolerance."""
    if W.op.local_dim != rho.local_dim:
        raise ValidationError(
            f"dimension mismatch: witness d={W.op.local_dim}, state d={rho.local_dim}"
        )
    t = complex(np.trace(W.op.matrix @ rho.matrix))
    if abs(t.imag) > IMAG_TOL:
        raise NumericsError(
            f"witness value has imaginary residue {t.imag:.3e} > {IMAG_TOL:.0e}"
        )
    return float(t.real)


def normalized_witness_value_on_pure(a, b, n: int) -> float:
    """Closed-form value of the trace-normalized diagonal filtered witness.

    For the class-n witness built from coefficients a, evaluated on the
    pure state with Schmidt coefficients b (both normalized, same length):

        (n sum a_i^2 b_i^2 - (sum a_i b_i)^2) / (n (sum a_i)^2 - 1)
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValidationError("a and b must be 1-d arrays of equal length")
    if np.any(a < 0) or np.any(b < 0):
        raise ValidationError("coefficients must be nonnegative")
    for name, v in (("a", a), ("b", b)):
        dev = abs(float(np.sum(v * v)) - 1.0)
        if dev > INPUT_NORM_TOL:
            raise ValidationError(
                f"{name} must be normalized: sum {name}_i^2 deviates by {dev:.3e}"
            )
    if not 1 <= n < a.size:
        raise ValidationError(f"need 1 <= n < d, got n={n}, d={a.size}")
    denom = n * float(np.sum(a)) ** 2 - 1.0
    if denom <= 1e-12:
        raise ValidationError(
            "degenerate witness: n (sum a_i)^2 - 1 is not positive"
        )
    num = n * float(np.sum(a * a * b * b)) - float(np.sum(a * b)) ** 2
    return num / denom
