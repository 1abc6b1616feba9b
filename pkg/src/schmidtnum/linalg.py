"""Dense complex linear algebra for bipartite operators.

Everything in this package lives on C^d (x) C^d with the product basis
ordered as |ij> = i*d + j (subsystem A is the leading factor).  Operators
are small (the design envelope is d <= 16, i.e. matrices up to 256x256),
so dense numpy arrays are used throughout.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

# Tolerances for double-precision arithmetic on small, well-conditioned
# matrices.
HERM_TOL = 1e-9
EIG_RECON_TOL = 1e-8
PSD_TOL = 1e-10


def _as_square(M, name: str = "matrix") -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValidationError(f"{name} must be square, got shape {M.shape}")
    return M


def hermiticity_residue(M: np.ndarray) -> float:
    """max |M[i,j] - conj(M[j,i])| over all entries."""
    return float(np.max(np.abs(M - M.conj().T)))


@dataclass(frozen=True, eq=False)
class BipartiteOperator:
    """Hermitian operator on C^d (x) C^d.

    Parameters
    ----------
    matrix : ndarray
        Dense complex matrix of size d^2 x d^2, Hermitian within 1e-9.
    local_dim : int
        The local dimension d.
    normalized : bool
        True when the operator is a trace-one state; several families here
        (isotropic states, subset mixtures) are deliberately unnormalized.
    """

    matrix: np.ndarray
    local_dim: int
    normalized: bool = False

    def __post_init__(self):
        M = _as_square(self.matrix)
        d = int(self.local_dim)
        if d < 2:
            raise ValidationError(f"local_dim must be >= 2, got {d}")
        if M.shape[0] != d * d:
            raise ValidationError(
                f"matrix dimension {M.shape[0]} is not local_dim^2 = {d * d}"
            )
        res = hermiticity_residue(M)
        if res > HERM_TOL:
            raise ValidationError(
                f"matrix is not Hermitian: residue {res:.3e} > {HERM_TOL:.0e}"
            )
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "local_dim", d)

    @classmethod
    def from_matrix(cls, matrix, local_dim: int | None = None,
                    normalized: bool | None = None) -> "BipartiteOperator":
        """Wrap a matrix, inferring d and the normalization flag if omitted."""
        M = _as_square(matrix)
        if local_dim is None:
            local_dim = math.isqrt(M.shape[0])
            if local_dim * local_dim != M.shape[0]:
                raise ValidationError(
                    f"matrix dimension {M.shape[0]} is not a perfect square"
                )
        if normalized is None:
            normalized = bool(abs(np.trace(M).real - 1.0) <= HERM_TOL)
        return cls(M, local_dim, normalized)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)


def kron(A, B) -> np.ndarray:
    """Kronecker product of two square matrices."""
    return np.kron(_as_square(A, "A"), _as_square(B, "B"))


def partial_transpose(M: BipartiteOperator) -> BipartiteOperator:
    """Transpose the second tensor factor: <ij|M'|kl> = <il|M|kj>."""
    d = M.local_dim
    Mt = M.matrix.reshape(d, d, d, d).transpose(0, 3, 2, 1).reshape(d * d, d * d)
    return BipartiteOperator(Mt, d, M.normalized)


def partial_trace(M: BipartiteOperator, traced_out: str = "B") -> np.ndarray:
    """Trace out one subsystem, returning the d x d marginal of the other.

    ``traced_out="B"`` gives the A-marginal (sum over the second index),
    ``traced_out="A"`` the B-marginal.
    """
    d = M.local_dim
    R = M.matrix.reshape(d, d, d, d)
    if traced_out == "B":
        return np.einsum("ijkj->ik", R)
    if traced_out == "A":
        return np.einsum("ijil->jl", R)
    raise ValidationError(f"traced_out must be 'A' or 'B', got {traced_out!r}")


def hermitian_eigensystem(M) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (eigenvalues, eigenvectors) with eigenvalues ascending and
    eigenvectors as orthonormal columns.  Rejects non-Hermitian input.
    """
    M = _as_square(M)
    res = hermiticity_residue(M)
    if res > HERM_TOL:
        raise ValidationError(
            f"eigensystem requires Hermitian input: residue {res:.3e}"
        )
    w, V = np.linalg.eigh(M)
    return w, V


def is_psd(M, tol: float = PSD_TOL) -> bool:
    """True iff the Hermitian matrix M has min eigenvalue >= -tol."""
    w, _ = hermitian_eigensystem(M)
    return bool(w[0] >= -tol)
