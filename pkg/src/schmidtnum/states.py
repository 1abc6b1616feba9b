"""State families: Schmidt decomposition, P+, Z, isotropic states, rho_g,
local filtering, subset mixtures, and random-state sampling.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .linalg import BipartiteOperator, _as_square, kron

# Singular values above this threshold count toward the Schmidt rank
# (double-precision SVD noise floor on unit vectors).
RANK_TOL = 1e-9
# Tolerance on sum(a_i^2) = 1 for stored Schmidt coefficient vectors.
COEFF_NORM_TOL = 1e-12
# Tolerance on the norm of raw input vectors.
VEC_NORM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class PureState:
    """Ordered Schmidt coefficient vector of a bipartite pure state.

    Coefficients are nonnegative, sorted descending, zero-padded to length
    ``local_dim``, and satisfy sum(a_i^2) = 1 within 1e-12.
    """

    coeffs: np.ndarray
    local_dim: int

    def __post_init__(self):
        a = np.asarray(self.coeffs, dtype=float)
        d = int(self.local_dim)
        if a.ndim != 1 or a.size != d:
            raise ValidationError(
                f"coefficient vector must have length local_dim={d}, got {a.size}"
            )
        if d < 2:
            raise ValidationError(f"local_dim must be >= 2, got {d}")
        if np.any(a < -COEFF_NORM_TOL):
            raise ValidationError("Schmidt coefficients must be nonnegative")
        if np.any(np.diff(a) > COEFF_NORM_TOL):
            raise ValidationError("Schmidt coefficients must be sorted descending")
        dev = abs(float(np.sum(a * a)) - 1.0)
        if dev > COEFF_NORM_TOL:
            raise ValidationError(
                f"sum of squared coefficients deviates from 1 by {dev:.3e}"
            )
        a.setflags(write=False)
        object.__setattr__(self, "coeffs", a)
        object.__setattr__(self, "local_dim", d)

    @classmethod
    def from_coeffs(cls, values, local_dim: int | None = None) -> "PureState":
        """Build a state from raw coefficients: sorts descending and zero-pads."""
        a = np.abs(np.asarray(values, dtype=float))
        if local_dim is None:
            local_dim = a.size
        if a.size > local_dim:
            raise ValidationError(
                f"{a.size} coefficients do not fit local_dim={local_dim}"
            )
        padded = np.zeros(local_dim)
        padded[: a.size] = np.sort(a)[::-1]
        return cls(padded, local_dim)

    @classmethod
    def maximally_entangled(cls, d: int) -> "PureState":
        """Uniform coefficients 1/sqrt(d)."""
        return cls(np.full(d, 1.0 / math.sqrt(d)), d)

    @property
    def schmidt_rank(self) -> int:
        return int(np.count_nonzero(self.coeffs > RANK_TOL))

    @property
    def coeff_sum(self) -> float:
        """sum_i a_i, the quantity entering every robustness formula."""
        return float(np.sum(self.coeffs))

    def ket(self) -> np.ndarray:
        """Schmidt-basis representative sum_i a_i |ii> as a length-d^2 vector."""
        d = self.local_dim
        v = np.zeros(d * d, dtype=complex)
        v[:: d + 1] = self.coeffs
        return v


def schmidt_decompose(vec, tol: float = RANK_TOL
                      ) -> tuple[PureState, np.ndarray, np.ndarray]:
    """Schmidt decomposition of a bipartite pure state vector.

    Parameters
    ----------
    vec : complex vector of length d^2
        Unit vector in the product basis |ij> = i*d + j.
    tol : float
        Singular values above this count toward the Schmidt rank.

    Returns
    -------
    (state, left_basis, right_basis)
        ``state`` holds the descending Schmidt coefficients; the bases are
        d x d matrices whose k-th columns are the local Schmidt vectors, so
        ``vec = sum_k a_k (left[:,k] kron right[:,k])``.
    """
    v = np.asarray(vec, dtype=complex).ravel()
    d = math.isqrt(v.size)
    if d * d != v.size or d < 2:
        raise ValidationError(
            f"vector length {v.size} is not a perfect square d^2 with d >= 2"
        )
    nrm = float(np.linalg.norm(v))
    if abs(nrm - 1.0) > VEC_NORM_TOL:
        raise ValidationError(f"state vector norm {nrm} deviates from 1")
    C = v.reshape(d, d)
    U, s, Vh = np.linalg.svd(C)
    # Renormalize so the stored coefficients satisfy the 1e-12 invariant even
    # when the input norm sits at the edge of its own (looser) tolerance.
    s = s / np.linalg.norm(s)
    state = PureState(s, d)
    return state, U, Vh.T


def max_entangled(d: int) -> BipartiteOperator:
    """Projector P+ onto the maximally entangled state (1/sqrt d) sum |ii>."""
    if d < 2:
        raise ValidationError(f"d must be >= 2, got {d}")
    v = PureState.maximally_entangled(d).ket()
    return BipartiteOperator(np.outer(v, v.conj()), d, normalized=True)


def z_operator(d: int) -> BipartiteOperator:
    """Diagonal projector Z = sum_i |ii><ii| of rank d (trace d)."""
    if d < 2:
        raise ValidationError(f"d must be >= 2, got {d}")
    M = np.zeros((d * d, d * d), dtype=complex)
    idx = np.arange(d) * (d + 1)
    M[idx, idx] = 1.0
    return BipartiteOperator(M, d, normalized=False)


def isotropic(d: int, beta: float) -> BipartiteOperator:
    """Unnormalized isotropic operator 1 + beta * P+, trace d^2 + beta.

    PSD for all beta >= -1; beta = -1 is the rank-deficient boundary.
    """
    if d < 2:
        raise ValidationError(f"d must be >= 2, got {d}")
    if beta < -1:
        raise ValidationError(f"beta must be >= -1, got {beta}")
    M = np.eye(d * d, dtype=complex) + beta * max_entangled(d).matrix
    return BipartiteOperator(M, d, normalized=False)


def isotropic_schmidt_number(d: int, beta: float) -> int:
    """Schmidt number of the isotropic operator 1 + beta * P+.

    The operator has Schmidt number n exactly when
    d((n-1)d - 1)/(d - (n-1)) < beta <= d(nd - 1)/(d - n); the upper
    endpoint is inclusive, so the boundary value belongs to the lower class.
    Returns d when beta exceeds the n = d-1 threshold.
    """
    if beta < -1:
        raise ValidationError(f"beta must be >= -1, got {beta}")
    if d < 2:
        raise ValidationError(f"d must be >= 2, got {d}")
    for n in range(1, d):
        if beta <= d * (n * d - 1) / (d - n):
            return n
    return d


def rho_g(psi: PureState) -> BipartiteOperator:
    """The separable diagonal state that most efficiently washes out psi.

    Returns (1/R_g) sum_{i != j} a_i a_j |ij><ij| with R_g = (sum a_i)^2 - 1.
    Undefined for product states (R_g = 0).
    """
    a = psi.coeffs
    d = psi.local_dim
    r_g = psi.coeff_sum ** 2 - 1.0
    if r_g <= COEFF_NORM_TOL:
        raise ValidationError(
            "rho_g is degenerate for product states (R_g = 0)"
        )
    weights = np.outer(a, a)
    np.fill_diagonal(weights, 0.0)
    M = np.diag(weights.ravel()).astype(complex) / r_g
    return BipartiteOperator(M, d, normalized=True)


def local_filter(M: BipartiteOperator, A, B) -> BipartiteOperator:
    """Local filtering (A (x) B) M (A (x) B)^dagger.

    Preserves Hermiticity and positivity; cannot increase Schmidt number.
    """
    d = M.local_dim
    A = _as_square(A, "A")
    B = _as_square(B, "B")
    if A.shape[0] != d or B.shape[0] != d:
        raise ValidationError(
            f"filters must be {d}x{d}, got {A.shape} and {B.shape}"
        )
    F = kron(A, B)
    out = F @ M.matrix @ F.conj().T
    return BipartiteOperator.from_matrix(out, d)


def subset_mixture(d: int, n: int, a=None) -> BipartiteOperator:
    """Equal-weight sum of |psi_S><psi_S| over all n-subsets S of {0..d-1}.

    Each |psi_S> = sum_{i in S} w_i |ii> with weights w = a (or all ones),
    so the mixture has Schmidt number <= n by construction.  The result is
    the unnormalized SUM; closed-form comparisons are done projectively.
    """
    if not 2 <= n < d:
        raise ValidationError(f"need 2 <= n < d, got n={n}, d={d}")
    if a is None:
        w = np.ones(d)
    else:
        w = np.asarray(a, dtype=float)
        if w.size != d:
            raise ValidationError(
                f"coefficient list must have length d={d}, got {w.size}"
            )
    M = np.zeros((d * d, d * d))
    for S in itertools.combinations(range(d), n):
        v = np.zeros(d * d)
        for i in S:
            v[i * (d + 1)] = w[i]
        M += np.outer(v, v)
    return BipartiteOperator(M.astype(complex), d, normalized=False)


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random d x d unitary via QR of a complex Gaussian matrix."""
    G = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    Q, R = np.linalg.qr(G)
    return Q * (np.diagonal(R) / np.abs(np.diagonal(R)))


def random_pure_state(d: int, rng: np.random.Generator,
                      rank: int | None = None) -> np.ndarray:
    """Random bipartite pure state vector with Schmidt rank <= rank.

    Samples ``rank`` complex Gaussian coefficients in Haar-random local
    bases and normalizes; rank defaults to d (full rank almost surely).
    """
    k = d if rank is None else int(rank)
    if not 1 <= k <= d:
        raise ValidationError(f"rank must be in [1, {d}], got {k}")
    UA = haar_unitary(d, rng)
    UB = haar_unitary(d, rng)
    c = rng.normal(size=k) + 1j * rng.normal(size=k)
    C = (UA[:, :k] * c) @ UB[:, :k].T
    v = C.ravel()
    return v / np.linalg.norm(v)
