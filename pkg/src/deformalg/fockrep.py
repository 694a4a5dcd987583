"""Truncated Fock-space matrix representations and identity checks.

Builds dense complex matrices for the ladder operators of a deformed
oscillator algebra, the quadratures x = (a' + a)/2, p = i(a' - a)/2 and
the Hamiltonian H = x^2 + p^2, and verifies operator identities on the
sub-block where the truncation is faithful to the infinite-dimensional
algebra.

Truncation policy: identities involving K(N+2) shift levels by up to two,
so they are asserted only on rows and columns 0..D-1-margin (margin 3 by
default).  H is always computed as the matrix product x^2 + p^2, never
from its diagonal closed form, so that the closed form stays a verified
claim rather than a definition.

Residuals are normalized: verify_window reports max|A - B| divided by
max(1, |A|, |B|) over the window.  For rapidly growing spectra the raw
entries reach 1e20 at D = 32, where an absolute comparison would only
measure float64 rounding of the operands.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .spectral import SpectralFunction, eval_K

__all__ = [
    "FockRep",
    "QuadratureSet",
    "StateVector",
    "IdentityReport",
    "QuadratureMoments",
    "build_rep",
    "quadratures",
    "commutator",
    "lie_hamilton_rhs",
    "verify_window",
    "number_state",
    "random_state",
    "truncation_safe",
    "expectation",
    "uncertainty_product",
    "scaled_max_residual",
]

DEFAULT_DIM = 32
DEFAULT_MARGIN = 3
DEFAULT_TOL = 1e-10


@dataclass(frozen=True)
class FockRep:
    """Dimension-D truncated matrix representation of one algebra.

    mat_a is zero except the superdiagonal entries (n-1, n) = sqrt(K(n));
    mat_ad is its conjugate transpose; mat_N = diag(0..D-1).
    """

    K: SpectralFunction
    D: int
    mat_a: np.ndarray = field(repr=False)
    mat_ad: np.ndarray = field(repr=False)
    mat_N: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class QuadratureSet:
    """Position, momentum and Hamiltonian matrices of a representation."""

    mat_x: np.ndarray = field(repr=False)
    mat_p: np.ndarray = field(repr=False)
    mat_H: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class StateVector:
    """Normalized complex amplitude vector in the truncated Fock basis."""

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        norm = float(np.linalg.norm(self.amplitudes))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state vector norm {norm} is not 1 within 1e-12")

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]


@dataclass(frozen=True)
class IdentityReport:
    """Result of one windowed matrix-identity check.

    window is the number of retained rows/columns; max_abs_residual is the
    normalized residual described in the module docstring.
    """

    name: str
    window: int
    max_abs_residual: float
    tol: float
    passed: bool


@dataclass(frozen=True)
class QuadratureMoments:
    """Second-moment data of a state under a quadrature set."""

    delta_x: float
    delta_p: float
    product: float
    mean_x: float
    mean_p: float
    xp_commutator_mean: complex


def build_rep(K: SpectralFunction, D: int = DEFAULT_DIM) -> FockRep:
    """Build the D-dimensional truncated representation of K's algebra.

    Requires D >= 4 (smaller dimensions leave no verification window) and
    K(n) >= 0 for n = 0..D-1 (the ladder weights are sqrt(K)).
    """
    if D < 4:
        raise ValueError(f"representation dimension must be >= 4, got {D}")
    levels = [eval_K(K, n) for n in range(D)]
    for n, value in enumerate(levels):
        if value < 0.0:
            raise ValueError(f"K({n}) = {value} is negative; sqrt weights undefined")
    mat_a = np.zeros((D, D), dtype=complex)
    for n in range(1, D):
        mat_a[n - 1, n] = math.sqrt(levels[n])
    mat_ad = mat_a.conj().T.copy()
    mat_N = np.diag(np.arange(D, dtype=float)).astype(complex)
    return FockRep(K=K, D=D, mat_a=mat_a, mat_ad=mat_ad, mat_N=mat_N)


def quadratures(rep: FockRep) -> QuadratureSet:
    """Quadratures x, p and the Hamiltonian H = x^2 + p^2 (matrix product)."""
    x = 0.5 * (rep.mat_ad + rep.mat_a)
    p = 0.5j * (rep.mat_ad - rep.mat_a)
    H = x @ x + p @ p
    return QuadratureSet(mat_x=x, mat_p=p, mat_H=H)


def commutator(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """AB - BA for equal square matrices."""
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError(f"commutator needs equal square matrices, got {A.shape} and {B.shape}")
    return A @ B - B @ A


def _diag_apply(values: np.ndarray, M: np.ndarray) -> np.ndarray:
    # diag(values) @ M without forming the diagonal matrix
    return values[:, None] * M


def lie_hamilton_rhs(
    rep: FockRep,
    quads: QuadratureSet,
    side: str,
    k_minus_one: Optional[float] = None,
) -> np.ndarray:
    """Closed-form right side of the equation of motion commutator.

    For side='x' returns  C1(N) x + i C2(N) p  and for side='p' returns
    C1(N) p - i C2(N) x, with diagonal coefficient matrices applied on the
    left and

        C1(n) = (K(n+2) - K(n) - K(n+1) + K(n-1))/4
        C2(n) = (K(n+2) - K(n) + K(n+1) - K(n-1))/4

    The K(n-1) value at n = 0 comes from the closed form at -1; its
    contribution provably cancels between the x and p terms, so any finite
    override (k_minus_one) leaves the window agreement with the true
    commutator intact.
    """
    if side not in ("x", "p"):
        raise ValueError(f"side must be 'x' or 'p', got {side!r}")
    K, D = rep.K, rep.D
    kvals = {m: eval_K(K, m) for m in range(-1, D + 2)}
    if k_minus_one is not None:
        kvals[-1] = float(k_minus_one)
    c1 = np.array(
        [0.25 * (kvals[n + 2] - kvals[n] - kvals[n + 1] + kvals[n - 1]) for n in range(D)]
    )
    c2 = np.array(
        [0.25 * (kvals[n + 2] - kvals[n] + kvals[n + 1] - kvals[n - 1]) for n in range(D)]
    )
    if side == "x":
        return _diag_apply(c1, quads.mat_x) + 1j * _diag_apply(c2, quads.mat_p)
    return _diag_apply(c1, quads.mat_p) - 1j * _diag_apply(c2, quads.mat_x)


def scaled_max_residual(A: np.ndarray, B: np.ndarray, margin: int = 0) -> float:
    """max|A - B| over the window, divided by max(1, |A|, |B|) there."""
    D = A.shape[0]
    w = D - margin
    if w <= 0:
        raise ValueError(f"margin {margin} leaves an empty window at dimension {D}")
    dA = A[:w, :w]
    dB = B[:w, :w]
    scale = max(1.0, float(np.abs(dA).max()), float(np.abs(dB).max()))
    return float(np.abs(dA - dB).max()) / scale


def verify_window(
    A: np.ndarray,
    B: np.ndarray,
    margin: int = DEFAULT_MARGIN,
    tol: float = DEFAULT_TOL,
    name: str = "identity",
) -> IdentityReport:
    """Compare two matrices on the truncation-safe window.

    Retains rows and columns 0..D-1-margin and reports the normalized
    residual there; passes iff it does not exceed tol.
    """
    if A.shape != B.shape or A.shape[0] != A.shape[1]:
        raise ValueError(f"verify_window needs equal square matrices, got {A.shape}, {B.shape}")
    D = A.shape[0]
    if not 0 < margin < D:
        raise ValueError(f"margin must satisfy 0 < margin < {D}, got {margin}")
    residual = scaled_max_residual(A, B, margin)
    return IdentityReport(
        name=name,
        window=D - margin,
        max_abs_residual=residual,
        tol=tol,
        passed=residual <= tol,
    )


def number_state(D: int, n: int) -> StateVector:
    """The basis eigenvector |n> of the number operator."""
    if not 0 <= n < D:
        raise ValueError(f"level {n} outside 0..{D - 1}")
    amp = np.zeros(D, dtype=complex)
    amp[n] = 1.0
    return StateVector(amp)


def _splitmix64(seed: int):
    """Platform-independent 64-bit splitmix generator (yields uint64)."""
    state = seed & 0xFFFFFFFFFFFFFFFF
    mask = 0xFFFFFFFFFFFFFFFF
    while True:
        state = (state + 0x9E3779B97F4A7C15) & mask
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & mask
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & mask
        yield z ^ (z >> 31)


def _gaussian_pairs(seed: int):
    """Box-Muller pairs from the splitmix stream.

    Ordering contract: successive splitmix words u, v map to uniforms in
    (0, 1] via ((word >> 11) + 1) * 2^-53, and each uniform pair yields
    the Gaussian pair (r cos t, r sin t) with r = sqrt(-2 ln u),
    t = 2 pi v.  Fixed across platforms and releases.
    """
    words = _splitmix64(seed)
    while True:
        u = ((next(words) >> 11) + 1) * 2.0**-53
        v = ((next(words) >> 11) + 1) * 2.0**-53
        r = math.sqrt(-2.0 * math.log(u))
        t = 2.0 * math.pi * v
        yield r * math.cos(t), r * math.sin(t)


def random_state(D: int, seed: int) -> StateVector:
    """Deterministic pseudo-random state: 2D Gaussian draws, normalized.

    Amplitude k is (real, imag) = the k-th Box-Muller pair of the seeded
    stream documented in _gaussian_pairs; the same seed always produces
    the same vector on every platform.
    """
    pairs = _gaussian_pairs(seed)
    amp = np.empty(D, dtype=complex)
    for k in range(D):
        re, im = next(pairs)
        amp[k] = complex(re, im)
    amp /= np.linalg.norm(amp)
    return StateVector(amp)


def truncation_safe(state: StateVector, margin: int = DEFAULT_MARGIN) -> StateVector:
    """Zero the top `margin` amplitudes and renormalize.

    States prepared this way have exact moments up to fourth order under
    the truncated operators, because no ladder path can reach the lost
    levels at or above D.
    """
    if not 0 < margin < state.dim:
        raise ValueError(f"margin must satisfy 0 < margin < {state.dim}, got {margin}")
    amp = state.amplitudes.copy()
    amp[state.dim - margin :] = 0.0
    norm = np.linalg.norm(amp)
    if norm == 0.0:
        raise ValueError("state has no support below the truncation margin")
    return StateVector(amp / norm)


def expectation(state: StateVector, M: np.ndarray) -> complex:
    """<psi| M |psi>."""
    v = state.amplitudes
    return complex(np.vdot(v, M @ v))


def uncertainty_product(state: StateVector, quads: QuadratureSet) -> QuadratureMoments:
    """Standard deviations of x and p, their product, and <[x, p]>.

    Truncation-exact when the state's top amplitudes vanish (see
    truncation_safe); this is documented rather than enforced.
    """
    x, p = quads.mat_x, quads.mat_p
    mean_x = expectation(state, x).real
    mean_p = expectation(state, p).real
    var_x = max(expectation(state, x @ x).real - mean_x**2, 0.0)
    var_p = max(expectation(state, p @ p).real - mean_p**2, 0.0)
    dx = math.sqrt(var_x)
    dp = math.sqrt(var_p)
    comm_mean = expectation(state, commutator(x, p))
    return QuadratureMoments(
        delta_x=dx,
        delta_p=dp,
        product=dx * dp,
        mean_x=mean_x,
        mean_p=mean_p,
        xp_commutator_mean=comm_mean,
    )
