"""Spectral calculus for dense Hermitian/PSD matrices.

All matrix functions (square root, pseudo-inverse, logarithm, exponential)
run through a single eigendecomposition code path so that rank and
positivity decisions are controlled by one :class:`ToleranceConfig`.
Eigenbases are made deterministic by ordering eigenvalues ascending and
fixing the phase of each eigenvector (first significant component real
positive).
"""

from __future__ import annotations

from dataclasses import dataclass, asdict
from typing import Callable, NamedTuple

import numpy as np

from .errors import DimMismatch, NonHermitian, NotPSD, NotStrictlyPositive


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical tolerances used by every validation and rank decision.

    hermitian : admissible relative Frobenius asymmetry ``||A - A*||``.
    rank_rel  : eigenvalue ``lam`` counts as zero iff ``lam <= rank_rel * lam_max``.
    psd_floor : most negative admissible eigenvalue, relative to ``lam_max``;
                eigenvalues in ``[-psd_floor * lam_max, 0)`` are clamped to 0.
    recon     : spectral reconstruction residual bound (relative).
    ortho     : eigenvector Gram-matrix deviation bound.
    eq_rel    : relative Frobenius tolerance for matrix equality checks.
    """

    hermitian: float = 1e-10
    rank_rel: float = 1e-9
    psd_floor: float = 1e-10
    recon: float = 1e-12
    ortho: float = 1e-12
    eq_rel: float = 1e-8

    def __post_init__(self) -> None:
        for name, value in asdict(self).items():
            if not value > 0:
                raise ValueError(f"tolerance {name} must be strictly positive")
        if not self.rank_rel < 1:
            raise ValueError("rank_rel must be < 1")


DEFAULT_TOL = ToleranceConfig()

#: Named tolerance profiles selectable via the CLI / QLEB_TOL_PROFILE.
#: "extreme-scale" lowers the rank cutoff so that families whose eigenvalues
#: span ~18 orders of magnitude are still treated as full rank.
TOL_PROFILES: dict[str, ToleranceConfig] = {
    "default": DEFAULT_TOL,
    "strict": ToleranceConfig(
        hermitian=1e-12, rank_rel=1e-12, psd_floor=1e-12,
        recon=1e-13, ortho=1e-13, eq_rel=1e-10,
    ),
    "extreme-scale": ToleranceConfig(rank_rel=1e-30),
}


class SpectralDecomposition(NamedTuple):
    """Eigenvalues (ascending) and a phase-fixed orthonormal eigenbasis."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def frob(A: np.ndarray) -> float:
    return float(np.linalg.norm(A))


def hermitian_part(A: np.ndarray) -> np.ndarray:
    return (A + A.conj().T) / 2


def check_square(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimMismatch(f"expected a square matrix, got shape {A.shape}")
    return A


def check_hermitian(A: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Validate Hermiticity and return the exactly-Hermitian part of ``A``."""
    A = check_square(A)
    dev = frob(A - A.conj().T)
    if dev > tol.hermitian * (1.0 + frob(A)):
        i, j = np.unravel_index(np.argmax(np.abs(A - A.conj().T)), A.shape)
        raise NonHermitian(
            f"matrix is not Hermitian: entry [{i}][{j}]={A[i, j]:.6g} vs "
            f"conj([{j}][{i}])={np.conj(A[j, i]):.6g} (deviation {dev:.3e})"
        )
    return hermitian_part(A)


def _phase_fix(V: np.ndarray) -> np.ndarray:
    """Rotate each column so its first significant component is real positive."""
    V = V.copy()
    for k in range(V.shape[1]):
        col = V[:, k]
        mags = np.abs(col)
        top = mags.max()
        if top == 0.0:
            continue
        idx = int(np.argmax(mags > 1e-12 * top))
        pivot = col[idx]
        if pivot != 0:
            V[:, k] = col * (np.conj(pivot) / abs(pivot))
    return V


def eig_hermitian(A: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> SpectralDecomposition:
    """Eigendecomposition with ascending eigenvalues and deterministic phases."""
    A = check_hermitian(A, tol)
    w, V = np.linalg.eigh(A)
    return SpectralDecomposition(w, _phase_fix(V))


def _psd_eigenvalues(A: np.ndarray, tol: ToleranceConfig) -> SpectralDecomposition:
    """Eigendecomposition of a PSD matrix with the negative floor applied."""
    w, V = eig_hermitian(A, tol)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    if scale > 0 and float(w.min()) < -tol.psd_floor * scale:
        raise NotPSD(
            f"matrix has eigenvalue {w.min():.3e} below the PSD floor "
            f"{-tol.psd_floor * scale:.3e}"
        )
    return SpectralDecomposition(np.maximum(w, 0.0), V)


def support_mask(w: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Boolean mask of eigenvalues counted as nonzero at the relative cutoff."""
    w = np.asarray(w, dtype=float)
    if w.size == 0:
        return np.zeros(0, dtype=bool)
    lam_max = float(np.max(np.abs(w)))
    if lam_max == 0.0:
        return np.zeros(w.shape, dtype=bool)
    return w > tol.rank_rel * lam_max


def support_projector(A: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the span of significantly-positive eigenvectors."""
    w, V = _psd_eigenvalues(A, tol)
    keep = V[:, support_mask(w, tol)]
    return hermitian_part(keep @ keep.conj().T)


def _spectral_apply(
    A: np.ndarray,
    fn: Callable[[np.ndarray], np.ndarray],
    tol: ToleranceConfig,
    psd: bool,
    on_support: bool = False,
) -> np.ndarray:
    """Apply a scalar function through the (single) spectral code path."""
    if psd:
        w, V = _psd_eigenvalues(A, tol)
    else:
        w, V = eig_hermitian(A, tol)
    if on_support:
        mask = support_mask(w, tol)
        fw = np.where(mask, fn(np.where(mask, w, 1.0)), 0.0)
    else:
        fw = fn(w)
    return hermitian_part((V * fw) @ V.conj().T)


def psd_sqrt(A: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Positive square root of a PSD matrix."""
    return _spectral_apply(A, np.sqrt, tol, psd=True)


def psd_pinv(A: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Moore-Penrose inverse of a PSD matrix with the relative rank cutoff."""
    return _spectral_apply(A, lambda w: 1.0 / w, tol, psd=True, on_support=True)


def psd_log_on_support(A: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Logarithm on the support of a PSD matrix; the kernel is mapped to 0."""
    return _spectral_apply(A, np.log, tol, psd=True, on_support=True)


def herm_exp(A: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Exponential of a Hermitian matrix."""
    return _spectral_apply(A, np.exp, tol, psd=False)


def unitary_exp(H: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """``exp(iH)`` for Hermitian ``H`` (result is unitary, not Hermitian)."""
    w, V = eig_hermitian(H, tol)
    return (V * np.exp(1j * w)) @ V.conj().T


def _check_strictly_positive(A: np.ndarray, tol: ToleranceConfig, who: str) -> np.ndarray:
    w = np.linalg.eigvalsh(check_hermitian(A, tol))
    lam_max = float(w.max()) if w.size else 0.0
    if lam_max <= 0 or float(w.min()) <= tol.rank_rel * lam_max:
        raise NotStrictlyPositive(
            f"{who} must be strictly positive definite "
            f"(min eigenvalue {w.min():.3e}, max {lam_max:.3e})"
        )
    return A


def _det2(A: np.ndarray) -> float:
    return float((A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]).real)


def _geometric_mean_2x2(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    # Determinant closed form for 2x2 positive matrices; unlike the spectral
    # route it stays accurate when the eigenvalue range approaches 1/eps^2.
    da, db = _det2(A), _det2(B)
    N = np.sqrt(db) * A + np.sqrt(da) * B
    return hermitian_part(N * (da * db) ** 0.25 / np.sqrt(_det2(N)))


def geometric_mean(A: np.ndarray, B: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Operator geometric mean of strictly positive matrices.

    Returns the unique positive ``X`` with ``X A^{-1} X = B``.  For dimension
    2 a determinant-based closed form is used for numerical robustness; in
    higher dimensions ``sqrt(A) sqrt(sqrt(A)^{-1} B sqrt(A)^{-1}) sqrt(A)``
    is evaluated through the spectral path.
    """
    A = _check_strictly_positive(A, tol, "first operand")
    B = _check_strictly_positive(B, tol, "second operand")
    if A.shape != B.shape:
        raise DimMismatch(f"operand shapes differ: {A.shape} vs {B.shape}")
    if A.shape[0] == 1:
        return np.sqrt(A.real * B.real).astype(complex)
    if A.shape[0] == 2:
        return _geometric_mean_2x2(hermitian_part(A), hermitian_part(B))
    w, V = eig_hermitian(A, tol)
    sqrt_a = (V * np.sqrt(w)) @ V.conj().T
    inv_sqrt_a = (V * (1.0 / np.sqrt(w))) @ V.conj().T
    inner = psd_sqrt(hermitian_part(inv_sqrt_a @ B @ inv_sqrt_a), tol)
    return hermitian_part(sqrt_a @ inner @ sqrt_a)


def trace_inner(A: np.ndarray, B: np.ndarray) -> complex:
    """``Tr(A B)`` for same-dimension square matrices."""
    A = check_square(A)
    B = check_square(B)
    if A.shape != B.shape:
        raise DimMismatch(f"operand shapes differ: {A.shape} vs {B.shape}")
    return complex(np.trace(A @ B))


def mat_close(A: np.ndarray, B: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Relative Frobenius equality test at ``tol.eq_rel``."""
    return frob(np.asarray(A) - np.asarray(B)) <= tol.eq_rel * (1.0 + frob(np.asarray(B)))
