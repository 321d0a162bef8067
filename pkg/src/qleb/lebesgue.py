"""Excision, absolute continuity, and the noncommutative Lebesgue decomposition.

Given positive operators ``sigma`` and ``rho``, the decomposition splits
``sigma = ac + perp`` where ``ac = R rho R`` is absolutely continuous with
respect to ``rho``, ``perp`` is singular (``Tr rho perp = 0``), and ``R`` is
the canonical square-root likelihood ratio.  The construction works in a
three-block orthonormal basis adapted to the pair:

    H1 = kernel of (sigma restricted to supp rho)
    H2 = support of (sigma restricted to supp rho)
    H3 = kernel of rho

in which ``rho`` has no H3 component, ``sigma`` has no H1 component, and the
H2 block of sigma is strictly positive.  ``R`` is assembled from the operator
geometric mean of that block with the inverse of the corresponding rho block.
The canonical choice sets the free kernel component of ``R`` to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import matcore
from .errors import ZeroState
from .matcore import DEFAULT_TOL, ToleranceConfig, hermitian_part


class DensityMatrix:
    """A validated quantum state: Hermitian, PSD, trace one.

    ``subnormalized=True`` relaxes the trace constraint to ``0 < Tr <= 1``,
    which is needed for diagonostics on blocks of larger states.
    """

    def __init__(
        self,
        mat: np.ndarray,
        subnormalized: bool = False,
        trace_tol: float = 1e-10,
        tol: ToleranceConfig = DEFAULT_TOL,
    ) -> None:
        mat = matcore.check_hermitian(mat, tol)
        w = np.linalg.eigvalsh(mat)
        scale = float(np.max(np.abs(w))) if w.size else 0.0
        if scale > 0 and float(w.min()) < -tol.psd_floor * scale:
            raise matcore.NotPSD(f"state has negative eigenvalue {w.min():.3e}")
        tr = float(np.trace(mat).real)
        if subnormalized:
            if not 0.0 < tr <= 1.0 + trace_tol:
                raise ZeroState(f"subnormalized state must have trace in (0, 1], got {tr:.6g}")
        elif abs(tr - 1.0) > trace_tol:
            raise ZeroState(f"state trace {tr:.12g} differs from 1 beyond {trace_tol:.1e}")
        self.mat = mat
        self.subnormalized = subnormalized
        self.trace_tol = trace_tol

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


def _as_positive_operator(x, tol: ToleranceConfig, who: str) -> np.ndarray:
    """Coerce a DensityMatrix or array to a validated nonzero positive operator."""
    mat = x.mat if isinstance(x, DensityMatrix) else x
    mat = matcore.check_hermitian(mat, tol)
    w = np.linalg.eigvalsh(mat)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    if scale == 0.0:
        raise ZeroState(f"{who} is the zero operator")
    if float(w.min()) < -tol.psd_floor * scale:
        raise matcore.NotPSD(f"{who} has negative eigenvalue {w.min():.3e}")
    if not np.any(matcore.support_mask(w, tol)):
        raise ZeroState(f"{who} is numerically zero at the configured rank cutoff")
    return mat


def _support_split(mat: np.ndarray, tol: ToleranceConfig) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (support basis, kernel basis, support eigenvalues), ascending order."""
    w, V = matcore.eig_hermitian(mat, tol)
    mask = matcore.support_mask(w, tol)
    return V[:, mask], V[:, ~mask], w[mask]


def excision(sigma, rho, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Compression of ``sigma`` onto the support of ``rho``.

    Returned in the deterministic eigenbasis of ``rho`` (ascending eigenvalues,
    phase-fixed), with dimension equal to the rank of ``rho``.
    """
    s = _as_positive_operator(sigma, tol, "sigma")
    r = _as_positive_operator(rho, tol, "rho")
    if s.shape != r.shape:
        raise matcore.DimMismatch(f"operand shapes differ: {s.shape} vs {r.shape}")
    basis, _, _ = _support_split(r, tol)
    return hermitian_part(basis.conj().T @ s @ basis)


def is_singular(rho, sigma, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Mutual singularity test via the trace criterion ``Tr(rho sigma) = 0``."""
    r = _as_positive_operator(rho, tol, "rho")
    s = _as_positive_operator(sigma, tol, "sigma")
    overlap = float(np.trace(r @ s).real)
    scale = float(np.trace(r).real * np.trace(s).real)
    return overlap <= tol.eq_rel * scale


def is_abs_continuous(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """``a << b``: the excision of ``b`` onto supp ``a`` is strictly positive."""
    ex = excision(b, a, tol)
    w = np.linalg.eigvalsh(ex)
    lam_max = float(w.max()) if w.size else 0.0
    if lam_max <= 0:
        return False
    return bool(w.min() > tol.rank_rel * lam_max)


def is_mutually_ac(rho, sigma, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Both ``rho << sigma`` and ``sigma << rho``."""
    return is_abs_continuous(rho, sigma, tol) and is_abs_continuous(sigma, rho, tol)


@dataclass
class SupportSplit:
    """Orthonormal bases of the three-block decomposition H1 + H2 + H3."""

    basis_1: np.ndarray
    basis_2: np.ndarray
    basis_3: np.ndarray
    dims: tuple[int, int, int] = field(init=False)

    def __post_init__(self) -> None:
        self.dims = (self.basis_1.shape[1], self.basis_2.shape[1], self.basis_3.shape[1])

    @property
    def full_basis(self) -> np.ndarray:
        return np.hstack([self.basis_1, self.basis_2, self.basis_3])


@dataclass
class LebesgueDecomposition:
    """Result bundle: ``sigma = ac + perp`` with ``ac = sqrt_lr rho sqrt_lr``."""

    ac: np.ndarray
    perp: np.ndarray
    sqrt_lr: np.ndarray
    split: SupportSplit


def _singular_decomposition(s: np.ndarray, r: np.ndarray, tol: ToleranceConfig) -> LebesgueDecomposition:
    d = r.shape[0]
    supp_r, ker_r, _ = _support_split(r, tol)
    split = SupportSplit(basis_1=supp_r, basis_2=np.zeros((d, 0), dtype=complex), basis_3=ker_r)
    zero = np.zeros_like(s)
    return LebesgueDecomposition(ac=zero, perp=s.copy(), sqrt_lr=zero.copy(), split=split)


def lebesgue_decompose(sigma, rho, tol: ToleranceConfig = DEFAULT_TOL) -> LebesgueDecomposition:
    """Decompose ``sigma`` relative to ``rho`` and return the canonical ratio.

    Mutually singular pairs short-circuit to ``ac = 0``, ``perp = sigma``,
    ``sqrt_lr = 0``.  Otherwise the three-block construction applies; the
    kernel component of ``sqrt_lr`` is fixed to zero (canonical choice), so
    repeated calls are reproducible.
    """
    s = _as_positive_operator(sigma, tol, "sigma")
    r = _as_positive_operator(rho, tol, "rho")
    if s.shape != r.shape:
        raise matcore.DimMismatch(f"operand shapes differ: {s.shape} vs {r.shape}")
    if is_singular(r, s, tol):
        return _singular_decomposition(s, r, tol)

    d = r.shape[0]
    supp_r, ker_r, _ = _support_split(r, tol)

    # Split supp(rho) into the kernel/support of the excised sigma.  When the
    # excision is full rank the support eigenbasis is skipped in favor of the
    # rho eigenbasis itself, which keeps rho's block exactly diagonal.
    ex = hermitian_part(supp_r.conj().T @ s @ supp_r)
    wx, Vx = matcore.eig_hermitian(ex, tol)
    mask = matcore.support_mask(wx, tol)
    if np.all(mask):
        basis_1 = np.zeros((d, 0), dtype=complex)
        basis_2 = supp_r
    else:
        basis_1 = supp_r @ Vx[:, ~mask]
        basis_2 = supp_r @ Vx[:, mask]
    basis_3 = ker_r
    split = SupportSplit(basis_1=basis_1, basis_2=basis_2, basis_3=basis_3)

    sigma0 = hermitian_part(basis_2.conj().T @ s @ basis_2)
    alpha = basis_2.conj().T @ s @ basis_3
    beta = hermitian_part(basis_3.conj().T @ s @ basis_3)
    rho0 = hermitian_part(basis_2.conj().T @ r @ basis_2)

    w0, V0 = matcore.eig_hermitian(sigma0, tol)
    sigma0_inv_alpha = (V0 * (1.0 / w0)) @ V0.conj().T @ alpha

    # ac and perp in the block basis, then rotated back to the input basis.
    schur = hermitian_part(beta - alpha.conj().T @ sigma0_inv_alpha)
    corner = hermitian_part(alpha.conj().T @ sigma0_inv_alpha)
    d1, d2, d3 = split.dims
    ac_blocks = np.zeros((d, d), dtype=complex)
    ac_blocks[d1:d1 + d2, d1:d1 + d2] = sigma0
    ac_blocks[d1:d1 + d2, d1 + d2:] = alpha
    ac_blocks[d1 + d2:, d1:d1 + d2] = alpha.conj().T
    ac_blocks[d1 + d2:, d1 + d2:] = corner
    perp_blocks = np.zeros((d, d), dtype=complex)
    perp_blocks[d1 + d2:, d1 + d2:] = schur

    w_r0, V_r0 = matcore.eig_hermitian(rho0, tol)
    rho0_inv = (V_r0 * (1.0 / w_r0)) @ V_r0.conj().T
    gm = matcore.geometric_mean(sigma0, rho0_inv, tol)
    gm_e = gm @ sigma0_inv_alpha
    r_blocks = np.zeros((d, d), dtype=complex)
    r_blocks[d1:d1 + d2, d1:d1 + d2] = gm
    r_blocks[d1:d1 + d2, d1 + d2:] = gm_e
    r_blocks[d1 + d2:, d1:d1 + d2] = gm_e.conj().T
    r_blocks[d1 + d2:, d1 + d2:] = hermitian_part(sigma0_inv_alpha.conj().T @ gm @ sigma0_inv_alpha)

    W = split.full_basis
    return LebesgueDecomposition(
        ac=hermitian_part(W @ ac_blocks @ W.conj().T),
        perp=hermitian_part(W @ perp_blocks @ W.conj().T),
        sqrt_lr=hermitian_part(W @ r_blocks @ W.conj().T),
        split=split,
    )


def sqrt_likelihood_ratio(sigma, rho, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Canonical square-root likelihood ratio ``R`` with ``R rho R = ac``."""
    return lebesgue_decompose(sigma, rho, tol).sqrt_lr


def quantum_log_likelihood(sigma, rho, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Log-likelihood ratio ``L = 2 log(sigma # rho^{-1})`` for faithful states.

    Satisfies ``exp(L/2) rho exp(L/2) = sigma``; both arguments must be
    strictly positive definite.
    """
    s = _as_positive_operator(sigma, tol, "sigma")
    r = _as_positive_operator(rho, tol, "rho")
    if s.shape != r.shape:
        raise matcore.DimMismatch(f"operand shapes differ: {s.shape} vs {r.shape}")
    matcore._check_strictly_positive(s, tol, "sigma")
    matcore._check_strictly_positive(r, tol, "rho")
    w, V = matcore.eig_hermitian(r, tol)
    r_inv = (V * (1.0 / w)) @ V.conj().T
    ratio = matcore.geometric_mean(s, r_inv, tol)
    return 2.0 * matcore.psd_log_on_support(ratio, tol)
