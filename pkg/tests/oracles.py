"""Independent reference implementations used to cross-check the library.

These deliberately avoid the library's code paths: matrix square roots come
from scipy's Schur-based ``sqrtm``, pseudo-inverses from ``np.linalg.pinv``,
and the geometric mean from the similarity formula ``A (A^{-1}B)^{1/2}``.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg


def herm(A: np.ndarray) -> np.ndarray:
    return (A + A.conj().T) / 2


def closed_form_sqrt_lr(sigma: np.ndarray, rho: np.ndarray, atol: float = 1e-12) -> np.ndarray:
    """Canonical ratio via the closed form ``sqrt(sigma) (sqrt(sqrt(sigma) rho
    sqrt(sigma)))^+ sqrt(sigma)``.

    Inputs are assumed trace-normalized; eigenvalues of the inner product
    below the absolute floor ``atol`` count as kernel (a relative cutoff would
    invert roundoff noise when the pair is mutually singular).
    """
    sq = herm(np.asarray(scipy.linalg.sqrtm(herm(sigma))))
    w, V = np.linalg.eigh(herm(sq @ rho @ sq))
    inv_sqrt = np.where(w > atol, 1.0 / np.sqrt(np.where(w > atol, w, 1.0)), 0.0)
    pinv_root = (V * inv_sqrt) @ V.conj().T
    return herm(sq @ pinv_root @ sq)


def closed_form_decomposition(sigma: np.ndarray, rho: np.ndarray, atol: float = 1e-12):
    """(ac, perp, R) from the closed-form ratio."""
    R = closed_form_sqrt_lr(sigma, rho, atol)
    ac = herm(R @ rho @ R)
    return ac, herm(sigma - ac), R


def geometric_mean_similarity(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """``A # B`` via ``A (A^{-1} B)^{1/2}`` (Schur sqrt of a non-Hermitian matrix)."""
    return herm(A @ np.asarray(scipy.linalg.sqrtm(np.linalg.solve(A, B))))


def block_construction_decomposition(sigma: np.ndarray, rho: np.ndarray, cut: float = 1e-10):
    """Literal three-subspace construction of (ac, perp, R).

    Builds the orthogonal split (kernel of the excision, support of the
    excision, kernel of rho), forms the blocks of sigma, and assembles

        ac   = [[0,0,0],[0,s0,a],[0,a*,a* s0^-1 a]]
        perp = diag(0, 0, b - a* s0^-1 a)
        R    = E* diag(0, s0 # r0^-1, 0) E,   E = [[I,0,0],[0,I,s0^-1 a],[0,0,I]]

    in that basis.  Mutually singular pairs return the trivial split.
    """
    d = rho.shape[0]
    if abs(np.trace(rho @ sigma)) <= 1e-12 * abs(np.trace(rho) * np.trace(sigma)):
        return np.zeros_like(sigma), sigma.copy(), np.zeros_like(sigma)

    w_r, V_r = np.linalg.eigh(herm(rho))
    keep_r = w_r > cut * w_r.max()
    supp, ker = V_r[:, keep_r], V_r[:, ~keep_r]
    ex = herm(supp.conj().T @ sigma @ supp)
    w_x, V_x = np.linalg.eigh(ex)
    keep_x = w_x > cut * max(w_x.max(), 0.0)
    B1 = supp @ V_x[:, ~keep_x]
    B2 = supp @ V_x[:, keep_x]
    B3 = ker
    W = np.hstack([B1, B2, B3])
    d1, d2, d3 = B1.shape[1], B2.shape[1], B3.shape[1]

    s0 = herm(B2.conj().T @ sigma @ B2)
    a = B2.conj().T @ sigma @ B3
    b = herm(B3.conj().T @ sigma @ B3)
    r0 = herm(B2.conj().T @ rho @ B2)
    s0_inv_a = np.linalg.solve(s0, a)

    ac = np.zeros((d, d), dtype=complex)
    ac[d1:d1 + d2, d1:d1 + d2] = s0
    ac[d1:d1 + d2, d1 + d2:] = a
    ac[d1 + d2:, d1:d1 + d2] = a.conj().T
    ac[d1 + d2:, d1 + d2:] = a.conj().T @ s0_inv_a
    perp = np.zeros((d, d), dtype=complex)
    perp[d1 + d2:, d1 + d2:] = b - a.conj().T @ s0_inv_a

    gm = geometric_mean_similarity(s0, np.linalg.inv(r0))
    E = np.eye(d, dtype=complex)
    E[d1:d1 + d2, d1 + d2:] = s0_inv_a
    core = np.zeros((d, d), dtype=complex)
    core[d1:d1 + d2, d1:d1 + d2] = gm
    R = E.conj().T @ core @ E
    return herm(W @ ac @ W.conj().T), herm(W @ perp @ W.conj().T), herm(W @ R @ W.conj().T)


def classical_gaussian_cf(mean: np.ndarray, cov: np.ndarray, xi: np.ndarray) -> complex:
    """Characteristic function of a real Gaussian vector at frequency ``xi``."""
    return complex(np.exp(1j * xi @ mean - 0.5 * xi @ cov @ xi))


def classical_fisher_two_outcome(p: float, dp: float) -> float:
    """Fisher information of a Bernoulli(p) family with derivative ``dp``."""
    return dp**2 / p + dp**2 / (1.0 - p)
