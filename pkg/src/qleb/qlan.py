"""Desk-scale local-asymptotic-normality experiments for i.i.d. models.

Covers symmetric logarithmic derivatives, the quantum Fisher information
matrix, collective-observable quasi-characteristic functions of n-fold
product states, numerical limit-law checks against the matching Gaussian
shift, square-root likelihood-ratio expansion checks, and perturbation rate
scans.  Tensor powers are never materialized: for collective observables the
n-copy expectation is an exact n-th power of a single-site trace.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import matcore
from .contiguity import CONTIGUOUS, INCONCLUSIVE, NOT_CONTIGUOUS, _nonincreasing, _tail
from .errors import (
    CenteringViolated,
    DerivativeUnavailable,
    DimMismatch,
    InconsistentDerivativeWarning,
)
from .lebesgue import DensityMatrix, lebesgue_decompose
from .matcore import DEFAULT_TOL, ToleranceConfig, hermitian_part


def _mat(x) -> np.ndarray:
    return x.mat if isinstance(x, DensityMatrix) else np.asarray(x, dtype=complex)


@dataclass
class ParametricModel:
    """A parametric family of states ``theta -> rho_theta``.

    ``deriv_at(theta, i)`` may supply analytic partial derivatives; otherwise
    Richardson-refined central finite differences with step ``fd_step`` are
    used.
    """

    dim: int
    state_at: Callable[[np.ndarray], np.ndarray]
    deriv_at: Optional[Callable[[np.ndarray, int], np.ndarray]] = None
    fd_step: float = 1e-5


def model_derivative(model: ParametricModel, theta0: np.ndarray, i: int) -> np.ndarray:
    """Partial derivative of the state at ``theta0`` along parameter ``i``."""
    theta0 = np.asarray(theta0, dtype=float)
    if model.deriv_at is not None:
        return hermitian_part(np.asarray(model.deriv_at(theta0, i), dtype=complex))
    if not model.fd_step > 0:
        raise DerivativeUnavailable("no analytic derivative and finite differences disabled")
    h = model.fd_step
    e = np.zeros_like(theta0)
    e[i] = 1.0

    def central(step: float) -> np.ndarray:
        return (_mat(model.state_at(theta0 + step * e))
                - _mat(model.state_at(theta0 - step * e))) / (2 * step)

    coarse, fine = central(h), central(h / 2)
    return hermitian_part((4.0 * fine - coarse) / 3.0)


def sld(
    model: ParametricModel,
    theta0: np.ndarray,
    i: int,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> np.ndarray:
    """Symmetric logarithmic derivative: solves ``rho L + L rho = 2 d_i rho``.

    In the eigenbasis of ``rho`` the solution is ``L_jk = 2 (drho)_jk /
    (lam_j + lam_k)`` wherever the denominator is significant; the
    kernel-kernel block is set to zero (minimal-norm convention).  Derivative
    components inside the kernel-kernel block cannot be reproduced by any
    solution; they are projected away with a warning.
    """
    rho = _mat(model.state_at(np.asarray(theta0, dtype=float)))
    drho = model_derivative(model, theta0, i)
    w, V = matcore.eig_hermitian(rho, tol)
    w = np.maximum(w, 0.0)
    lam_max = float(w.max()) if w.size else 0.0
    D = V.conj().T @ drho @ V
    denom = w[:, None] + w[None, :]
    reachable = denom > tol.rank_rel * lam_max
    lost = matcore.frob(np.where(reachable, 0.0, D))
    if lost > tol.eq_rel * (1.0 + matcore.frob(drho)):
        warnings.warn(
            f"derivative has kernel-kernel components of norm {lost:.3e}; projected away",
            InconsistentDerivativeWarning,
        )
    L = np.where(reachable, 2.0 * D / np.where(reachable, denom, 1.0), 0.0)
    return hermitian_part(V @ L @ V.conj().T)


def slds(model: ParametricModel, theta0: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> list[np.ndarray]:
    """All symmetric logarithmic derivatives at ``theta0``."""
    theta0 = np.asarray(theta0, dtype=float)
    return [sld(model, theta0, i, tol) for i in range(theta0.shape[0])]


def _check_centered(rho: np.ndarray, ops: Sequence[np.ndarray], centering_tol: float, who: str) -> None:
    for k, op in enumerate(ops):
        mean = abs(complex(np.trace(rho @ op)))
        if mean > centering_tol:
            raise CenteringViolated(f"{who}[{k}] has mean {mean:.3e} under the base state")


def qfi_matrix(
    rho,
    sld_list: Sequence[np.ndarray],
    tol: ToleranceConfig = DEFAULT_TOL,
    centering_tol: float = 1e-8,
) -> np.ndarray:
    """Quantum Fisher information matrix ``J[i, j] = Tr rho L_j L_i``."""
    r = _mat(rho)
    ops = [matcore.check_hermitian(L, tol) for L in sld_list]
    _check_centered(r, ops, centering_tol, "sld")
    d = len(ops)
    J = np.empty((d, d), dtype=complex)
    for i in range(d):
        for j in range(d):
            J[i, j] = np.trace(r @ ops[j] @ ops[i])
    return J


@dataclass
class IIDExperiment:
    """n i.i.d. copies of ``base`` probed through collective observables.

    ``obs`` carries the single-site observables ``B_i`` (zero mean under the
    base state); queries couple to the collective ``(1/sqrt(n)) sum_k B_i``.
    """

    base: np.ndarray
    slds: list = field(default_factory=list)
    obs: list = field(default_factory=list)
    h: np.ndarray = field(default_factory=lambda: np.zeros(0))
    n: int = 1
    centering_tol: float = 1e-8

    def __post_init__(self) -> None:
        self.base = _mat(self.base)
        self.slds = [np.asarray(L, dtype=complex) for L in self.slds]
        self.obs = [np.asarray(B, dtype=complex) for B in self.obs]
        self.h = np.asarray(self.h, dtype=float).reshape(-1)
        if self.n < 1:
            raise ValueError("copy count n must be >= 1")
        for name, ops in (("sld", self.slds), ("obs", self.obs)):
            for op in ops:
                if op.shape != self.base.shape:
                    raise DimMismatch(f"{name} dimension {op.shape} != base {self.base.shape}")
        _check_centered(self.base, self.slds, self.centering_tol, "sld")
        _check_centered(self.base, self.obs, self.centering_tol, "obs")


def iid_qcf(exp: IIDExperiment, xis: Sequence[Sequence[float]], tol: ToleranceConfig = DEFAULT_TOL) -> complex:
    """Collective-observable quasi-characteristic function of the n-copy state.

    Exact identity: the value equals ``(Tr rho prod_t exp(i xi_t . B /
    sqrt(n)))^n`` because each collective exponential factorizes over sites.
    """
    scale = 1.0 / np.sqrt(exp.n)
    U = np.eye(exp.base.shape[0], dtype=complex)
    for xi in xis:
        xi = np.asarray(xi, dtype=float).reshape(-1)
        if xi.shape[0] != len(exp.obs):
            raise DimMismatch(f"query length {xi.shape[0]} != number of observables {len(exp.obs)}")
        H = sum(c * B for c, B in zip(xi, exp.obs)) * scale
        U = U @ matcore.unitary_exp(hermitian_part(H), tol)
    z = complex(np.trace(exp.base @ U))
    if exp.n == 1:
        return z
    if z == 0:
        return 0.0j
    return complex(np.exp(exp.n * np.log(z)))


@dataclass
class LeCam3Report:
    """Deviations of the n-copy law from its Gaussian shift limit."""

    limit_mean: np.ndarray
    limit_cov: np.ndarray
    tau: np.ndarray
    sigma_mat: np.ndarray
    deviations: list[dict]
    decreasing: bool


def lecam3_numeric_check(
    model: ParametricModel,
    theta0: np.ndarray,
    obs: Optional[Sequence[np.ndarray]],
    h: np.ndarray,
    n_grid: Sequence[int],
    xi_grid: Sequence[Sequence[Sequence[float]]],
    tol: ToleranceConfig = DEFAULT_TOL,
) -> LeCam3Report:
    """Compare the shifted n-copy law against its predicted Gaussian limit.

    For each ``n`` the maximum over the query grid of ``|qcf under the
    shifted product state - Gaussian qcf of N((Re tau) h, Sigma)|`` is
    recorded, where ``Sigma[i, j] = Tr rho B_j B_i`` and ``tau[i, j] =
    Tr rho L_j B_i`` are computed at ``theta0``.
    """
    from .gaussian import GaussianParams, gaussian_qcf

    theta0 = np.asarray(theta0, dtype=float)
    h = np.asarray(h, dtype=float).reshape(-1)
    rho0 = _mat(model.state_at(theta0))
    L = slds(model, theta0, tol)
    B = L if obs is None else [matcore.check_hermitian(np.asarray(o), tol) for o in obs]
    dprime, d = len(B), len(L)
    sigma_mat = np.empty((dprime, dprime), dtype=complex)
    for i in range(dprime):
        for j in range(dprime):
            sigma_mat[i, j] = np.trace(rho0 @ B[j] @ B[i])
    tau = np.empty((dprime, d), dtype=complex)
    for i in range(dprime):
        for j in range(d):
            tau[i, j] = np.trace(rho0 @ L[j] @ B[i])
    limit = GaussianParams(h=tau.real @ h, J=sigma_mat)

    if any(len(q) > 3 for q in xi_grid):
        raise ValueError("query grid is limited to r <= 3 factors")
    deviations = []
    for n in n_grid:
        shifted = _mat(model.state_at(theta0 + h / np.sqrt(n)))
        experiment = IIDExperiment(base=shifted, obs=list(B), h=h, n=int(n),
                                   centering_tol=np.inf)
        worst = 0.0
        for query in xi_grid:
            got = iid_qcf(experiment, query, tol)
            want = gaussian_qcf(limit, [np.asarray(x, dtype=float) for x in query], tol)
            worst = max(worst, abs(got - want))
        deviations.append({"n": int(n), "max_deviation": worst})
    devs = [row["max_deviation"] for row in deviations]
    return LeCam3Report(
        limit_mean=limit.h, limit_cov=limit.J, tau=tau, sigma_mat=sigma_mat,
        deviations=deviations, decreasing=all(b < a for a, b in zip(devs, devs[1:])),
    )


@dataclass
class ExpansionReport:
    """Quadratic-response check of the square-root likelihood ratio at the origin."""

    fitted_quadratic: np.ndarray
    target_quadratic: np.ndarray
    rel_error: float
    residual_order: Optional[float]
    trr2_order: Optional[float]
    trr2_exact: bool
    samples: list[dict]


def _order_estimate(scales: np.ndarray, residuals: np.ndarray, floor: float = 1e-14) -> tuple[Optional[float], bool]:
    mask = residuals > floor
    if np.count_nonzero(mask) < 3:
        return None, True
    slope, _ = np.polyfit(np.log(scales[mask]), np.log(residuals[mask]), 1)
    return float(slope), False


def sqrt_expansion_check(
    model: ParametricModel,
    theta0: np.ndarray,
    scales: Sequence[float] = tuple(np.geomspace(1e-3, 1e-2, 8)),
    tol: ToleranceConfig = DEFAULT_TOL,
) -> ExpansionReport:
    """Fit the second-order response of the square-root likelihood ratio.

    Writes ``R_h = I + (1/2) h^i L_i + B(h)`` with the canonical ratio of
    ``rho_{theta0+h}`` relative to ``rho_{theta0}`` and fits ``Tr rho B(h)``
    to a quadratic form, which should match ``-(1/8) Re J``.  Also reports
    the decay order of ``|Tr rho R_h^2 - 1|`` (must exceed 2) and of the
    residual against the predicted quadratic.
    """
    theta0 = np.asarray(theta0, dtype=float)
    d = theta0.shape[0]
    rho0 = _mat(model.state_at(theta0))
    L = slds(model, theta0, tol)
    J = qfi_matrix(rho0, L, tol)
    target = -0.125 * J.real

    directions = [np.eye(d)[i] for i in range(d)]
    pair_index = {}
    for i in range(d):
        for j in range(i + 1, d):
            pair_index[(i, j)] = len(directions)
            directions.append((np.eye(d)[i] + np.eye(d)[j]) / np.sqrt(2.0))

    scales = np.asarray(list(scales), dtype=float)
    samples = []
    values = np.empty((len(directions), scales.size))
    trr2_gap = np.zeros(scales.size)
    for k, u in enumerate(directions):
        for m, s in enumerate(scales):
            hvec = s * u
            dec = lebesgue_decompose(model.state_at(theta0 + hvec), rho0, tol)
            R = dec.sqrt_lr
            B = R - np.eye(R.shape[0]) - 0.5 * sum(hvec[i] * L[i] for i in range(d))
            values[k, m] = float(np.trace(rho0 @ B).real)
            trr2_gap[m] = max(trr2_gap[m], abs(float(np.trace(dec.ac).real) - 1.0))
            samples.append({"direction": k, "scale": float(s), "tr_rho_B": values[k, m]})

    coeffs = values @ (scales**2) / float(np.sum(scales**4))
    C = np.zeros((d, d))
    for i in range(d):
        C[i, i] = coeffs[i]
    for (i, j), k in pair_index.items():
        C[i, j] = C[j, i] = coeffs[k] - 0.5 * (coeffs[i] + coeffs[j])

    rel_error = matcore.frob(C - target) / max(matcore.frob(target), 1e-300)
    quad_residual = np.max(
        np.abs(values - np.array([[u @ target @ u * s**2 for s in scales] for u in directions])),
        axis=0,
    )
    residual_order, _ = _order_estimate(scales, quad_residual)
    trr2_order, trr2_exact = _order_estimate(scales, trr2_gap)
    return ExpansionReport(
        fitted_quadratic=C, target_quadratic=target, rel_error=float(rel_error),
        residual_order=residual_order, trr2_order=trr2_order, trr2_exact=trr2_exact,
        samples=samples,
    )


@dataclass
class RateScan:
    """Perturbation rate data: local defect ``f``, scaling ``g``, direction ``h``."""

    f: Callable[[np.ndarray], float]
    g: Callable[[int], float]
    h: np.ndarray
    grid: list[int]
    g2_bound: Optional[float] = None
    eps: float = 1e-3

    def __post_init__(self) -> None:
        self.h = np.asarray(self.h, dtype=float).reshape(-1)
        if not self.grid:
            raise ValueError("grid must be non-empty")


@dataclass
class RateScanReport:
    rows: list[dict]
    verdict: str
    notes: str


def rate_scan(scan: RateScan) -> RateScanReport:
    """Tabulate ``n f(h / g(n))`` and ``n / g(n)^2`` and classify the trend.

    Contiguous requires the first column to vanish (final value below ``eps``
    with a non-increasing tail) and the second to stay bounded; a clearly
    non-vanishing first column or a growing unbounded second column gives
    NotContiguous; ambiguous trends are Inconclusive.
    """
    rows = []
    for n in scan.grid:
        gn = scan.g(int(n))
        rows.append({
            "n": int(n),
            "n_f": float(n * scan.f(scan.h / gn)),
            "n_over_g2": float(n / gn**2),
        })
    nf = [row["n_f"] for row in rows]
    ng2 = [row["n_over_g2"] for row in rows]
    nf_tail, ng2_tail = _tail(nf), _tail(ng2)

    nf_vanishes = nf[-1] <= scan.eps and _nonincreasing(nf_tail)
    nf_nonvanishing = nf[-1] > scan.eps and nf_tail[-1] >= nf_tail[0] * (1 - 1e-9)
    if scan.g2_bound is not None:
        g2_bounded = max(ng2_tail) <= scan.g2_bound
        g2_unbounded = not g2_bounded
    else:
        g2_bounded = _nonincreasing(ng2_tail, slack=1e-9)
        g2_unbounded = ng2_tail[-1] > ng2_tail[0] * (1 + 1e-9) and ng2[-1] > ng2[0] * (1 + 1e-6)

    if nf_vanishes and g2_bounded:
        verdict, notes = CONTIGUOUS, "n*f vanishes and n/g^2 stays bounded"
    elif nf_nonvanishing or g2_unbounded:
        verdict, notes = NOT_CONTIGUOUS, "criterion violated on the sampled tail"
    else:
        verdict, notes = INCONCLUSIVE, "trends ambiguous on the sampled grid"
    return RateScanReport(rows=rows, verdict=verdict, notes=notes)
