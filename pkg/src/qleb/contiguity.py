"""Finite-horizon contiguity diagnostics for sequences of state pairs.

Asymptotic statements (uniform integrability, liminf conditions) are not
decidable from finitely many samples, so every verdict issued here is backed
by one of four theorem-level criteria: declared matrix limits, purity of the
reference sequence, tensor-product structure, or a declared three-block
structure.  Anything else yields ``Inconclusive`` or a diagnostics-only
report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from . import matcore
from .errors import (
    BlocksInconsistent,
    DimVaries,
    FactorNotAC,
    MissingLimits,
    NotPure,
    NotPSD,
)
from .lebesgue import (
    DensityMatrix,
    _as_positive_operator,
    is_abs_continuous,
    lebesgue_decompose,
)
from .matcore import DEFAULT_TOL, ToleranceConfig, hermitian_part

CONTIGUOUS = "Contiguous"
NOT_CONTIGUOUS = "NotContiguous"
INCONCLUSIVE = "Inconclusive"


def default_grid(horizon: int, points: int = 13) -> list[int]:
    """Strictly increasing integer grid, roughly log-spaced over [1, horizon]."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    raw = np.unique(np.geomspace(1, horizon, num=points).astype(int))
    return [int(n) for n in raw]


def _tail(values: Sequence, frac: float = 0.25) -> list:
    k = max(2, int(np.ceil(len(values) * frac)))
    return list(values[-min(k, len(values)):])


def _nonincreasing(xs: Sequence[float], slack: float = 1e-9) -> bool:
    return all(b <= a * (1 + slack) + slack for a, b in zip(xs, xs[1:]))


def _mat(x) -> np.ndarray:
    return x.mat if isinstance(x, DensityMatrix) else np.asarray(x, dtype=complex)


@dataclass
class StateSequence:
    """Lazily evaluated family ``n -> (rho_n, sigma_n)`` of state pairs.

    ``declared_limits`` is the optional pair of limit states ``(rho_inf,
    sigma_inf)``; dimensions may vary with ``n`` unless a criterion requires
    otherwise.
    """

    eval: Callable[[int], tuple]
    declared_limits: Optional[tuple] = None
    horizon: int = 1000
    sample_grid: Optional[list[int]] = None

    def __post_init__(self) -> None:
        if self.sample_grid is None:
            self.sample_grid = default_grid(self.horizon)
        grid = list(self.sample_grid)
        if not grid or any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("sample_grid must be non-empty and strictly increasing")
        if grid[0] < 1 or grid[-1] > self.horizon:
            raise ValueError("sample_grid must lie within [1, horizon]")
        self.sample_grid = grid


@dataclass
class PurePowerFamily:
    """Tensor-power pair family ``n -> (rho_site(n)^(x m), sigma_site(n)^(x m))``.

    Only per-site matrices are ever materialized; the two pure-criterion
    statistics reduce to scalar powers, which keeps horizons of 10^6 copies
    cheap and exact.  ``copies`` maps the index ``n`` to the tensor power
    ``m`` (identity by default).
    """

    site: Callable[[int], tuple]
    copies: Callable[[int], int] = lambda n: n
    declared_trr2_limit: Optional[float] = None
    declared_overlap_limit: Optional[float] = None
    horizon: int = 10**6
    sample_grid: Optional[list[int]] = None

    def __post_init__(self) -> None:
        if self.sample_grid is None:
            self.sample_grid = default_grid(self.horizon)


@dataclass
class ProductFamily:
    """Factorwise family for tensor products ``rho_n = rho_1 x ... x rho_n``.

    ``summand_closed_form`` optionally supplies the analytic value of
    ``1 - Tr rho_i R_i``; ``series_converges`` is the user's declared
    classification of the associated series, used for the verdict when the
    closed form is given.
    """

    factors: Callable[[int], tuple]
    summand_closed_form: Optional[Callable[[int], float]] = None
    series_converges: Optional[bool] = None


@dataclass
class ContiguityReport:
    verdict: str
    criterion_used: str
    evidence: list[dict] = field(default_factory=list)
    notes: str = ""
    details: dict = field(default_factory=dict)


def tail_mass(rho, R: np.ndarray, M: float, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """``Tr rho R^2 P`` where ``P`` projects onto eigenvalues of ``R`` above ``M``."""
    if not M > 0:
        raise ValueError("threshold M must be positive")
    r = _mat(rho)
    w, V = matcore.eig_hermitian(R, tol)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    if scale > 0 and float(w.min()) < -tol.psd_floor * scale:
        raise NotPSD(f"R has negative eigenvalue {w.min():.3e}")
    w = np.maximum(w, 0.0)
    diag = np.einsum("ik,ij,jk->k", V.conj(), r, V).real
    return float(max(0.0, np.sum(w**2 * (w > M) * diag)))


def l2_norm_sq(rho, O: np.ndarray, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """``Tr rho O^2`` for a Hermitian observable ``O`` (always >= 0)."""
    r = _mat(rho)
    o = matcore.check_hermitian(O, tol)
    if r.shape != o.shape:
        raise matcore.DimMismatch(f"operand shapes differ: {r.shape} vs {o.shape}")
    return float(max(0.0, np.trace(r @ o @ o).real))


def finite_qcf(rho, observables: Sequence[np.ndarray], xis: Sequence[Sequence[float]],
               tol: ToleranceConfig = DEFAULT_TOL) -> complex:
    """Expectation of the ordered product ``prod_t exp(i xi_t . X)`` under rho."""
    r = _mat(rho)
    obs = [matcore.check_hermitian(np.asarray(X), tol) for X in observables]
    U = np.eye(r.shape[0], dtype=complex)
    for xi in xis:
        xi = np.asarray(xi, dtype=float)
        if xi.shape != (len(obs),):
            raise matcore.DimMismatch(
                f"query vector length {xi.shape} does not match {len(obs)} observables"
            )
        H = sum(c * X for c, X in zip(xi, obs))
        U = U @ matcore.unitary_exp(H, tol)
    return complex(np.trace(r @ U))


def d_infinitesimal_diagnostic(
    triples: Callable[[int], tuple],
    xi_grid: Sequence[Sequence[float]],
    eta_grid: Sequence[Sequence[float]],
    grid: Sequence[int],
    tol: ToleranceConfig = DEFAULT_TOL,
) -> ContiguityReport:
    """Finite-grid check of negligibility inside quasi-characteristic functions.

    ``triples(n)`` must return ``(rho, Z, O)``.  For each n the maximum over
    the supplied (xi, eta) query pairs of

        | Tr rho prod_t exp(i (xi_t Z + eta_t O)) - Tr rho prod_t exp(i xi_t Z) |

    is reported.  This is a diagnostic only: the definition quantifies over
    all finite grids, so no verdict is ever issued.
    """
    if any(len(q) > 3 for q in xi_grid):
        raise ValueError("diagnostic grids are limited to r <= 3 factors per query")
    if len(xi_grid) != len(eta_grid):
        raise ValueError("xi_grid and eta_grid must pair up")
    evidence = []
    for n in grid:
        rho, Z, O = triples(n)
        r = _mat(rho)
        worst = 0.0
        for xis, etas in zip(xi_grid, eta_grid):
            if len(xis) != len(etas):
                raise ValueError("each xi query must pair with an eta query of equal length")
            base = finite_qcf(r, [Z], [[x] for x in xis], tol)
            mixed = finite_qcf(r, [Z, O], [[x, e] for x, e in zip(xis, etas)], tol)
            worst = max(worst, abs(mixed - base))
        evidence.append({"n": int(n), "max_qcf_deviation": worst})
    return ContiguityReport(
        verdict=INCONCLUSIVE,
        criterion_used="DiagnosticsOnly",
        evidence=evidence,
        notes="finite-grid negligibility diagnostic; no verdict is licensed",
    )


def limit_criterion(
    seq: StateSequence,
    tol: ToleranceConfig = DEFAULT_TOL,
    limit_check_tol: float = 1e-3,
) -> ContiguityReport:
    """Verdict from declared limit states on a fixed-dimension sequence.

    Contiguous iff ``sigma_inf << rho_inf``, provided the sampled sequences
    confirm the declared limits (residual at the horizon below
    ``limit_check_tol``); otherwise the report is inconclusive.
    """
    if seq.declared_limits is None:
        raise MissingLimits("limit_criterion requires declared_limits")
    rho_inf = _as_positive_operator(seq.declared_limits[0], tol, "declared rho limit")
    sigma_inf = _as_positive_operator(seq.declared_limits[1], tol, "declared sigma limit")
    evidence = []
    for n in seq.sample_grid:
        rho_n, sigma_n = seq.eval(n)
        rho_n, sigma_n = _mat(rho_n), _mat(sigma_n)
        if rho_n.shape != rho_inf.shape or sigma_n.shape != sigma_inf.shape:
            raise DimVaries(
                f"dimension at n={n} ({rho_n.shape[0]}) differs from the declared "
                f"limit dimension ({rho_inf.shape[0]})"
            )
        evidence.append({
            "n": int(n),
            "rho_limit_residual": matcore.frob(rho_n - rho_inf),
            "sigma_limit_residual": matcore.frob(sigma_n - sigma_inf),
        })
    last = evidence[-1]
    confirmed = (
        last["rho_limit_residual"] <= limit_check_tol
        and last["sigma_limit_residual"] <= limit_check_tol
    )
    if not confirmed:
        return ContiguityReport(
            verdict=INCONCLUSIVE,
            criterion_used="LimitCriterion",
            evidence=evidence,
            notes=(
                "declared limits not confirmed at the horizon "
                f"(residuals {last['rho_limit_residual']:.3e}, "
                f"{last['sigma_limit_residual']:.3e} > {limit_check_tol:.1e})"
            ),
        )
    ac = is_abs_continuous(sigma_inf, rho_inf, tol)
    return ContiguityReport(
        verdict=CONTIGUOUS if ac else NOT_CONTIGUOUS,
        criterion_used="LimitCriterion",
        evidence=evidence,
        notes="limit states confirmed; verdict from absolute continuity of the limits",
    )


def _pure_stats_matrix(seq: StateSequence, tol: ToleranceConfig) -> list[dict]:
    rows = []
    for n in seq.sample_grid:
        rho_n, sigma_n = seq.eval(n)
        rho_n, sigma_n = _mat(rho_n), _mat(sigma_n)
        w = np.linalg.eigvalsh(rho_n)
        if int(np.sum(matcore.support_mask(w, tol))) != 1:
            raise NotPure(f"reference state at n={n} has rank != 1")
        dec = lebesgue_decompose(sigma_n, rho_n, tol)
        rows.append({
            "n": int(n),
            "tr_rho_R2": float(np.trace(dec.ac).real),
            "overlap": float(np.trace(rho_n @ sigma_n).real),
        })
    return rows


def _pure_stats_power(fam: PurePowerFamily, tol: ToleranceConfig) -> list[dict]:
    rows = []
    for n in fam.sample_grid:
        rho_s, sigma_s = fam.site(n)
        rho_s, sigma_s = _mat(rho_s), _mat(sigma_s)
        w = np.linalg.eigvalsh(rho_s)
        if int(np.sum(matcore.support_mask(w, tol))) != 1:
            raise NotPure(f"site reference state at n={n} has rank != 1")
        m = fam.copies(n)
        site_trr2 = float(np.trace(lebesgue_decompose(sigma_s, rho_s, tol).ac).real)
        site_overlap = float(np.trace(rho_s @ sigma_s).real)
        rows.append({
            "n": int(n),
            "tr_rho_R2": _float_power(site_trr2, m),
            "overlap": _float_power(site_overlap, m),
        })
    return rows


def _float_power(x: float, m: int) -> float:
    if x <= 0.0:
        return 0.0
    return float(np.exp(m * np.log(x)))


def pure_criterion(
    seq: StateSequence | PurePowerFamily,
    tol: ToleranceConfig = DEFAULT_TOL,
    eps_one: float = 1e-3,
    eps_overlap: float = 1e-6,
) -> ContiguityReport:
    """Criterion for pure reference sequences.

    Contiguous when ``Tr rho_n R_n^2`` reaches 1 within ``eps_one`` at the
    horizon (with a declared limit or a monotone trend) and the overlap
    ``Tr rho_n sigma_n`` stays above ``eps_overlap``; NotContiguous when the
    overlap is declared to vanish and does so numerically; Inconclusive
    otherwise.
    """
    if isinstance(seq, PurePowerFamily):
        rows = _pure_stats_power(seq, tol)
        declared_overlap = seq.declared_overlap_limit
        declared_trr2 = seq.declared_trr2_limit
    else:
        rows = _pure_stats_matrix(seq, tol)
        declared_overlap = declared_trr2 = None
        if seq.declared_limits is not None:
            lim_r = _mat(seq.declared_limits[0])
            lim_s = _mat(seq.declared_limits[1])
            declared_overlap = float(np.trace(lim_r @ lim_s).real)

    trr2 = [row["tr_rho_R2"] for row in rows]
    overlap = [row["overlap"] for row in rows]
    one_gap = [abs(t - 1.0) for t in trr2]
    trr2_ok = one_gap[-1] <= eps_one and (
        declared_trr2 == 1.0 or _nonincreasing(_tail(one_gap))
    )
    overlap_positive = min(_tail(overlap)) >= eps_overlap
    overlap_vanishes = overlap[-1] < eps_overlap and _nonincreasing(_tail(overlap))

    if trr2_ok and overlap_positive:
        verdict, notes = CONTIGUOUS, "Tr rho R^2 -> 1 and overlap bounded away from 0"
    elif overlap_vanishes and declared_overlap is not None and declared_overlap <= eps_overlap:
        verdict, notes = NOT_CONTIGUOUS, "overlap declared and observed to vanish"
    else:
        verdict, notes = INCONCLUSIVE, "statistics do not settle either hypothesis on this grid"
    return ContiguityReport(verdict=verdict, criterion_used="PureCriterion",
                            evidence=rows, notes=notes)


def _fidelity(rho: np.ndarray, sigma: np.ndarray, tol: ToleranceConfig) -> float:
    """``Tr sqrt(sqrt(sigma) rho sqrt(sigma))``, which equals ``Tr rho R``."""
    sq = matcore.psd_sqrt(sigma, tol)
    w = np.linalg.eigvalsh(hermitian_part(sq @ rho @ sq))
    return float(np.sum(np.sqrt(np.maximum(w, 0.0))))


def _kakutani_summands(fam: ProductFamily, idx: np.ndarray, tol: ToleranceConfig) -> np.ndarray:
    """Summands ``1 - Tr rho_i R_i`` for all factors, with the AC precondition check.

    Uniform-dimension families go through stacked eigensolves; ``sigma_i <<
    rho_i`` is equivalent to ``rank(sqrt(sigma) rho sqrt(sigma)) = rank(sigma)``,
    which reuses the same spectra.
    """
    pairs = [fam.factors(int(i)) for i in idx]
    mats = [(_mat(r), _mat(s)) for r, s in pairs]
    dims = {r.shape[0] for r, _ in mats}
    if len(dims) == 1:
        rhos = np.stack([r for r, _ in mats])
        sigmas = np.stack([s for _, s in mats])
        w_s, V_s = np.linalg.eigh(sigmas)
        w_s = np.maximum(w_s, 0.0)
        sqrt_sigma = np.einsum("nik,nk,njk->nij", V_s, np.sqrt(w_s), V_s.conj())
        inner = sqrt_sigma @ rhos @ sqrt_sigma
        inner = (inner + inner.conj().swapaxes(-1, -2)) / 2
        w_m = np.maximum(np.linalg.eigvalsh(inner), 0.0)
        rank_sigma = (w_s > tol.rank_rel * w_s.max(axis=1, keepdims=True)).sum(axis=1)
        rank_inner = (w_m > tol.rank_rel * np.maximum(w_m.max(axis=1, keepdims=True), 1e-300)).sum(axis=1)
        bad = np.nonzero(rank_inner < rank_sigma)[0]
        if bad.size:
            raise FactorNotAC(
                f"factor {int(idx[bad[0]])}: sigma_i is not absolutely continuous w.r.t. rho_i"
            )
        return np.maximum(0.0, 1.0 - np.sqrt(w_m).sum(axis=1))
    out = np.empty(len(mats), dtype=float)
    for k, (r, s) in enumerate(mats):
        if not is_abs_continuous(s, r, tol):
            raise FactorNotAC(
                f"factor {int(idx[k])}: sigma_i is not absolutely continuous w.r.t. rho_i"
            )
        out[k] = max(0.0, 1.0 - _fidelity(r, s, tol))
    return out


def kakutani_criterion(
    fam: ProductFamily,
    horizon: int = 10**4,
    tol: ToleranceConfig = DEFAULT_TOL,
    margin: float = 0.15,
    boundary_slack: float = 0.02,
    summand_floor: float = 1e-15,
) -> ContiguityReport:
    """Product-state criterion: contiguity iff ``sum_i (1 - Tr rho_i R_i)`` converges.

    The summands are evaluated through the fidelity identity and classified by
    a log-log tail fit of their decay exponent ``p`` over the last half of the
    factor range: ``p >= 1 + margin`` reads as convergent, while fits at or
    below the divergence boundary (``p <= 1 + boundary_slack``) read as
    divergent; anything between is Inconclusive.  A user-supplied closed form
    with a declared series classification overrides the fit-based verdict.
    """
    idx = np.arange(1, horizon + 1)
    summands = _kakutani_summands(fam, idx, tol)
    partial = np.cumsum(summands)
    sample_at = np.unique(np.geomspace(1, horizon, num=25).astype(int))
    evidence = [
        {"i": int(i), "summand": float(summands[i - 1]), "partial_sum": float(partial[i - 1])}
        for i in sample_at
    ]
    closed_form_dev = None
    if fam.summand_closed_form is not None:
        closed = np.array([fam.summand_closed_form(int(i)) for i in idx])
        closed_form_dev = float(np.max(np.abs(closed - summands)))

    tail_mask = idx >= max(2, horizon // 2)
    fit_mask = tail_mask & (summands > summand_floor)
    p_fit = None
    notes = []
    if np.count_nonzero(fit_mask) >= 8:
        x = np.log(idx[fit_mask].astype(float))
        y = np.log(summands[fit_mask])
        slope, _ = np.polyfit(x, y, 1)
        p_fit = float(-slope)
        notes.append(f"fitted decay exponent p={p_fit:.4f} on the last half of the factors")
    elif np.all(summands[tail_mask] <= summand_floor):
        # All tail summands vanish; the series is trivially summable.
        p_fit = float("inf")
        notes.append("tail summands are numerically zero; series trivially convergent")

    if fam.summand_closed_form is not None and fam.series_converges is not None:
        verdict = CONTIGUOUS if fam.series_converges else NOT_CONTIGUOUS
        notes.append(
            f"verdict from the declared series classification "
            f"(closed-form max deviation {closed_form_dev:.3e})"
        )
    elif p_fit is None:
        verdict = INCONCLUSIVE
        notes.append("insufficient usable tail samples for a decay fit")
    elif p_fit >= 1.0 + margin:
        verdict = CONTIGUOUS
    elif p_fit <= 1.0 + boundary_slack:
        verdict = NOT_CONTIGUOUS
    else:
        verdict = INCONCLUSIVE
        notes.append("fitted exponent sits in the undecidable band around the boundary")

    return ContiguityReport(
        verdict=verdict, criterion_used="Kakutani", evidence=evidence,
        notes="; ".join(notes),
        details={"fitted_exponent": p_fit, "closed_form_deviation": closed_form_dev},
    )


@dataclass
class BlockSequence:
    """Declared three-block structure ``n -> (rho2, rho1, rho0, sigma0, sigma1, sigma2)``.

    Layout (dims d1, d2, d3 may grow with n):

        rho   = [[rho2, rho1, 0], [rho1*, rho0, 0], [0, 0, 0]]
        sigma = [[0, 0, 0], [0, sigma0, sigma1], [0, sigma1*, sigma2]]

    ``full_eval`` optionally supplies the assembled states for a consistency
    check at the indices in ``consistency_ns``.  The normalized inner pair
    ``(rho0/Tr, sigma0/Tr)`` is judged by the limit criterion against
    ``inner_limits``.
    """

    blocks: Callable[[int], tuple]
    grid: list[int]
    inner_limits: Optional[tuple] = None
    full_eval: Optional[Callable[[int], tuple]] = None
    consistency_ns: Optional[list[int]] = None


def _assemble_blocks(parts: tuple) -> tuple[np.ndarray, np.ndarray]:
    rho2, rho1, rho0, sigma0, sigma1, sigma2 = [np.asarray(b, dtype=complex) for b in parts]
    d1, d2, d3 = rho2.shape[0], rho0.shape[0], sigma2.shape[0]
    d = d1 + d2 + d3
    rho = np.zeros((d, d), dtype=complex)
    rho[:d1, :d1] = rho2
    rho[:d1, d1:d1 + d2] = rho1
    rho[d1:d1 + d2, :d1] = rho1.conj().T
    rho[d1:d1 + d2, d1:d1 + d2] = rho0
    sigma = np.zeros((d, d), dtype=complex)
    sigma[d1:d1 + d2, d1:d1 + d2] = sigma0
    sigma[d1:d1 + d2, d1 + d2:] = sigma1
    sigma[d1 + d2:, d1:d1 + d2] = sigma1.conj().T
    sigma[d1 + d2:, d1 + d2:] = sigma2
    return rho, sigma


def block_criterion_diagnostics(
    bseq: BlockSequence,
    tol: ToleranceConfig = DEFAULT_TOL,
    eps: float = 1e-3,
) -> ContiguityReport:
    """Three-block criterion: hypothesis checks plus a delegated inner verdict.

    Verifies (a) ``Tr rho0`` bounded away from zero, (b) ``Tr sigma0 -> 1``,
    (c) strict positivity of the two declared blocks, and (d) optional
    reassembly consistency, then delegates the normalized inner pair to the
    limit criterion.  Contiguous only when everything holds.
    """
    evidence = []
    hypotheses_ok = True
    flags = []
    for n in bseq.grid:
        parts = bseq.blocks(n)
        rho2, rho1, rho0, sigma0, sigma1, sigma2 = [np.asarray(b, dtype=complex) for b in parts]
        tr_rho0 = float(np.trace(rho0).real)
        tr_sigma0 = float(np.trace(sigma0).real)
        upper = np.block([[rho2, rho1], [rho1.conj().T, rho0]])
        lower = np.block([[sigma0, sigma1], [sigma1.conj().T, sigma2]])
        w_up = np.linalg.eigvalsh(hermitian_part(upper))
        w_lo = np.linalg.eigvalsh(hermitian_part(lower))
        # Strict positivity of a declared block is tested at a near-machine
        # relative threshold: the blocks may legitimately carry eigenvalues far
        # below the rank cutoff used elsewhere.
        strict = 1e-14
        pd_ok = bool(
            w_up.min() > strict * max(w_up.max(), 0.0)
            and w_lo.min() > strict * max(w_lo.max(), 0.0)
        )
        if not pd_ok:
            hypotheses_ok = False
            flags.append(f"declared blocks not strictly positive at n={n}")
        evidence.append({
            "n": int(n),
            "tr_rho0": tr_rho0,
            "tr_sigma0_gap": abs(1.0 - tr_sigma0),
            "blocks_positive": pd_ok,
        })

    if bseq.full_eval is not None:
        for n in bseq.consistency_ns or bseq.grid[:2]:
            got_rho, got_sigma = bseq.full_eval(n)
            exp_rho, exp_sigma = _assemble_blocks(bseq.blocks(n))
            if not (matcore.mat_close(_mat(got_rho), exp_rho, tol)
                    and matcore.mat_close(_mat(got_sigma), exp_sigma, tol)):
                raise BlocksInconsistent(f"reassembled blocks differ from supplied states at n={n}")

    tr0_tail = _tail([row["tr_rho0"] for row in evidence])
    gap_tail = _tail([row["tr_sigma0_gap"] for row in evidence])
    if min(tr0_tail) < eps:
        hypotheses_ok = False
        flags.append("Tr rho0 not bounded away from zero on the sampled tail")
    if evidence[-1]["tr_sigma0_gap"] > eps or not _nonincreasing(gap_tail, slack=1e-6):
        hypotheses_ok = False
        flags.append("Tr sigma0 does not approach 1 on the sampled tail")

    def inner(n: int):
        _, _, rho0, sigma0, _, _ = bseq.blocks(n)
        rho0, sigma0 = np.asarray(rho0, dtype=complex), np.asarray(sigma0, dtype=complex)
        return (rho0 / np.trace(rho0).real, sigma0 / np.trace(sigma0).real)

    inner_seq = StateSequence(
        eval=inner,
        declared_limits=bseq.inner_limits,
        horizon=bseq.grid[-1],
        sample_grid=bseq.grid,
    )
    if bseq.inner_limits is None:
        inner_report = ContiguityReport(
            verdict=INCONCLUSIVE, criterion_used="LimitCriterion",
            notes="no inner limits declared",
        )
    else:
        inner_report = limit_criterion(inner_seq, tol)

    if hypotheses_ok and inner_report.verdict == CONTIGUOUS:
        verdict = CONTIGUOUS
        notes = "all block hypotheses verified; inner pair contiguous"
    else:
        verdict = INCONCLUSIVE
        notes = "; ".join(flags + [f"inner verdict: {inner_report.verdict}"])
    return ContiguityReport(
        verdict=verdict, criterion_used="BlockCriterion", evidence=evidence, notes=notes,
        details={
            "inner_verdict": inner_report.verdict,
            "inner_notes": inner_report.notes,
        },
    )
