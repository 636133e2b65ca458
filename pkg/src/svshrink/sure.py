"""Unbiased risk estimation for spectral shrinkage estimators.

For Y = X + sigma * G with i.i.d. standard Gaussian G, an estimator that
keeps the singular vectors of Y and replaces each singular value y_i by
eta(y_i) admits a closed-form divergence on simple positive spectra:

    div = sum_i eta'(y_i)
        + |n - m| * sum_i eta(y_i) / y_i
        + 2 * sum_{i != j} y_i * eta(y_i) / (y_i^2 - y_j^2)

and the unbiased risk estimate is

    SURE = -n*m*sigma^2 + sum_i (y_i - eta(y_i))^2 + 2*sigma^2 * div.

Because SURE is quadratic in the coefficients of a linear expansion of
fixed shrinkage atoms, the risk-optimal expansion solves a K-by-K normal
system in closed form; that solve, plus grid tuning for the classical
parametric rules, lives here.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ContractError, DegenerateSpectrumError, SolverFailureError
from .shrinkage import (
    Atn,
    ShrinkageRule,
    Svlet,
    SvletBasis,
    Svlt,
    Svst,
    dog_basis,
    dog_basis_deriv,
    risk_derivatives,
    risk_values,
)
from .spectral import DenoiseProblem, MatrixShape, SvdFactors

# Pairwise squared-value gaps below GAP_TOL_FACTOR * y_1^2 count as ties.
GAP_TOL_FACTOR = 1e-10
# Normal-system conditioning guard and its ridge fallback.
CONDITION_LIMIT = 1e12
RIDGE_FACTOR = 1e-10
SOLVE_RESIDUAL_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class SureReport:
    """One risk evaluation: the rule, its SURE value, and the two pieces
    (spectral residual and divergence) it decomposes into.  Grid tuning
    attaches the full list of (parameter tuple, SURE) pairs it visited."""

    rule: ShrinkageRule
    sure: float
    residual: float
    divergence: float
    trace: tuple = ()


@dataclass(frozen=True, eq=False)
class SvletSolve:
    """Closed-form solve of the expansion coefficients: normal matrix M,
    right-hand side c, coefficients a, plus conditioning diagnostics."""

    M: np.ndarray
    c: np.ndarray
    a: np.ndarray
    condition_estimate: float
    ridge_used: float
    rule: Svlet
    report: SureReport


def _checked_spectrum(spectrum: np.ndarray, shape: MatrixShape, gap_factor: float) -> np.ndarray:
    s = np.asarray(spectrum, dtype=float)
    if s.ndim != 1:
        raise ContractError(f"spectrum must be 1-D, got shape {s.shape}")
    if s.shape[0] != shape.L:
        raise ContractError(f"spectrum length {s.shape[0]} does not match min(n, m) = {shape.L}")
    if not np.all(np.isfinite(s)):
        raise ContractError("spectrum contains non-finite entries")
    if np.any(np.diff(s) > 0.0):
        raise ContractError("spectrum must be sorted in descending order")
    if s[-1] <= 0.0:
        k = int(np.argmax(s <= 0.0))
        raise DegenerateSpectrumError(
            f"singular value #{k + 1} is not strictly positive ({s[k]!r}); "
            "the closed-form divergence requires a strictly positive spectrum"
        )
    if s.shape[0] > 1:
        sq = s * s
        gaps = sq[:-1] - sq[1:]
        tol = gap_factor * sq[0]
        k = int(np.argmin(gaps))
        if gaps[k] <= tol:
            raise DegenerateSpectrumError(
                f"singular values #{k + 1} and #{k + 2} are numerically tied "
                f"(squared gap {gaps[k]:.3e} <= {tol:.3e}); the divergence formula "
                "requires a simple spectrum"
            )
    return s


def deterministic_jitter(spectrum: np.ndarray) -> np.ndarray:
    """Opt-in tie breaker for synthetic spectra.

    Subtracts 1e-9 * y_1 * (rank index) from each entry, which separates
    exact ties while preserving the descending order.  Real data should not
    need this; it exists so that hand-built degenerate examples can still be
    pushed through the divergence formula deliberately.
    """
    s = np.asarray(spectrum, dtype=float)
    if s.ndim != 1 or s.shape[0] < 1:
        raise ContractError(f"spectrum must be a non-empty 1-D array, got shape {s.shape}")
    return s - (1e-9 * s[0]) * np.arange(s.shape[0], dtype=float)


def _inv_gap_rowsums(s: np.ndarray) -> np.ndarray:
    """Row sums sum_{j != i} 1 / (y_i^2 - y_j^2)."""
    sq = s * s
    diff = sq[:, None] - sq[None, :]
    np.fill_diagonal(diff, np.inf)
    return np.sum(1.0 / diff, axis=1)


def divergence(
    spectrum: np.ndarray,
    rule: ShrinkageRule,
    shape: MatrixShape,
    *,
    gap_factor: float = GAP_TOL_FACTOR,
    _rowsums: np.ndarray | None = None,
) -> float:
    """Closed-form divergence of the induced spectral estimator.

    Uses the risk-side view of the rule (the unclamped linear form for a
    solved expansion), matching how the SURE objective is defined.
    """
    s = _checked_spectrum(spectrum, shape, gap_factor)
    vals = risk_values(rule, s)
    ders = risk_derivatives(rule, s)
    rowsums = _inv_gap_rowsums(s) if _rowsums is None else _rowsums
    total = float(np.sum(ders))
    total += abs(shape.n - shape.m) * float(np.sum(vals / s))
    total += 2.0 * float(np.dot(s * vals, rowsums))
    return total


def sure(
    problem: DenoiseProblem,
    factors: SvdFactors,
    rule: ShrinkageRule,
    *,
    gap_factor: float = GAP_TOL_FACTOR,
    _rowsums: np.ndarray | None = None,
) -> SureReport:
    """Unbiased estimate of ||Xhat - X||_F^2 for the spectral rule.

    The report satisfies sure = -n*m*sigma^2 + residual + 2*sigma^2*divergence
    by construction; residual is the spectral form sum_i (y_i - eta(y_i))^2.
    """
    shape = factors.shape
    if (problem.shape.n, problem.shape.m) != (shape.n, shape.m):
        raise ContractError(
            f"factors shape ({shape.n}, {shape.m}) does not match problem shape "
            f"({problem.shape.n}, {problem.shape.m})"
        )
    s = _checked_spectrum(factors.S, shape, gap_factor)
    vals = risk_values(rule, s)
    resid = float(np.sum((s - vals) ** 2))
    div = divergence(s, rule, shape, gap_factor=gap_factor, _rowsums=_rowsums)
    sigma2 = problem.sigma * problem.sigma
    value = -shape.n * shape.m * sigma2 + resid + 2.0 * sigma2 * div
    return SureReport(rule=rule, sure=value, residual=resid, divergence=div)


def svlet_clamp_gap(problem: DenoiseProblem, factors: SvdFactors, rule: Svlet) -> dict:
    """Difference between clamped and unclamped spectral residuals.

    The solve works with the unclamped expansion while application clamps
    negatives to zero; this reports how much the two residual terms differ
    on a given spectrum (verbose diagnostics).
    """
    if not isinstance(rule, Svlet):
        raise ContractError("clamp gap is defined for solved expansion rules only")
    s = factors.S
    idx = np.arange(1, s.shape[0] + 1, dtype=float)
    raw = rule._raw_vals(s, idx)
    clamped = np.maximum(raw, 0.0)
    r_raw = float(np.sum((s - raw) ** 2))
    r_clamped = float(np.sum((s - clamped) ** 2))
    return {
        "residual_unclamped": r_raw,
        "residual_clamped": r_clamped,
        "gap": abs(r_clamped - r_raw),
    }


def _solve_normal_system(M: np.ndarray, c: np.ndarray, K: int) -> tuple[np.ndarray, float, float]:
    sv = np.linalg.svd(M, compute_uv=False)
    cond = float("inf") if sv[-1] <= 0.0 else float(sv[0] / sv[-1])
    ridge = 0.0
    system = M
    if not np.isfinite(cond) or cond > CONDITION_LIMIT:
        ridge = RIDGE_FACTOR * float(np.trace(M)) / K
        system = M + ridge * np.eye(K)
    try:
        a = np.linalg.solve(system, c)
    except np.linalg.LinAlgError:
        if ridge == 0.0:
            ridge = RIDGE_FACTOR * float(np.trace(M)) / K
            try:
                a = np.linalg.solve(M + ridge * np.eye(K), c)
            except np.linalg.LinAlgError as exc:
                raise SolverFailureError(
                    f"normal system is singular even with ridge {ridge:.3e}; try a smaller K"
                ) from exc
        else:
            raise SolverFailureError(
                f"normal system is singular even with ridge {ridge:.3e}; try a smaller K"
            ) from None
    resid = float(np.linalg.norm(M @ a - c))
    bound = SOLVE_RESIDUAL_RTOL * float(np.linalg.norm(c))
    if resid > bound:
        raise SolverFailureError(
            f"normal-system residual {resid:.3e} exceeds {bound:.3e} "
            f"(condition estimate {cond:.3e}); try a smaller K"
        )
    return a, cond, ridge


def solve_expansion(
    spectrum: np.ndarray,
    shape: MatrixShape,
    sigma: float,
    K: int,
    T: float,
    *,
    fit_count: int | None = None,
    gap_factor: float = GAP_TOL_FACTOR,
) -> tuple[np.ndarray, np.ndarray, np.ndarray, float, float]:
    """Assemble and solve the K-by-K normal system for the expansion.

    Returns (M, c, a, condition_estimate, ridge_used).  With fit_count set,
    only the leading fit_count singular values enter the quadratic fit (the
    rest are forced to zero by the caller); the pairwise interaction sums
    inside the right-hand side still run over the whole spectrum.
    """
    s = _checked_spectrum(spectrum, shape, gap_factor)
    L = s.shape[0]
    if not isinstance(K, (int, np.integer)) or K < 1:
        raise ContractError(f"K must be an integer >= 1, got {K!r}")
    if not np.isfinite(T) or T <= 0.0:
        raise ContractError(f"T must be a finite positive number, got {T!r}")
    fit = L if fit_count is None else int(fit_count)
    if fit < 1 or fit > L:
        raise ContractError(f"fit_count must lie in [1, {L}], got {fit_count}")
    sigma2 = float(sigma) * float(sigma)
    rowsums = _inv_gap_rowsums(s)
    g = s - abs(shape.n - shape.m) * sigma2 / s - 2.0 * sigma2 * s * rowsums
    phi = dog_basis(s, int(K), float(T))
    phid = dog_basis_deriv(s, int(K), float(T))
    phi_fit = phi[:fit]
    M = phi_fit.T @ phi_fit
    M = 0.5 * (M + M.T)
    c = phi_fit.T @ g[:fit] - sigma2 * np.sum(phid[:fit], axis=0)
    a, cond, ridge = _solve_normal_system(M, c, int(K))
    return M, c, a, cond, ridge


def solve_svlet(problem: DenoiseProblem, factors: SvdFactors, K: int, C: float) -> SvletSolve:
    """Risk-optimal expansion coefficients for width T = C * sigma.

    The returned rule applies the solved expansion (with the non-negativity
    clamp); the attached report evaluates SURE for it.
    """
    if not isinstance(K, (int, np.integer)) or K < 1:
        raise ContractError(f"K must be an integer >= 1, got {K!r}")
    C = float(C)
    if not np.isfinite(C) or C <= 0.0:
        raise ContractError(f"C must be a finite positive number, got {C!r}")
    shape = factors.shape
    if (problem.shape.n, problem.shape.m) != (shape.n, shape.m):
        raise ContractError("factors do not match the problem's shape")
    T = C * problem.sigma
    M, c, a, cond, ridge = solve_expansion(factors.S, shape, problem.sigma, int(K), T)
    rule = Svlet(SvletBasis(K=int(K), T=T, a=a, C=C))
    report = sure(problem, factors, rule)
    return SvletSolve(
        M=M,
        c=c,
        a=a,
        condition_estimate=cond,
        ridge_used=ridge,
        rule=rule,
        report=report,
    )


@dataclass(frozen=True)
class GridSpec:
    """Overrides for tune_grid; any field left None takes the default grid
    derived from the spectrum (documented in tune_grid)."""

    thresholds: tuple | None = None
    gammas: tuple | None = None
    p1: float | None = None
    p2_values: tuple | None = None
    p3_values: tuple | None = None
    n_thresholds: int = 100
    n_p3: int = 50


_FAMILIES = {"svst": Svst, "atn": Atn, "svlt": Svlt}


def _family_name(family) -> str:
    if isinstance(family, str):
        name = family.lower()
        if name in _FAMILIES:
            return name
    elif family in _FAMILIES.values():
        return {v: k for k, v in _FAMILIES.items()}[family]
    raise ContractError(f"family must be one of {sorted(_FAMILIES)}, got {family!r}")


def _upper_half_grid(y1: float, count: int) -> np.ndarray:
    # count equally spaced points in (0, 0.5 * y1]: the open end excludes 0,
    # the closed end includes the midpoint of the spectrum range.
    return 0.5 * y1 * np.arange(1, count + 1, dtype=float) / count


def tune_grid(
    problem: DenoiseProblem,
    factors: SvdFactors,
    family,
    grid: GridSpec | None = None,
    *,
    gap_factor: float = GAP_TOL_FACTOR,
) -> SureReport:
    """Exhaustive SURE minimization over a parameter grid.

    Default grids (y1 the top singular value, L the spectrum length):
      svst: 100 thresholds equally spaced in (0, 0.5*y1]
      atn:  the same 100 thresholds crossed with integer gamma in [1, 20]
      svlt: p1 fixed at 100, integer p2 in [1, L], 50 offsets in (0, 0.5*y1]

    Ties are broken toward the lexicographically smallest parameter tuple;
    the winning report is returned with the full (params, sure) trace.
    """
    name = _family_name(family)
    grid = grid or GridSpec()
    s = _checked_spectrum(factors.S, factors.shape, gap_factor)
    y1 = float(s[0])
    L = s.shape[0]
    rowsums = _inv_gap_rowsums(s)

    if name == "svst":
        thresholds = grid.thresholds
        if thresholds is None:
            thresholds = _upper_half_grid(y1, grid.n_thresholds)
        candidates = [((float(lam),), Svst(lam=float(lam))) for lam in np.sort(np.asarray(thresholds, dtype=float))]
    elif name == "atn":
        thresholds = grid.thresholds
        if thresholds is None:
            thresholds = _upper_half_grid(y1, grid.n_thresholds)
        gammas = grid.gammas
        if gammas is None:
            gammas = np.arange(1, 21, dtype=float)
        candidates = [
            ((float(tau), float(g)), Atn(tau=float(tau), gamma=float(g)))
            for tau in np.sort(np.asarray(thresholds, dtype=float))
            for g in np.sort(np.asarray(gammas, dtype=float))
        ]
    else:
        p1 = 100.0 if grid.p1 is None else float(grid.p1)
        p2_values = grid.p2_values
        if p2_values is None:
            p2_values = np.arange(1, L + 1, dtype=float)
        p3_values = grid.p3_values
        if p3_values is None:
            p3_values = _upper_half_grid(y1, grid.n_p3)
        candidates = [
            ((p1, float(p2), float(p3)), Svlt(p1=p1, p2=float(p2), p3=float(p3)))
            for p2 in np.sort(np.asarray(p2_values, dtype=float))
            for p3 in np.sort(np.asarray(p3_values, dtype=float))
        ]
    if not candidates:
        raise ContractError("tuning grid is empty")

    trace = []
    best_report = None
    # Candidates are generated in lexicographic parameter order, so keeping
    # only strict improvements breaks ties toward the smallest tuple.
    for params, rule in candidates:
        report = sure(problem, factors, rule, gap_factor=gap_factor, _rowsums=rowsums)
        trace.append((params, report.sure))
        if best_report is None or report.sure < best_report.sure:
            best_report = report
    return replace(best_report, trace=tuple(trace))
