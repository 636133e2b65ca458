"""Singular-value shrinkage rules.

Each rule maps an observed singular value y_i (and, for the logistic rule,
its 1-based rank index i) to a replacement value, leaving the singular
vectors untouched.  Rules are frozen dataclasses validated at construction;
`apply` evaluates a rule on a whole spectrum and `derivative` gives the
analytic d(eta)/dy at fixed index, which the risk engine needs.

Derivative convention at a threshold point: the one-sided value from the
right (the branch the rule enters as y grows).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.special import expit

from .errors import ContractError

# Hard cap on the ATN exponent; beyond this the rule is indistinguishable
# from a hard threshold at double precision anyway.
GAMMA_MAX = 64.0


def dog_basis(spectrum: np.ndarray, K: int, T: float) -> np.ndarray:
    """Derivative-of-Gaussian expansion functions, L-by-K.

    Column k (0-based) is phi_{k+1}(y) = y * exp(-k * y^2 / (2 T^2)); the
    first column is the identity map, later columns decay the faster the
    larger y is, so the span can keep strong components while pulling the
    noise bulk toward zero.
    """
    y = np.asarray(spectrum, dtype=float)
    k = np.arange(K, dtype=float)
    return y[:, None] * np.exp(-np.outer(y * y, k) / (2.0 * T * T))


def dog_basis_deriv(spectrum: np.ndarray, K: int, T: float) -> np.ndarray:
    """Elementwise y-derivatives of dog_basis, L-by-K."""
    y = np.asarray(spectrum, dtype=float)
    k = np.arange(K, dtype=float)
    ysq = np.outer(y * y, k)
    return (1.0 - ysq / (T * T)) * np.exp(-ysq / (2.0 * T * T))


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ContractError(msg)


def _finite_scalar(x, name: str) -> float:
    x = float(x)
    _require(np.isfinite(x), f"{name} must be finite, got {x!r}")
    return x


@dataclass(frozen=True)
class Identity:
    """Keep every singular value: eta(y) = y."""

    def _vals(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return y.copy()

    def _ders(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return np.ones_like(y)


@dataclass(frozen=True)
class Zero:
    """Discard every singular value: eta(y) = 0."""

    def _vals(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return np.zeros_like(y)

    def _ders(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return np.zeros_like(y)


@dataclass(frozen=True)
class Svht:
    """Hard threshold: keep y if y > mu, else drop it."""

    mu: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "mu", _finite_scalar(self.mu, "mu"))
        _require(self.mu > 0.0, f"mu must be > 0, got {self.mu}")

    def _vals(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return np.where(y > self.mu, y, 0.0)

    def _ders(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return np.where(y >= self.mu, 1.0, 0.0)


@dataclass(frozen=True)
class Svst:
    """Soft threshold: eta(y) = max(y - lam, 0)."""

    lam: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "lam", _finite_scalar(self.lam, "lam"))
        _require(self.lam >= 0.0, f"lam must be >= 0, got {self.lam}")

    def _vals(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return np.maximum(y - self.lam, 0.0)

    def _ders(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return np.where(y >= self.lam, 1.0, 0.0)


@dataclass(frozen=True)
class Atn:
    """Adaptive trace-norm rule: eta(y) = y * max(1 - (tau/y)^gamma, 0).

    gamma = 1 recovers the soft threshold; as gamma grows the rule
    approaches the hard threshold at tau.  eta(0) = 0 by definition.
    """

    tau: float
    gamma: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "tau", _finite_scalar(self.tau, "tau"))
        object.__setattr__(self, "gamma", _finite_scalar(self.gamma, "gamma"))
        _require(self.tau > 0.0, f"tau must be > 0, got {self.tau}")
        _require(1.0 <= self.gamma <= GAMMA_MAX, f"gamma must lie in [1, {GAMMA_MAX:g}], got {self.gamma}")

    def _vals(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        out = np.zeros_like(y)
        above = y > self.tau  # below tau the clamp gives 0; also avoids 0^-gamma
        ya = y[above]
        out[above] = ya * (1.0 - (self.tau / ya) ** self.gamma)
        return out

    def _ders(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        out = np.zeros_like(y)
        on = y >= self.tau
        ya = y[on]
        out[on] = 1.0 + (self.gamma - 1.0) * (self.tau / ya) ** self.gamma
        return out


@dataclass(frozen=True)
class Svlt:
    """Logistic taper by rank index: eta(y_i) = max(y_i * w_i - p3, 0),
    with weight w_i = 1 / (1 + exp(p1 * (i - p2))) and i the 1-based index
    of the singular value in descending order."""

    p1: float
    p2: float
    p3: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "p1", _finite_scalar(self.p1, "p1"))
        object.__setattr__(self, "p2", _finite_scalar(self.p2, "p2"))
        object.__setattr__(self, "p3", _finite_scalar(self.p3, "p3"))
        _require(self.p1 >= 0.0, f"p1 must be >= 0, got {self.p1}")
        _require(self.p2 >= 1.0, f"p2 must be >= 1, got {self.p2}")
        _require(self.p3 >= 0.0, f"p3 must be >= 0, got {self.p3}")

    def _weights(self, idx: np.ndarray) -> np.ndarray:
        # expit(-z) = 1/(1+e^z), stable for p1*(i-p2) of either sign.
        return expit(-self.p1 * (idx - self.p2))

    def _vals(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return np.maximum(y * self._weights(idx) - self.p3, 0.0)

    def _ders(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        w = self._weights(idx)
        return np.where(y * w - self.p3 >= 0.0, w, 0.0)


@dataclass(frozen=True, eq=False)
class SvletBasis:
    """A solved expansion over the derivative-of-Gaussian family.

    T is the Gaussian width; by convention T = C * sigma when the basis is
    fitted to a problem with noise level sigma, and C is kept for reporting
    when known.  The coefficients a may be negative.
    """

    K: int
    T: float
    a: np.ndarray = field(repr=False)
    C: float | None = None

    def __post_init__(self) -> None:
        _require(isinstance(self.K, (int, np.integer)) and self.K >= 1, f"K must be an integer >= 1, got {self.K!r}")
        object.__setattr__(self, "K", int(self.K))
        object.__setattr__(self, "T", _finite_scalar(self.T, "T"))
        _require(self.T > 0.0, f"T must be > 0, got {self.T}")
        a = np.asarray(self.a, dtype=float)
        _require(a.ndim == 1 and a.shape[0] == self.K, f"a must be a length-{self.K} vector, got shape {a.shape}")
        _require(bool(np.all(np.isfinite(a))), "a contains non-finite entries")
        object.__setattr__(self, "a", a)
        if self.C is not None:
            C = _finite_scalar(self.C, "C")
            _require(C > 0.0, f"C must be > 0, got {C}")
            object.__setattr__(self, "C", C)


@dataclass(frozen=True, eq=False)
class Svlet:
    """Linear expansion of derivative-of-Gaussian atoms with a solved
    coefficient vector; applying it clamps negative outputs to zero."""

    basis: SvletBasis

    def __post_init__(self) -> None:
        _require(isinstance(self.basis, SvletBasis), f"basis must be an SvletBasis, got {type(self.basis).__name__}")

    def _raw_vals(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return dog_basis(y, self.basis.K, self.basis.T) @ self.basis.a

    def _raw_ders(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return dog_basis_deriv(y, self.basis.K, self.basis.T) @ self.basis.a

    def _vals(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        return np.maximum(self._raw_vals(y, idx), 0.0)

    def _ders(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        raw = self._raw_vals(y, idx)
        return np.where(raw < 0.0, 0.0, self._raw_ders(y, idx))


@dataclass(frozen=True)
class RmtOptimal:
    """Asymptotically optimal bulk shrinker on the calibrated scale.

    Expects singular values divided by sqrt(n) * sigma, where the noise
    bulk ends at 1 + sqrt(beta):
        eta(y) = sqrt((y^2 - beta - 1)^2 - 4 beta) / y   for y above the edge,
        eta(y) = 0                                        otherwise.
    """

    beta: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "beta", _finite_scalar(self.beta, "beta"))
        _require(0.0 < self.beta <= 1.0, f"beta must lie in (0, 1], got {self.beta}")

    @property
    def edge(self) -> float:
        return 1.0 + np.sqrt(self.beta)

    def _vals(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        out = np.zeros_like(y)
        above = y > self.edge
        ya = y[above]
        b = ya * ya - self.beta - 1.0
        # Rounding just above the edge can push the radicand a hair negative.
        out[above] = np.sqrt(np.maximum(b * b - 4.0 * self.beta, 0.0)) / ya
        return out

    def _ders(self, y: np.ndarray, idx: np.ndarray) -> np.ndarray:
        # The right-derivative diverges at the edge itself (square-root
        # onset); the edge point uses the bulk branch, which is 0.
        out = np.zeros_like(y)
        above = y > self.edge
        ya = y[above]
        b = ya * ya - self.beta - 1.0
        rad = np.sqrt(np.maximum(b * b - 4.0 * self.beta, 0.0))
        with np.errstate(divide="ignore"):
            out[above] = 2.0 * b / rad - rad / (ya * ya)
        return out


ShrinkageRule = Union[Identity, Zero, Svht, Svst, Atn, Svlt, Svlet, RmtOptimal]

_RULES = (Identity, Zero, Svht, Svst, Atn, Svlt, Svlet, RmtOptimal)


def _check_spectrum(spectrum: np.ndarray) -> np.ndarray:
    s = np.asarray(spectrum, dtype=float)
    if s.ndim != 1 or s.shape[0] < 1:
        raise ContractError(f"spectrum must be a non-empty 1-D array, got shape {s.shape}")
    if not np.all(np.isfinite(s)):
        raise ContractError("spectrum contains non-finite entries")
    if np.any(s < 0.0):
        raise ContractError("spectrum contains negative entries")
    if np.any(np.diff(s) > 0.0):
        raise ContractError("spectrum must be sorted in descending order")
    return s


def apply(rule: ShrinkageRule, spectrum: np.ndarray) -> np.ndarray:
    """Evaluate a rule entrywise on a descending non-negative spectrum.

    The output is non-negative and finite but need not be descending
    (the expansion rule in particular may reorder magnitudes).
    """
    if not isinstance(rule, _RULES):
        raise ContractError(f"unknown shrinkage rule: {type(rule).__name__}")
    s = _check_spectrum(spectrum)
    idx = np.arange(1, s.shape[0] + 1, dtype=float)
    out = rule._vals(s, idx)
    if not np.all(np.isfinite(out)):
        raise ContractError("rule produced non-finite output")
    return out


def derivative(rule: ShrinkageRule, y: float, i: int = 1) -> float:
    """Analytic d(eta)/dy at the point y, holding the rank index i fixed."""
    if not isinstance(rule, _RULES):
        raise ContractError(f"unknown shrinkage rule: {type(rule).__name__}")
    y = float(y)
    if not np.isfinite(y) or y <= 0.0:
        raise ContractError(f"derivative requires y > 0, got {y!r}")
    if i < 1:
        raise ContractError(f"index must be >= 1, got {i}")
    ya = np.asarray([y], dtype=float)
    ia = np.asarray([float(i)])
    return float(rule._ders(ya, ia)[0])


def risk_values(rule: ShrinkageRule, spectrum: np.ndarray) -> np.ndarray:
    """Rule outputs as seen by the risk engine.

    Identical to `apply` for every rule except the solved expansion, whose
    clamp is an application-time safeguard only: the quadratic risk model is
    built on the unclamped linear form, so the engine evaluates that form.
    """
    s = _check_spectrum(spectrum)
    idx = np.arange(1, s.shape[0] + 1, dtype=float)
    if isinstance(rule, Svlet):
        return rule._raw_vals(s, idx)
    if not isinstance(rule, _RULES):
        raise ContractError(f"unknown shrinkage rule: {type(rule).__name__}")
    return rule._vals(s, idx)


def risk_derivatives(rule: ShrinkageRule, spectrum: np.ndarray) -> np.ndarray:
    """Entrywise derivatives matching risk_values."""
    s = _check_spectrum(spectrum)
    idx = np.arange(1, s.shape[0] + 1, dtype=float)
    if isinstance(rule, Svlet):
        return rule._raw_ders(s, idx)
    if not isinstance(rule, _RULES):
        raise ContractError(f"unknown shrinkage rule: {type(rule).__name__}")
    return rule._ders(s, idx)
