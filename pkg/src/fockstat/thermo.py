"""Canonical and grand-canonical thermodynamics of non-interacting gases.

Units: k_B = 1 throughout; temperatures are energies (beta = 1/T).  The
single-mode partition function is the character evaluated at y = exp(-beta
(eps - mu)); occupations follow from its logarithmic derivative, which for
order-one labels reduces to the familiar 1/((1/q) e^{beta(eps-mu)} +- 1).
Bosonic-like divergence (the condensation wall at the smallest positive root
of the defining polynomial) is detected exactly in rational arithmetic and
raised as a typed error, never returned as a NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .classify import (
    StatisticsSpec,
    build_polynomial,
    count_real_roots_upto,
    is_valid_statistics,
)
from .errors import DivergenceError, InvalidStatisticsError

__all__ = [
    "EnsembleParams",
    "ThermoReport",
    "SweepRow",
    "canonical_logZ",
    "grand_logZ",
    "mean_occupation",
    "solve_mu",
    "thermo_report",
    "sweep",
]

SOLVE_TOL = 1e-10
SOLVE_MAX_ITER = 200


@dataclass(frozen=True)
class EnsembleParams:
    """Inverse temperature and chemical potential."""

    beta: float
    mu: float = 0.0

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError(f"beta must be positive, got {self.beta}")


@dataclass(frozen=True)
class ThermoReport:
    logZ: float
    mean_N: float
    mean_E: float
    entropy: float
    occupations: tuple[float, ...]


@dataclass(frozen=True)
class SweepRow:
    epsilon: float
    n: float
    flag: str  # "ok" | "divergent"


def _require_valid(spec: StatisticsSpec) -> None:
    report = is_valid_statistics(spec)
    if not report.valid:
        raise InvalidStatisticsError(report)


def _diverges(spec: StatisticsSpec, t: float) -> bool:
    """Does the bosonic single-mode series diverge at y = e^t?

    The series converges exactly for y below the smallest positive root of
    the defining polynomial.  All roots have product 1/q_deg <= 1, so the
    smallest is <= 1 and any t >= 0 diverges; for t < 0 the root crossing
    is decided exactly over rationals.
    """
    if spec.is_fermionic_like:
        return False
    if t >= 0.0:
        return True
    y = math.exp(t)
    if y == 0.0:
        return False
    return count_real_roots_upto(build_polynomial(spec), Fraction(y)) >= 1


def _log_char(spec: StatisticsSpec, t: float) -> float:
    """log chi_1(e^t), numerically stable for any t in the convergent region."""
    if spec.is_fermionic_like:
        # log-sum-exp over the polynomial terms
        terms = [s * t + math.log(q) for s, q in enumerate(spec.q)]
        m = max(terms)
        return m + math.log(sum(math.exp(v - m) for v in terms))
    y = math.exp(t)
    value = _poly_value(build_polynomial(spec), y)
    return -math.log(value)


def _poly_value(coeffs: Sequence[int], y: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * y + c
    return acc


def _occupation_from_t(spec: StatisticsSpec, t: float) -> float:
    """Mean excitation y chi'(y)/chi(y) at y = e^t."""
    if spec.is_fermionic_like:
        if spec.order == 1 and spec.unique_vacuum:
            q = spec.q[1]
            x = -t  # beta (eps - mu)
            if x > 700.0:
                return q * math.exp(-x)
            return 1.0 / (math.exp(x) / q + 1.0)
        terms = [s * t + math.log(c) for s, c in enumerate(spec.q)]
        m = max(terms)
        weights = [math.exp(v - m) for v in terms]
        return sum(s * w for s, w in zip(range(len(weights)), weights)) / sum(weights)
    if spec.order == 1:
        q = spec.q[1]
        x = -t
        if x > 700.0:
            return q * math.exp(-x)
        return 1.0 / (math.exp(x) / q - 1.0)
    y = math.exp(t)
    coeffs = build_polynomial(spec)
    deriv = [s * c for s, c in enumerate(coeffs)][1:]
    return -y * _poly_value(deriv, y) / _poly_value(coeffs, y)


def canonical_logZ(spec: StatisticsSpec, energies: Sequence[float], beta: float) -> float:
    """log of the canonical partition function: sum_k log chi_1(e^{-beta eps_k})."""
    _require_valid(spec)
    if not beta > 0:
        raise ValueError("beta must be positive")
    total = 0.0
    for k, eps in enumerate(energies):
        t = -beta * eps
        if _diverges(spec, t):
            raise DivergenceError(mode=k)
        total += _log_char(spec, t)
    return total


def grand_logZ(
    spec: StatisticsSpec, energies: Sequence[float], params: EnsembleParams
) -> float:
    """log of the grand-canonical partition function."""
    _require_valid(spec)
    total = 0.0
    for k, eps in enumerate(energies):
        t = -params.beta * (eps - params.mu)
        if _diverges(spec, t):
            raise DivergenceError(mode=k)
        total += _log_char(spec, t)
    return total


def mean_occupation(spec: StatisticsSpec, epsilon: float, params: EnsembleParams) -> float:
    """Mean excitation of a single mode at the given energy."""
    _require_valid(spec)
    t = -params.beta * (epsilon - params.mu)
    if _diverges(spec, t):
        raise DivergenceError(mode=0)
    return _occupation_from_t(spec, t)


def _total_occupation(
    spec: StatisticsSpec, energies: Sequence[float], beta: float, mu: float
) -> float:
    total = 0.0
    for k, eps in enumerate(energies):
        t = -beta * (eps - mu)
        if _diverges(spec, t):
            raise DivergenceError(mode=k)
        total += _occupation_from_t(spec, t)
    return total


def _smallest_positive_root(spec: StatisticsSpec) -> float:
    """Numeric estimate of the bosonic convergence radius (exact guards are
    applied separately at every evaluation)."""
    coeffs = build_polynomial(spec)
    lo, hi = 0.0, 1.0
    # the smallest root is <= 1; bisect the first sign change of Q+
    for _ in range(200):
        mid = (lo + hi) / 2
        if _poly_value(coeffs, mid) > 0 and not _diverges(spec, math.log(mid) if mid > 0 else -1e9):
            lo = mid
        else:
            hi = mid
    return hi


def solve_mu(
    spec: StatisticsSpec,
    energies: Sequence[float],
    beta: float,
    target_N: float,
    *,
    tol: float = SOLVE_TOL,
    max_iter: int = SOLVE_MAX_ITER,
) -> float:
    """Chemical potential with total occupation equal to target_N within tol.

    Bisection on the (strictly increasing) total-occupation function; the
    bracket is expanded geometrically.  Fermionic-like targets must not
    exceed d * order, the supremum of the total excitation; targets at the
    supremum itself resolve to the finite mu reaching it within tolerance.
    """
    _require_valid(spec)
    if not energies:
        raise ValueError("need at least one mode")
    if not target_N > 0:
        raise ValueError(f"target_N must be positive, got {target_N}")
    d = len(energies)
    if spec.is_fermionic_like and target_N > d * spec.order:
        raise ValueError(
            f"target_N={target_N} out of range: total excitation saturates "
            f"at d * order = {d * spec.order}"
        )
    # aim just inside the feasible region so saturating targets stay solvable
    shifted = target_N - tol / 2

    def total(mu: float) -> float:
        return _total_occupation(spec, energies, beta, mu)

    e_min, e_max = min(energies), max(energies)
    if spec.is_fermionic_like:
        lo, hi = e_min - 1.0, e_max + 1.0
        step = 1.0
        for _ in range(300):
            if total(hi) >= shifted:
                break
            hi += step
            step *= 2
        else:
            raise ValueError(f"target_N={target_N} unreachable (out of range)")
    else:
        wall = e_min + math.log(_smallest_positive_root(spec)) / beta
        hi = wall - max(1e-9, 1e-9 * abs(wall))
        for _ in range(60):
            try:
                if total(hi) >= shifted:
                    break
            except DivergenceError:
                pass
            hi = wall - 2 * (wall - hi)
        else:
            raise ValueError(f"target_N={target_N} unreachable below divergence")
        # hi may have drifted below the wall far enough to undershoot; walk back
        while total(hi) < shifted and wall - hi > 1e-300:
            hi = wall - (wall - hi) / 2
        lo = hi - 1.0
    step = 1.0
    for _ in range(300):
        if total(lo) <= shifted:
            break
        lo -= step
        step *= 2
    else:
        raise ValueError("failed to bracket the chemical potential from below")

    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        value = total(mid)
        if abs(value - target_N) <= tol and value <= target_N:
            return mid
        if value < shifted:
            lo = mid
        else:
            hi = mid
    raise RuntimeError(
        f"chemical potential did not converge after {max_iter} iterations"
    )


def thermo_report(
    spec: StatisticsSpec, energies: Sequence[float], params: EnsembleParams
) -> ThermoReport:
    """Grand-canonical observables: logZ, occupations, energy, entropy.

    Entropy follows S = logZ + beta <E> - beta mu N (k_B = 1); the mean
    energy sum_i eps_i n_i is the exact -d(logZ)/d(beta) at fixed beta*mu
    for labels of every order.
    """
    _require_valid(spec)
    logZ = grand_logZ(spec, energies, params)
    occupations = tuple(
        _occupation_from_t(spec, -params.beta * (eps - params.mu))
        for eps in energies
    )
    mean_N = sum(occupations)
    mean_E = sum(e * n for e, n in zip(energies, occupations))
    entropy = logZ + params.beta * mean_E - params.beta * params.mu * mean_N
    return ThermoReport(
        logZ=logZ,
        mean_N=mean_N,
        mean_E=mean_E,
        entropy=entropy,
        occupations=occupations,
    )


def sweep(
    spec: StatisticsSpec,
    epsilon_range: tuple[float, float, int],
    params: EnsembleParams,
) -> list[SweepRow]:
    """Occupation-vs-energy table at fixed (beta, mu).

    Rows past the bosonic divergence wall are emitted with flag
    "divergent" and n = nan rather than dropped.
    """
    _require_valid(spec)
    lo, hi, steps = epsilon_range
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps == 1:
        grid = [float(lo)]
    else:
        grid = [lo + i * (hi - lo) / (steps - 1) for i in range(steps)]
    rows = []
    for eps in grid:
        try:
            n = mean_occupation(spec, eps, params)
            rows.append(SweepRow(epsilon=eps, n=n, flag="ok"))
        except DivergenceError:
            rows.append(SweepRow(epsilon=eps, n=float("nan"), flag="divergent"))
    return rows
