"""Stationary degree distribution of preferential attachment with a hard cutoff.

Nodes of degree ``k_c`` are inert; the fractions ``n_k`` for
``m <= k <= k_c`` obey

    n_m     = nu / (m + nu)
    n_k     = (k - 1) n_{k-1} / (nu + k)          m < k < k_c
    n_{k_c} = (k_c - 1) n_{k_c-1} / nu

where ``nu`` is the total attachment rate per attachment event and per node,
fixed self-consistently by ``m * nu = sum_{k<k_c} k n_k``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_ITER = 1_000_000


class ConvergenceError(RuntimeError):
    def __init__(self, msg: str, last_nu: float):
        super().__init__(msg)
        self.last_nu = last_nu


@dataclass
class AnalyticSolution:
    m: int
    k_c: int
    nu: float
    n: dict[int, float]
    bulk_exponent: float
    spike_exponent: float
    iterations: int = 0

    @property
    def degrees(self) -> np.ndarray:
        return np.arange(self.m, self.k_c + 1)

    @property
    def values(self) -> np.ndarray:
        return np.array([self.n[k] for k in range(self.m, self.k_c + 1)])


def degree_fractions(m: int, k_c: int, nu: float) -> np.ndarray:
    """``n_k`` for ``k = m..k_c`` at a fixed ``nu``, by forward substitution."""
    if not k_c > m >= 1:
        raise ValueError(f"need k_c > m >= 1, got m={m}, k_c={k_c}")
    n = np.empty(k_c - m + 1)
    n[0] = nu / (m + nu)
    if k_c - m > 1:
        k = np.arange(m + 1, k_c, dtype=float)
        n[1:-1] = n[0] * np.cumprod((k - 1.0) / (nu + k))
    n[-1] = (k_c - 1) * n[-2] / nu
    return n


def _rate(m: int, k_c: int, nu: float) -> float:
    n = degree_fractions(m, k_c, nu)
    k = np.arange(m, k_c, dtype=float)
    return float(k @ n[:-1]) / m


def solve_master_equation(m: int, k_c: int, tol: float = 1e-12) -> AnalyticSolution:
    """Damped fixed-point iteration for ``nu``, started from the large-cutoff asymptote."""
    if not k_c > m >= 1:
        raise ValueError(f"need k_c > m >= 1, got m={m}, k_c={k_c}")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if k_c <= 2 * m:
        return saturated_solution(m, k_c)
    nu = min(max(asymptotic_nu(m, k_c), 1e-6), 2.0 * m - 1e-6)
    for it in range(1, MAX_ITER + 1):
        new = 0.5 * nu + 0.5 * _rate(m, k_c, nu)
        if abs(new - nu) < tol:
            nu = new
            break
        nu = new
    else:
        raise ConvergenceError(f"no convergence after {MAX_ITER} steps (nu={nu})", nu)
    n = degree_fractions(m, k_c, nu)
    return AnalyticSolution(
        m=m, k_c=k_c, nu=nu,
        n={k: float(v) for k, v in zip(range(m, k_c + 1), n)},
        bulk_exponent=1.0 + nu, spike_exponent=nu, iterations=it,
    )


def saturated_solution(m: int, k_c: int) -> AnalyticSolution:
    """The ``nu -> 0`` limit, the only stationary state when ``k_c <= 2m``.

    The rate map has slope ``(k_c - m) / m`` at ``nu = 0`` and lies below the
    diagonal everywhere when that slope is at most one: a mean degree of
    ``2m`` does not fit under the cutoff, so all mass ends at ``k_c``.
    """
    n = {k: 0.0 for k in range(m, k_c)}
    n[k_c] = 1.0
    return AnalyticSolution(m=m, k_c=k_c, nu=0.0, n=n, bulk_exponent=1.0, spike_exponent=0.0)


def asymptotic_nu(m: int, k_c: int) -> float:
    """Large-cutoff limit of ``nu``: ``2 - 2m/k_c``."""
    if k_c <= m:
        raise ValueError("k_c must exceed m")
    return 2.0 - 2.0 * m / k_c


def natural_cutoff(m: int, n: int, gamma: float) -> float:
    """Order-of-magnitude largest degree of an uncut scale-free network, ``m N^(1/(gamma-1))``."""
    if gamma <= 1 or n < 1 or m < 1:
        raise ValueError("need gamma > 1, n >= 1, m >= 1")
    return m * n ** (1.0 / (gamma - 1.0))
