"""Closed-form rate functions, the crossover constant and the bound report."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .extremal import lower_bound_R, upper_bound_R
from .setfam import GroundParams


def _check_b(b: float):
    if not b > 2:
        raise ValueError(f"rate functions need b > 2, got {b}")


def log_r_rate(b: float) -> float:
    """log of (b-2)^(b-2) (b-1)^(2-2b) b^b.

    The ln b terms cancel exactly, which keeps large b free of cancellation.
    """
    _check_b(b)
    return (b - 2) * math.log1p(-2 / b) + (2 - 2 * b) * math.log1p(-1 / b)


def log_f(b: float) -> float:
    # half the rRate exponent pattern, plus log 2
    return math.log(2) + 0.5 * log_r_rate(b)


@dataclass(frozen=True)
class RateFunctions:
    b: float
    krsg: float
    containers: float
    r_rate: float
    f: float


def eval_rates(b: float) -> RateFunctions:
    _check_b(b)
    lr = log_r_rate(b)
    return RateFunctions(
        b=b,
        krsg=4 * math.exp(lr),
        containers=2 * b / (b - 2),
        r_rate=math.exp(lr),
        f=math.exp(log_f(b)),
    )


def crossover_equation(b: float) -> float:
    """(b-1) ln((b-2) b / (b-1)^2) + ln 2; zero where the two upper rates meet."""
    return (b - 1) * math.log((b - 2) * b / (b - 1) ** 2) + math.log(2)


def crossover(tol: float = 1e-10) -> float:
    lo, hi = 2.0, 4.0
    # equation -> -inf as b -> 2+, positive at 4
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if mid <= 2 or crossover_equation(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class BoundReport:
    params: GroundParams
    exp_lower: float
    factorial_lower: Fraction
    factorial_upper: float
    min_degree_d: float
    m_value_used: int

    def to_json(self) -> dict:
        return {
            "k": self.params.k,
            "ell": self.params.ell,
            "exp_lower": self.exp_lower,
            "factorial_lower": str(self.factorial_lower),
            "factorial_lower_float": float(self.factorial_lower),
            "factorial_upper": self.factorial_upper,
            "min_degree_D": self.min_degree_d,
            "M_used": self.m_value_used,
        }


def min_degree_threshold(m_value: int, k: int) -> float:
    """Minimum degree that rules out (k, ell)-choosability, given M(k, ell)."""
    if m_value < 2:
        raise ValueError("M value must be at least 2")
    lm = math.log(m_value)
    return 12 * m_value**2 * lm * math.log(k) * (1 + math.sqrt(1 + 1 / (3 * lm))) ** 2


def bound_report(params: GroundParams, m_value: int) -> BoundReport:
    k, ell = params.k, params.ell
    low = lower_bound_R(params)
    up = upper_bound_R(params)
    return BoundReport(
        params=params,
        exp_lower=math.exp((k - 1) ** 2 / ell),
        factorial_lower=low.exact,
        factorial_upper=up.approx,
        min_degree_d=min_degree_threshold(m_value, k),
        m_value_used=m_value,
    )


def log_lower_bound_R(k: int, ell: int) -> float:
    """log of the factorial lower bound on R(k, ell) via log-gamma."""
    lg = math.lgamma
    return lg(ell + 1) + lg(ell - 2 * k + 2) - lg(ell - k + 1) - lg(ell - k + 2)


def rate_convergence(b: float, k_max: int) -> list[float]:
    """log(lower_bound_R(k, floor(b k))) / k for k = 2..k_max."""
    _check_b(b)
    if k_max > 500:
        raise ValueError("k_max must be at most 500")
    return [log_lower_bound_R(k, math.floor(b * k)) / k for k in range(2, k_max + 1)]


def curve_rows(b_from: float, b_to: float, step: float) -> Iterator[RateFunctions]:
    if step <= 0:
        raise ValueError("step must be positive")
    if not 2 < b_from < b_to:
        raise ValueError("need 2 < b_from < b_to")
    n = int(math.floor((b_to - b_from) / step + 1e-9))
    for i in range(n + 1):
        yield eval_rates(b_from + i * step)


def emit_curves(b_from: float, b_to: float, step: float) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["b", "krsg", "containers", "r_rate"])
    for r in curve_rows(b_from, b_to, step):
        w.writerow([repr(r.b), repr(r.krsg), repr(r.containers), repr(r.r_rate)])
    return buf.getvalue()
