"""Closed-form evaluators for the information-theoretic limits of the tests.

These are the explicit quantities appearing in the impossibility arguments:
the chi-square exponent nu, the Bhattacharyya coefficient of the
goodness-of-fit testing pair, the resulting chi-square upper bound, and the
two-sample converse chain (tau, gamma, beta, risk lower bound). Everything is
evaluated in log space where underflow is a risk, so the evaluators remain
finite-or-flagged up to n around 10^6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from scipy.special import gammaln, logsumexp

__all__ = [
    "BoundReport",
    "nu",
    "gof_bc_bound",
    "gof_chi2_bound",
    "gamma_entropy_upper",
    "tst_converse",
]

# Le Cam criterion: a chi-square bound below this value certifies that no
# test can achieve risk below 0.25.
CHI2_RISK_QUARTER = 3.08


@dataclass(frozen=True)
class BoundReport:
    nu: float
    bc: float
    chi2_upper: float
    chi2_risk_quarter_flag: bool
    tau: float
    gamma_upper: float
    beta_upper: Optional[float]
    tst_risk_lower: Optional[float]


def nu(n: int, a: float, b: float) -> float:
    """Per-pair chi-square exponent (a-b)^2 (1/(a(1-a/n)) + 1/(b(1-b/n)))."""
    if not (0 < a < n and 0 < b < n):
        raise ValueError("a and b must lie strictly between 0 and n")
    return (a - b) ** 2 * (1.0 / (a * (1.0 - a / n)) + 1.0 / (b * (1.0 - b / n)))


def gof_bc_bound(n: int, s: int, a: float, b: float) -> float:
    """Bhattacharyya coefficient of the s-change goodness-of-fit pair.

    The s(n-s) pairs that flip polarity each contribute a factor
    sqrt(ab)/n + sqrt((1-a/n)(1-b/n)); the rest contribute 1.
    """
    if not (0 <= a <= n and 0 <= b <= n):
        raise ValueError("a and b must lie in [0, n]")
    if not 0 <= s <= n:
        raise ValueError("s must lie in [0, n]")
    base = math.sqrt(a * b) / n + math.sqrt((1.0 - a / n) * (1.0 - b / n))
    exponent = s * (n - s)
    if exponent == 0:
        return 1.0
    if base == 0.0:
        return 0.0
    return math.exp(exponent * math.log(base))


def gof_chi2_bound(n: int, s: int, a: float, b: float) -> tuple[float, bool]:
    """Chi-square upper bound exp((s^2/n)(e^{2 nu} - 1)) and the Le Cam flag.

    Returns (bound, flag); the flag is set when the bound certifies that the
    risk cannot fall below 0.25. Overflow is reported as +inf.
    """
    v = nu(n, a, b)
    try:
        inner = math.expm1(2.0 * v)
        exponent = (s * s / n) * inner
        bound = math.exp(exponent) if exponent < 700 else math.inf
    except OverflowError:
        bound = math.inf
    return bound, bound < CHI2_RISK_QUARTER


def _log_binom(n: int, k: int) -> float:
    return gammaln(n + 1) - gammaln(k + 1) - gammaln(n - k + 1)


def _log_gamma_overlap(n: int, s: int) -> float:
    """log of sum_{k even, k < s} C(n/2, k/2)^2 / C(n, n/2).

    This is the probability that two uniform balanced partitions fall within
    distortion s of one another.
    """
    half = n // 2
    terms = [2.0 * _log_binom(half, k // 2) for k in range(0, s, 2)]
    if not terms:
        return -math.inf
    return float(logsumexp(terms) - _log_binom(n, half))


def gamma_entropy_upper(n: int, s: int) -> float:
    """Analytic bound sqrt(2n/pi^2) 2^{-n(1 - h2(s/n))} on the collision probability.

    h2 is the binary entropy in bits. Looser than the exact sum but useful as
    a closed form for large n.
    """
    if not 0 < s < n:
        raise ValueError("s must lie in (0, n)")
    p = s / n
    h2 = -(p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p))
    log2_val = 0.5 * math.log2(2.0 * n / math.pi ** 2) - n * (1.0 - h2)
    return math.exp(log2_val * math.log(2.0)) if log2_val < 1000 else math.inf


def tst_converse(n: int, s: int, a: float, b: float) -> BoundReport:
    """Evaluate the two-sample converse chain and bundle all bound values.

    tau = SNR * n / (2n - a - b); gamma is the balanced-partition collision
    probability; beta <= 2^{4 tau} / (1 - 4 tau) whenever tau < 1/4, in which
    case the risk of any test is at least 1 - sqrt(log(beta / (1 - gamma))).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    if not 0 <= s < n / 2 + 1:
        raise ValueError("s must lie in [0, n/2]")
    lam = (a - b) ** 2 / (a + b) if a + b > 0 else 0.0
    tau = lam * n / (2.0 * n - a - b)
    gamma_upper = math.exp(_log_gamma_overlap(n, s)) if s >= 1 else 0.0
    beta_upper = None
    risk_lower = None
    if tau < 0.25:
        beta_upper = math.exp(4.0 * tau * math.log(2.0)) / (1.0 - 4.0 * tau)
        if gamma_upper < 1.0:
            ratio = beta_upper / (1.0 - gamma_upper)
            risk_lower = 1.0 - math.sqrt(max(math.log(ratio), 0.0))
    v = nu(n, a, b) if (0 < a < n and 0 < b < n) else math.nan
    chi2_upper, flag = (
        gof_chi2_bound(n, s, a, b) if not math.isnan(v) else (math.nan, False)
    )
    return BoundReport(
        nu=v,
        bc=gof_bc_bound(n, s, a, b),
        chi2_upper=chi2_upper,
        chi2_risk_quarter_flag=flag,
        tau=tau,
        gamma_upper=gamma_upper,
        beta_upper=beta_upper,
        tst_risk_lower=risk_lower,
    )
