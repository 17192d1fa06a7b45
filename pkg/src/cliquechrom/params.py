"""Parameter schedule and closed-form bound calculus for G(n, p).

Everything here is a finite-n evaluation of the asymptotic recipe: the case
split on the sparsity exponent rho = log_n(1/p), the derived series
r_i = e^{zeta*i} and x_i = log(n)/(phi(r_i - 1) p), the Lambda/Pi bound on
the fraction of spoiled clique candidates, the Janson exponent lower bounds,
and the leading-order predictions for the clique chromatic number.

All powers are assembled in log-space, so nothing over- or underflows even
for n around 1e300; scalar quantities use numpy's extended-precision long
double for extra headroom, while the long i-indexed series are summed
chunked in float64 (pairwise reduction keeps the error near 1e-15 relative,
far inside every stated tolerance). Natural logarithms are used throughout.
The series have ~log^4(n) log(1/p) terms, so evaluation is instantaneous at
desk scale but is refused with an error once direct summation would stop
being feasible (roughly ln(n) > 200 with small p).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from math import comb
from typing import Optional

import numpy as np

__all__ = [
    "SIGMA",
    "ALPHA",
    "NU",
    "phi",
    "ParamSchedule",
    "make_schedule",
    "build_schedule",
    "refined_delta",
    "class_count",
    "LambdaReport",
    "lambda_report",
    "JansonExponents",
    "janson_exponent",
    "janson_pair_sum_bound",
    "InequalityReport",
    "inequality_check",
    "Prediction",
    "predicted_bounds",
]

SIGMA = 1.0 / 100.0
ALPHA = 4.0 / 5.0
NU = 1.0 / 10.0

_LD = np.longdouble
_CHUNK = 1 << 20


def phi(x: float) -> float:
    """(1+x)*log(1+x) - x, the Chernoff rate function; domain x > -1."""
    if x <= -1.0:
        raise ValueError("phi requires x > -1")
    if x == 0.0:
        return 0.0
    return (1.0 + x) * math.log1p(x) - x


def _phi_arr(x: np.ndarray) -> np.ndarray:
    """Vectorized phi with a series branch: the closed form cancels to
    O(x^2) for tiny x, so below 1e-4 use x^2 (1/2 - x/6 + x^2/12 - x^3/20)."""
    naive = (1.0 + x) * np.log1p(np.where(x > -1.0, x, 0.0)) - x
    series = x * x * (0.5 - x / 6.0 + x * x / 12.0 - x * x * x / 20.0)
    return np.where(np.abs(x) < 1e-4, series, naive)


def class_count(n: float, p: float, delta: float) -> int:
    """s = floor(delta * log_{1/(1-p)}(n))."""
    return math.floor(delta * math.log(n) / -math.log1p(-p))


def _tau(n: float, p: float, delta: float) -> float:
    """Concentration slack for the mutual-non-neighbor count.

    max of 2*log(n)/(np) and sqrt(32 log^2(n) / (n^(1-delta) p (1 - log(n)/(np)))).
    Degenerates to +inf when np <= log(n); callers treat that as "no
    guarantee", which makes the first branch of ell_1 vacuous.
    """
    ln_n = math.log(n)
    first = 2.0 * ln_n / (n * p)
    bracket = 1.0 - ln_n / (n * p)
    if bracket <= 0.0:
        return math.inf
    second = math.sqrt(32.0 * ln_n * ln_n / (n ** (1.0 - delta) * p * bracket))
    return max(first, second)


@dataclass(frozen=True)
class ParamSchedule:
    """All scalar parameters for one (n, p) cell, plus the derived series."""

    n: float
    p: float
    epsilon: float
    rho: float
    zeta: float
    delta: float
    s: int
    m: int
    k: int
    tau: float
    ell0: float
    sigma: float = SIGMA
    alpha: float = ALPHA
    nu: float = NU
    delta_clamped: bool = False
    delta_raw: float = field(default=math.nan)

    def r(self, i: int) -> float:
        return math.exp(self.zeta * i)

    def x(self, i: int) -> float:
        return math.log(self.n) / (phi(self.r(i) - 1.0) * self.p)

    @property
    def s_degenerate(self) -> bool:
        return self.s < 1

    @property
    def tau_degenerate(self) -> bool:
        return not self.tau < 1.0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "epsilon": self.epsilon,
            "rho": self.rho,
            "zeta": self.zeta,
            "delta": self.delta,
            "delta_raw": self.delta_raw,
            "delta_clamped": self.delta_clamped,
            "s": self.s,
            "m": self.m,
            "k": self.k,
            "sigma": self.sigma,
            "alpha": self.alpha,
            "nu": self.nu,
            "tau": self.tau,
            "ell0": self.ell0,
        }


def make_schedule(
    n: float,
    p: float,
    *,
    delta: float,
    m: int,
    k: int,
    epsilon: float,
    delta_clamped: bool = False,
    delta_raw: Optional[float] = None,
) -> ParamSchedule:
    """Assemble a schedule from explicit primary choices, deriving the rest.

    Useful for tests and what-if evaluation; `build_schedule` is the
    canonical recipe.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    if n < 3:
        raise ValueError("n must be >= 3")
    ln_n = math.log(n)
    rho = math.log(1.0 / p) / ln_n
    zeta = 1.0 / ln_n**4
    s = class_count(n, p, delta)
    tau = _tau(n, p, delta)
    s_eff = max(s, 1)
    # ell_0 = ell_1(emptyset): second branch of the max is -2np < 0.
    first = (1.0 - tau) * n ** (1.0 - delta) / s_eff if tau < 1.0 else -math.inf
    ell0 = max(first, -2.0 * n * p)
    return ParamSchedule(
        n=float(n),
        p=float(p),
        epsilon=float(epsilon),
        rho=rho,
        zeta=zeta,
        delta=float(delta),
        s=s,
        m=int(m),
        k=int(k),
        tau=tau,
        ell0=ell0,
        delta_clamped=delta_clamped,
        delta_raw=delta if delta_raw is None else delta_raw,
    )


_DELTA_CLAMP = (0.01, 0.99)


def build_schedule(n: float, p: float, epsilon: float = SIGMA / 2.0) -> ParamSchedule:
    """The canonical parameter recipe, split on p >= n^(-sigma).

    Dense case (rho <= sigma): m = floor(2/(3 rho)), k = ceil(1/rho + 1/2),
    delta = 1/2 - 3 rho - 9 loglog(n)/log(n).
    Sparse case (rho > sigma):  m = 1, k = ceil(1/rho + [rho <= 4/15]/2),
    delta = min(epsilon, sigma/2).

    A delta outside (0, 1), which is routine at small n where the loglog
    correction dominates, is clamped to [0.01, 0.99] and flagged.
    """
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    if n < 3:
        raise ValueError("n must be >= 3")
    ln_n = math.log(n)
    rho = math.log(1.0 / p) / ln_n
    # The case split compares p against n^-sigma directly; deciding via the
    # recomputed rho flips boundary cases through float rounding.
    if p >= n**-SIGMA:
        m = math.floor(2.0 / (3.0 * rho))
        k = math.ceil(1.0 / rho + 0.5)
        delta_raw = 0.5 - 3.0 * rho - 9.0 * math.log(ln_n) / ln_n
    else:
        m = 1
        half = 0.5 if rho <= 4.0 / 15.0 else 0.0
        k = math.ceil(1.0 / rho + half)
        delta_raw = min(epsilon, SIGMA / 2.0)
    clamped = not (0.0 < delta_raw < 1.0)
    delta = min(max(delta_raw, _DELTA_CLAMP[0]), _DELTA_CLAMP[1]) if clamped else delta_raw
    return make_schedule(
        n,
        p,
        delta=delta,
        m=m,
        k=k,
        epsilon=epsilon,
        delta_clamped=clamped,
        delta_raw=delta_raw,
    )


def refined_delta(n: float, epsilon: float) -> float:
    """Sharper delta for the very sparse regime p = n^(-2/5 + epsilon):
    min(1 - 5 rho/2, rho) - 9 loglog(n)/log(n), with rho = 2/5 - epsilon."""
    if epsilon <= 0.0:
        raise ValueError("epsilon must be positive")
    rho = 0.4 - epsilon
    ln_n = math.log(n)
    return min(1.0 - 2.5 * rho, rho) - 9.0 * math.log(ln_n) / ln_n


# -- Lambda / Pi calculus -------------------------------------------------------


@dataclass(frozen=True)
class LambdaReport:
    lambda0: float
    pi_alpha: float
    pi_invlog: float
    lam: float
    counting_ok: bool  # 1 - Lambda >= nu
    nu: float


_TERM_LIMIT = 500_000_000


def _check_series_length(i_max: int, what: str) -> None:
    # The defining series has ~log^4(n) log(1/p) terms; around ln(n) > 200
    # with small p that stops being directly summable in reasonable time.
    if i_max > _TERM_LIMIT:
        raise ValueError(
            f"{what} series has {i_max} terms; direct summation is infeasible "
            "at this (n, p)"
        )


def _pi_series_terms(sch: ParamSchedule, lo: int, hi: int) -> np.ndarray:
    """Terms x_i * ((r_{i+1} p)^(k-m) - (r_i p)^(k-m)) for i in [lo, hi)."""
    km = sch.k - sch.m
    ln_n = math.log(sch.n)
    ln_p = math.log(sch.p)
    zeta = sch.zeta
    i = np.arange(lo, hi, dtype=np.float64)
    x = np.expm1(zeta * i)  # r_i - 1
    x_i = ln_n / (_phi_arr(x) * sch.p)
    log_base = km * (ln_p + zeta * i)
    step = math.expm1(zeta * km)  # (e^{zeta (k-m)} - 1)
    return x_i * np.exp(log_base) * step


def _pi_sum(sch: ParamSchedule, cutoff: float, reverse: bool = False) -> float:
    """Direct summation of Pi_cutoff over i >= 2 with p * r_i <= cutoff."""
    if cutoff <= 0.0 or sch.p > cutoff:
        return 0.0
    # p * e^(zeta i) <= cutoff  <=>  i <= (log cutoff - log p)/zeta
    i_max = math.floor((math.log(cutoff) - math.log(sch.p)) / sch.zeta)
    if i_max < 2:
        return 0.0
    _check_series_length(i_max, "Pi")
    total = 0.0
    spans = range(2, i_max + 1, _CHUNK)
    if reverse:
        spans = reversed(list(spans))
    for lo in spans:
        hi = min(lo + _CHUNK, i_max + 1)
        terms = _pi_series_terms(sch, lo, hi)
        if reverse:
            terms = terms[::-1]
        total += float(np.add.reduce(terms))
    return total


def _lambda0(sch: ParamSchedule) -> np.longdouble:
    km = sch.k - sch.m
    ln_n = _LD(np.log(_LD(sch.n)))
    ln_p = _LD(np.log(_LD(sch.p)))
    zeta = _LD(sch.zeta)
    # x_1 in log-space to dodge intermediate under/overflow.
    log_x1 = np.log(ln_n) - np.log(_phi_arr(np.expm1(zeta))) - ln_p
    term1 = _LD(sch.m + 1) * np.exp(log_x1 + km * (ln_p + 2 * zeta))
    term2 = np.exp(np.log(_LD(sch.n)) + sch.k * (ln_p + zeta))
    return term1 + term2


def lambda_report(sch: ParamSchedule, reverse: bool = False) -> LambdaReport:
    """Evaluate Lambda = Lambda_0 + [m>=2] Pi_alpha + [m=1](Pi_{1/log n} + 0.7).

    Both Pi variants are reported regardless of the case; only the one the
    case selects enters Lambda. `reverse` flips the summation order of the
    series (a numerical self-check; the result must agree).
    """
    lambda0 = float(_lambda0(sch))
    pi_alpha = float(_pi_sum(sch, sch.alpha, reverse=reverse))
    pi_invlog = float(_pi_sum(sch, 1.0 / math.log(sch.n), reverse=reverse))
    if sch.m >= 2:
        lam = lambda0 + pi_alpha
    else:
        lam = lambda0 + (pi_invlog + 0.7)
    return LambdaReport(
        lambda0=lambda0,
        pi_alpha=pi_alpha,
        pi_invlog=pi_invlog,
        lam=lam,
        counting_ok=1.0 - lam >= sch.nu,
        nu=sch.nu,
    )


# -- Janson exponents -----------------------------------------------------------


@dataclass(frozen=True)
class JansonExponents:
    general: float
    improved: Optional[float]  # only in the m = 1 case


def janson_exponent(sch: ParamSchedule, a: int, b: int) -> JansonExponents:
    """Lower bounds on the Janson exponent mu^2 / (2 (mu + Delta)).

    General form: nu/4 * min((b/k^2)^2 p / k^2, (b/k^2)^k p^C(k,2) / k^2).
    For m = 1 the improved variant replaces one b/k^2 factor by a/k^2.
    """
    if a < 1 or b < 1:
        raise ValueError("a and b must be >= 1")
    k = sch.k
    ln_p = _LD(np.log(_LD(sch.p)))
    log_b = np.log(_LD(b) / _LD(k * k))
    log_a = np.log(_LD(a) / _LD(k * k))
    log_k2 = np.log(_LD(k * k))
    quarter_nu = _LD(sch.nu) / 4

    sparse = 2 * log_b + ln_p - log_k2
    dense = k * log_b + comb(k, 2) * ln_p - log_k2
    general = float(quarter_nu * np.exp(np.minimum(sparse, dense)))

    improved = None
    if sch.m == 1:
        sparse_i = log_a + log_b + ln_p - log_k2
        dense_i = log_a + (k - 1) * log_b + comb(k, 2) * ln_p - log_k2
        improved = float(quarter_nu * np.exp(np.minimum(sparse_i, dense_i)))
    return JansonExponents(general=general, improved=improved)


def janson_pair_sum_bound(sch: ParamSchedule, a: int, b: int, size_c: int) -> float:
    """Closed-form upper assembly of mu + Delta over candidate pairs:

        sum over overlaps r = x + y in [2, k] of
        size_c * C(k-m, x) * C(a-(k-m), (k-m)-x) * C(m, y) * b^(m-y)
               * p^(2 C(k,2) - C(r,2)).

    Dominates the exact pair sum  sum_{|J cap K| >= 2} p^{2C(k,2) - C(r,2)}.
    """
    k, m, p = sch.k, sch.m, sch.p
    km = k - m
    total = 0.0
    for r in range(2, k + 1):
        for y in range(0, min(m, r) + 1):
            x = r - y
            if not 0 <= x <= km:
                continue
            total += (
                size_c
                * comb(km, x)
                * comb(max(a - km, 0), km - x)
                * comb(m, y)
                * b ** (m - y)
                * p ** (2 * comb(k, 2) - comb(r, 2))
            )
    return total


# -- Inequality system ----------------------------------------------------------


@dataclass(frozen=True)
class InequalityReport:
    flags: dict[str, bool]
    values: dict[str, float]

    @property
    def all_pass(self) -> bool:
        return all(self.flags.values())


def _density_series_lhs(sch: ParamSchedule) -> float:
    """min over i >= 1 with r_i p <= 1 of ceil(x_i)(phi(r_i-1) p - log^3(n)/ell0)."""
    if sch.p >= 1.0:
        return math.inf
    i_max = math.floor(-math.log(sch.p) / sch.zeta)
    if i_max < 1:
        return math.inf
    _check_series_length(i_max, "density")
    ln_n = math.log(sch.n)
    correction = ln_n**3 / sch.ell0
    best = math.inf
    for lo in range(1, i_max + 1, _CHUNK):
        hi = min(lo + _CHUNK, i_max + 1)
        i = np.arange(lo, hi, dtype=np.float64)
        rate = _phi_arr(np.expm1(sch.zeta * i)) * sch.p
        x_i = np.ceil(ln_n / rate)
        vals = x_i * (rate - correction)
        best = min(best, float(vals.min()))
    return best


def inequality_check(sch: ParamSchedule, lam: Optional[LambdaReport] = None) -> InequalityReport:
    """Numerically evaluate the schedule's inequality system at this (n, p).

    Pure finite-n truth values; failures at small n are expected and carry
    no asymptotic meaning.
    """
    n, p, k, m = sch.n, sch.p, sch.k, sch.m
    ln_n = math.log(n)
    lnln_n = math.log(ln_n)
    lam = lam or lambda_report(sch)
    flags: dict[str, bool] = {}
    values: dict[str, float] = {}

    flags["k_range"] = m + 2 <= k <= ln_n
    values["k_range_upper"] = ln_n

    delta_cap = (
        min(0.5 - sch.rho, (k - 1) / k * (1.0 - sch.rho * (k / 2.0 + 1.0)))
        - 9.0 * lnln_n / ln_n
    )
    flags["delta_upper"] = sch.delta <= delta_cap
    values["delta_cap"] = delta_cap

    part_lhs = min(sch.ell0, n ** (1.0 - sch.delta) * p)
    part_rhs = max(16.0 * m * (1.0 + math.log(n * m)), 8.0 * k * k, ln_n**4)
    flags["partition_size"] = part_lhs >= part_rhs
    values["partition_lhs"] = part_lhs
    values["partition_rhs"] = part_rhs

    if sch.ell0 > 0.0:
        try:
            dens_lhs = _density_series_lhs(sch)
        except ValueError:
            dens_lhs = math.nan  # series too long for direct evaluation
        dens_rhs = 1.0 + max(math.log(n * ln_n**2 * math.e / sch.ell0), 0.0)
        flags["density_series"] = dens_lhs >= dens_rhs
        values["density_series_lhs"] = dens_lhs
        values["density_series_rhs"] = dens_rhs
    else:
        flags["density_series"] = False
        values["density_series_lhs"] = -math.inf
        values["density_series_rhs"] = math.inf

    flags["counting_margin"] = lam.counting_ok
    values["lambda"] = lam.lam

    flags["class_count"] = sch.s >= m + 1
    values["s"] = float(sch.s)

    if m >= 2:
        flags["case_p_large"] = p >= n**-sch.sigma
        formula = 0.5 - 3.0 * sch.rho - 9.0 * lnln_n / ln_n
        flags["delta_formula"] = sch.delta == formula
        values["delta_formula"] = formula
        if sch.ell0 > 0.0:
            lhs = (m + 1) * (phi(sch.alpha / p - 1.0) * p - ln_n**3 / sch.ell0)
            rhs = 1.0 + max(math.log(n * ln_n**2 * math.e / sch.ell0), 0.0)
            flags["density_alpha"] = lhs >= rhs
            values["density_alpha_lhs"] = lhs
            values["density_alpha_rhs"] = rhs
        else:
            flags["density_alpha"] = False
    else:
        flags["case_p_small"] = p < n**-sch.sigma
        formula = min(sch.epsilon, sch.sigma / 2.0)
        flags["delta_formula"] = sch.delta == formula
        values["delta_formula"] = formula

    return InequalityReport(flags=flags, values=values)


# -- Leading-order predictions ---------------------------------------------------


@dataclass(frozen=True)
class Prediction:
    label: str
    value: float
    in_range: bool


def predicted_bounds(n: float, p: float) -> list[Prediction]:
    """Leading-order predicted values (o(.) terms dropped) for the clique
    chromatic number, each with a heuristic applicability window on p."""
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    ln_n = math.log(n)
    rho = math.log(1.0 / p) / ln_n
    out = [
        Prediction("order_log_over_p", ln_n / p, n**-0.4 < p),
        Prediction("sparse_half", 0.5 * ln_n / p, rho <= SIGMA),
        Prediction(
            "very_sparse_5_2",
            2.5 * (0.4 * ln_n + math.log(p)) / p,
            n**-0.4 <= p <= n ** (-1.0 / 3.0),
        ),
        Prediction(
            "upper_refined",
            (0.5 - rho * (0.5 - rho)) * ln_n / p,
            n**-0.5 < p,
        ),
        Prediction(
            "one_third_order",
            3.0 * (ln_n / 3.0 + math.log(p)) / p,
            n ** (-1.0 / 3.0) <= p <= n ** (-1.0 / 3.75),
        ),
        Prediction(
            "half_log_base",
            0.5 * ln_n / -math.log1p(-p),
            rho <= SIGMA,
        ),
    ]
    return out
