"""Closed-form bounds, inequality checks and the r(f) log(n/r(f)) envelope.

Where both sides of an inequality are rational the comparison is exact.
Everything involving ``log``, ``sqrt`` or ``pi`` is compared in floats with
the slack :data:`FLOAT_SLACK`, scaled by ``max(1, |rhs|)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .spectrum import (LevelSpectrum, SymmetricFunction, binomial, level_spectrum,
                       level_weights, spectral_norm)
from .structure import R_functional, r_parameters

FLOAT_SLACK = 1e-12


def _holds(lhs: float, rhs: float) -> bool:
    """``lhs <= rhs`` up to the documented float slack."""
    return lhs <= rhs + FLOAT_SLACK * max(1.0, abs(rhs))


def binary_entropy(alpha) -> float:
    a = float(alpha)
    if not 0.0 <= a <= 1.0:
        raise ValueError("alpha must lie in [0, 1]")
    if a == 0.0 or a == 1.0:
        return 0.0
    return -a * math.log2(a) - (1.0 - a) * math.log2(1.0 - a)


def l1_upper_bound(n: int, r: int) -> float:
    """``2 r log2(n/r) + 3``, the bound on ``log2 ||f^||_1``."""
    if r < 1:
        raise ValueError("bound undefined; use r >= 1")
    if r > n:
        raise ValueError("r must not exceed n")
    return 2 * r * math.log2(n / r) + 3


def l1_counting_bound(n: int, r0: int, r1: int) -> int:
    """``1 + 2 (sum_{s<r0} C(n,s) + sum_{s<r1} C(n,s))``.

    Exact intermediate of the upper-bound argument, before the entropy
    estimate is applied.
    """
    return 1 + 2 * (sum(binomial(n, s) for s in range(r0))
                    + sum(binomial(n, s) for s in range(r1)))


def _r_side(n: int, r: int) -> int:
    return (n - r + 1) * (n - r) * binomial(n, r - 1)


def R_lower_bound(n: int, r0: int, r1: int) -> Fraction:
    if r0 < 1 or r1 < 1:
        raise ValueError("R lower bound needs r0, r1 >= 1")
    if r0 > n or r1 > n:
        raise ValueError("r0, r1 must not exceed n")
    return Fraction(_r_side(n, r0) + _r_side(n, r1), 2 ** n)


def R_lower_bound_sides(n: int, r0: int, r1: int) -> Fraction:
    """Same bound with a zero contribution from a side where ``r = 0``."""
    return Fraction(_r_side(n, r0) + _r_side(n, r1), 2 ** n)


def bias_upper_bound(n: int, r0: int, r1: int) -> Fraction:
    if not (0 <= r0 <= n and 0 <= r1 <= n):
        raise ValueError("r0, r1 must lie in [0, n]")
    tails = sum(binomial(n, s) for s in range(r0)) + sum(binomial(n, s) for s in range(r1))
    return Fraction(4 * tails, 2 ** n)


def g1_norm_closed_form(n: int) -> Fraction:
    """``1 - 2n/2^n + (2/2^n) sum_{k>=1} C(n,k) |n - 2k|`` for ``g_1``."""
    tail = sum(binomial(n, k) * abs(n - 2 * k) for k in range(1, n + 1))
    return 1 - Fraction(2 * n, 2 ** n) + Fraction(2 * tail, 2 ** n)


@dataclass(frozen=True)
class BinomialEstimateReport:
    n: int
    alpha: Fraction
    eq1: bool | None
    eq2: bool | None
    eq3: bool
    eq4: bool
    eq4_constants: dict

    @property
    def all_pass(self) -> bool:
        return all(v is not False for v in (self.eq1, self.eq2, self.eq3, self.eq4))


def _central_index(n: int, c: int) -> int:
    # floor(n/2 + c sqrt(n)) in exact integer arithmetic
    return (n + math.isqrt(4 * c * c * n)) // 2


def fit_central_constant(n_max: int, c: int) -> float | None:
    """Largest ``C`` with ``C(n, floor(n/2 + c sqrt n)) >= C 2^n / sqrt n`` for ``n <= n_max``.

    Only ``n`` where the index does not exceed ``n`` are admissible; returns
    ``None`` if there is none.
    """
    best = None
    for m in range(1, n_max + 1):
        j = _central_index(m, c)
        if j > m:
            continue
        value = float(Fraction(binomial(m, j), 2 ** m)) * math.sqrt(m)
        best = value if best is None else min(best, value)
    return best


def binomial_estimate_checks(n: int, alpha) -> BinomialEstimateReport:
    alpha = Fraction(alpha)
    if not 0 <= alpha <= Fraction(1, 2):
        raise ValueError("alpha must lie in [0, 1/2]")
    nh = n * binary_entropy(alpha)
    an = alpha * n
    eq1 = eq2 = None
    if an.denominator == 1:
        k = int(an)
        eq1 = _holds(math.log2(sum(binomial(n, s) for s in range(k + 1))), nh)
        eq2 = _holds(nh - math.log2(n + 1), math.log2(binomial(n, k)))
    log_floor = math.log2(binomial(n, math.floor(an)))
    eq3 = _holds(nh - math.log2(n * (n + 1)), log_floor) and _holds(log_floor, nh)
    constants = {c: fit_central_constant(n, c) for c in (1, 2)}
    eq4 = all(v is None or v > 0 for v in constants.values())
    return BinomialEstimateReport(n, alpha, eq1, eq2, eq3, eq4, constants)


@dataclass(frozen=True)
class EnvelopeRecord:
    n: int
    function_id: str
    r: int
    log_l1: float
    benchmark: float
    ratio: float | None


def envelope_ratio(f: SymmetricFunction, norm=None, r: int | None = None) -> EnvelopeRecord:
    """``log2 ||f^||_1 / (r log2(n/r))``; the ratio is ``None`` unless ``r > 1``."""
    if norm is None:
        norm = spectral_norm(level_spectrum(f))
    if r is None:
        r = r_parameters(f).r
    if isinstance(norm, Fraction):
        log_l1 = math.log2(norm.numerator) - math.log2(norm.denominator)
    else:
        log_l1 = math.log2(norm)
    benchmark = r * math.log2(f.n / r) if r >= 1 else 0.0
    ratio = log_l1 / benchmark if r > 1 else None
    return EnvelopeRecord(f.n, f.level_string(), r, log_l1, benchmark, ratio)


def noise_weighted_sum(spec: LevelSpectrum, rho, mirrored: bool = False) -> Fraction:
    """``sum_S |S|(n-|S|) f^(S)^2 rho^|S|`` (``rho^(n-|S|)`` when mirrored)."""
    rho = Fraction(rho)
    if not 0 <= rho <= 1:
        raise ValueError("rho must lie in [0, 1]")
    n = spec.n
    total = Fraction(0)
    for k, c in enumerate(spec.coeffs):
        if c and 0 < k < n:
            total += binomial(n, k) * k * (n - k) * c * c * rho ** (n - k if mirrored else k)
    return total


@dataclass(frozen=True)
class NoiseReport:
    c: Fraction
    rho: Fraction
    R: Fraction
    lhs6: Fraction
    rhs6: float
    lhs7: Fraction
    rhs7: float
    lhs8: Fraction
    rhs8: float

    @property
    def margins(self) -> tuple[float, float, float]:
        return (self.rhs6 - float(self.lhs6), self.rhs7 - float(self.lhs7),
                float(self.lhs8) - self.rhs8)

    @property
    def passes(self) -> tuple[bool, bool, bool]:
        return (_holds(float(self.lhs6), self.rhs6), _holds(float(self.lhs7), self.rhs7),
                _holds(self.rhs8, float(self.lhs8)))


def noise_inequality_report(f: SymmetricFunction, c) -> NoiseReport:
    """Both sides of the three noise-sensitivity inequalities at ``rho = 1 - c/n``.

    (6)  ``8 sum w rho^|S|       <= 4/sqrt(pi c) * 8 R``
    (7)  ``sum w rho^(n-|S|)     <= 4/sqrt(pi c) * R``
    (8)  ``sum w (1 - rho^|S| - rho^(n-|S|)) >= (1 - 8/sqrt(pi c)) R``
    with ``w = |S|(n-|S|) f^(S)^2``.
    """
    c = Fraction(c)
    if not 1 <= c <= f.n:
        raise ValueError("c must lie in [1, n]")
    spec = level_spectrum(f)
    rho = 1 - c / f.n
    R = R_functional(spec)
    forward = noise_weighted_sum(spec, rho)
    backward = noise_weighted_sum(spec, rho, mirrored=True)
    factor = 4 / math.sqrt(math.pi * float(c))
    return NoiseReport(
        c=c, rho=rho, R=R,
        lhs6=8 * forward, rhs6=factor * 8 * float(R),
        lhs7=backward, rhs7=factor * float(R),
        lhs8=R - forward - backward, rhs8=(1 - 2 * factor) * float(R),
    )


def claim_lhs(alpha0: float) -> float:
    root = math.sqrt(4 * alpha0 - 6 * alpha0 ** 2 + 4 * alpha0 ** 3)
    return binary_entropy(0.5 - 0.5 * root) + binary_entropy(alpha0) - 1


def entropy_claim_gap(alpha0) -> float:
    """Empirical constant of the entropy claim at ``alpha0``.

    ``[h(1/2 - sqrt(4a - 6a^2 + 4a^3)/2) + h(a) - 1] / ((1 - 2a) a log2(1/a))``
    """
    a = float(alpha0)
    if not 0.0 < a < 0.5:
        raise ValueError("alpha0 must lie strictly inside (0, 1/2)")
    return claim_lhs(a) / ((1 - 2 * a) * a * math.log2(1 / a))


def large_r_constant(c: float, beta: float) -> float:
    """``(e^{-c beta} + e^{-c(1-beta)})/2 - 8/sqrt(pi c)``; at least 1/10 for the chosen c, beta."""
    return (math.exp(-c * beta) + math.exp(-c * (1 - beta))) / 2 - 8 / math.sqrt(math.pi * c)


@dataclass(frozen=True)
class MonomialReport:
    mon: int
    bound: Fraction
    holds: bool


def monomial_report(f: SymmetricFunction, epsilon) -> MonomialReport:
    """Exact sparsity against ``(2n/eps^2) ||f^||_1^2``."""
    epsilon = Fraction(epsilon)
    if not 0 < epsilon < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    spec = level_spectrum(f)
    mon = sum(binomial(f.n, k) for k, c in enumerate(spec.coeffs) if c != 0)
    bound = 2 * f.n / epsilon ** 2 * spectral_norm(spec) ** 2
    return MonomialReport(mon, bound, mon <= bound)


def bias_mass(f: SymmetricFunction) -> Fraction:
    """``sum_{k>0} W_k`` of the window-normalized function (+1 on its window)."""
    report = r_parameters(f)
    g = f.times_parity() if report.chosen_pattern in ("+parity", "-parity") else f
    if report.chosen_pattern in ("-1", "-parity"):
        g = g.negated()
    return sum(level_weights(level_spectrum(g))[1:], Fraction(0))
