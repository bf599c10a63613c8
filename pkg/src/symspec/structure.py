"""Structural parameters r0, r1, r(f), Paturi's t0/t1 and the functional R(f)."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .spectrum import LevelSpectrum, SymmetricFunction, binomial

PATTERNS = ("+1", "-1", "+parity", "-parity")


def pattern_value(pattern: str, k: int) -> int:
    if pattern == "+1":
        return 1
    if pattern == "-1":
        return -1
    sign = 1 if k % 2 == 0 else -1
    if pattern == "+parity":
        return sign
    if pattern == "-parity":
        return -sign
    raise ValueError(f"unknown pattern {pattern!r}")


@dataclass(frozen=True)
class PatternFit:
    pattern: str
    r0: int
    r1: int
    valid: bool


@dataclass(frozen=True)
class StructureReport:
    n: int
    fits: tuple[PatternFit, ...]
    r0: int
    r1: int
    r: int
    clamped: bool
    chosen_pattern: str | None
    t0: int
    t1: int

    @property
    def window(self) -> tuple[int, int]:
        return self.r0, self.n - self.r1


def fit_pattern(f: SymmetricFunction, pattern: str) -> PatternFit:
    """Minimal (r0, r1) for one pattern under the split at ``ceil(n/2)``."""
    n = f.n
    mid = (n + 1) // 2
    low = [k for k in range(mid) if f(k) != pattern_value(pattern, k)]
    high = [k for k in range(mid, n + 1) if f(k) != pattern_value(pattern, k)]
    r0 = 1 + max(low) if low else 0
    r1 = n + 1 - min(high) if high else 0
    return PatternFit(pattern, r0, r1, 2 * r0 < n and 2 * r1 < n)


def r_parameters(f: SymmetricFunction) -> StructureReport:
    fits = tuple(fit_pattern(f, p) for p in PATTERNS)
    valid = [(max(fit.r0, fit.r1), fit.r0 + fit.r1, i) for i, fit in enumerate(fits) if fit.valid]
    t0, t1 = paturi_t(f)
    if valid:
        best = fits[min(valid)[2]]
        return StructureReport(f.n, fits, best.r0, best.r1, max(best.r0, best.r1),
                               False, best.pattern, t0, t1)
    half = f.n // 2
    return StructureReport(f.n, fits, half, half, half, True, None, t0, t1)


def paturi_t(f: SymmetricFunction) -> tuple[int, int]:
    """Minimal (t0, t1) with ``f(i) = f(i+1)`` for all ``i`` in ``[t0, n - t1]``.

    Violations below ``ceil(n/2)`` feed t0, the rest feed t1; each side is
    clamped to ``ceil(n/2)``.
    """
    n = f.n
    mid = (n + 1) // 2
    violations = [i for i in range(n) if f(i) != f(i + 1)]
    low = [i for i in violations if i < mid]
    high = [i for i in violations if i >= mid]
    t0 = 1 + max(low) if low else 0
    t1 = n + 1 - min(high) if high else 0
    return min(t0, mid), min(t1, mid)


def R_functional(spec: LevelSpectrum) -> Fraction:
    """``sum_S |S| (n - |S|) f^(S)^2``."""
    n = spec.n
    return sum((binomial(n, k) * k * (n - k) * c * c for k, c in enumerate(spec.coeffs)),
               Fraction(0))


def derivative_energy(f: SymmetricFunction) -> Fraction:
    """``sum_{i != j} E[f_ij^2]`` with ``f_ij(x) = f(x + e_i + e_j) - f(x)``.

    Only ``x_i = x_j`` contributes: flipping both bits moves the weight
    from ``m`` to ``m + 2``.
    """
    n = f.n
    if n < 2:
        raise ValueError("need two variables")
    acc = sum(binomial(n - 2, m) * (f(m + 2) - f(m)) ** 2 for m in range(n - 1))
    return Fraction(n * (n - 1) * acc, 2 * 2 ** (n - 2))


def derivative_energy_bruteforce(truth_table) -> Fraction:
    """Direct expectation over the whole cube, for any real-valued table."""
    table = np.asarray(truth_table, dtype=np.int64)
    size = table.shape[0]
    n = size.bit_length() - 1
    if n < 2:
        raise ValueError("need two variables")
    idx = np.arange(size)
    total = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                diff = table[idx ^ ((1 << i) | (1 << j))] - table
                total += int(np.dot(diff, diff))
    return Fraction(total, size)
