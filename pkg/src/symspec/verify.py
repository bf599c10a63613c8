"""Exhaustive invariant suite over all symmetric functions with ``n <= n_max``."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .approx import approx_spectral_norm
from .bounds import (bias_mass, bias_upper_bound, binomial_estimate_checks, l1_counting_bound,
                     l1_upper_bound, monomial_report, noise_inequality_report, R_lower_bound,
                     R_lower_bound_sides)
from .pdt import AUDIT_MAX, CertificateError, build_pdt, eval_pdt_table, l1_size_certificate, leaf_count
from .spectrum import (SymmetricFunction, brute_force_levels, level_spectrum, level_weights,
                       spectral_norm)
from .structure import R_functional, derivative_energy, derivative_energy_bruteforce, r_parameters

EXHAUSTIVE_MAX = 12
BRUTE_ENERGY_MAX = 10
LP_MAX = 8
NOISE_CS = (1, 4, 16)


@dataclass
class Check:
    """Running tally for one statement; margins are ``rhs - lhs`` (>= 0 means it holds)."""

    name: str
    checked: int = 0
    failures: int = 0
    worst_margin: Fraction | float | None = None
    worst_case: str | None = None
    counterexample: str | None = None

    def record(self, margin, case: str):
        self.checked += 1
        if self.worst_margin is None or margin < self.worst_margin:
            self.worst_margin, self.worst_case = margin, case
        if margin < 0:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = case

    def record_bool(self, ok: bool, case: str):
        self.record(0 if ok else -1, case)

    @property
    def passed(self) -> bool:
        return self.failures == 0


@dataclass
class VerifyReport:
    n_max: int
    checks: dict[str, Check] = field(default_factory=dict)

    def check(self, name: str) -> Check:
        if name not in self.checks:
            self.checks[name] = Check(name)
        return self.checks[name]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks.values())


def _float_margin(lhs: float, rhs: float) -> float:
    # same slack as the bounds module: tiny negative float noise is not a failure
    slack = 1e-12 * max(1.0, abs(rhs))
    margin = rhs - lhs
    return 0.0 if -slack <= margin < 0 else margin


def run_verify(n_max: int, inject_fault: bool = False,
               progress: Callable[[int], None] | None = None) -> VerifyReport:
    if not 1 <= n_max <= EXHAUSTIVE_MAX:
        raise ValueError(f"n_max must lie in [1, {EXHAUSTIVE_MAX}]")
    rep = VerifyReport(n_max)
    norm_cache: dict = {}
    for n in range(1, n_max + 1):
        if progress:
            progress(n)
        for index in range(2 ** (n + 1)):
            f = SymmetricFunction.from_index(n, index)
            _verify_function(rep, f, inject_fault, norm_cache)
        for alpha in (Fraction(1, 10), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2)):
            rep.check("binomial estimates").record_bool(
                binomial_estimate_checks(n, alpha).all_pass, f"n={n} alpha={alpha}")
    if n_max >= 3:
        maj3 = SymmetricFunction(3, (-1, -1, 1, 1))
        R = R_functional(level_spectrum(maj3))
        rep.check("maj3 equality R = R lower bound = 3/2").record_bool(
            R == R_lower_bound(3, 1, 1) == Fraction(3, 2), maj3.level_string())
    return rep


def _verify_function(rep: VerifyReport, f: SymmetricFunction, inject_fault: bool, norm_cache: dict):
    n, case = f.n, f.level_string()
    spec = level_spectrum(f)
    table = f.truth_table()

    oracle = brute_force_levels(table)
    rep.check("level spectrum = brute-force oracle").record_bool(list(spec.coeffs) == oracle, case)

    defect = sum(level_weights(spec), Fraction(0)) - 1
    if inject_fault:
        defect += Fraction(1, 2 ** n)
    rep.check("Parseval defect = 0").record_bool(defect == 0, case)

    R = R_functional(spec)
    if n >= 2:
        energy = derivative_energy(f)
        rep.check("derivative energy = 8R").record_bool(energy == 8 * R, case)
        if n <= BRUTE_ENERGY_MAX:
            rep.check("derivative energy = brute-force expectation").record_bool(
                energy == derivative_energy_bruteforce(table), case)

    norm = spectral_norm(spec)
    report = r_parameters(f)
    log_l1 = math.log2(norm.numerator) - math.log2(norm.denominator)
    if report.r >= 1:
        rep.check("log2 l1 <= 2 r log2(n/r) + 3").record(
            _float_margin(log_l1, l1_upper_bound(n, report.r)), case)
    else:
        rep.check("l1 <= 8 when r = 0").record(8 - norm, case)
    rep.check("l1 <= leaf counting bound").record(l1_counting_bound(n, report.r0, report.r1) - norm, case)

    if not report.clamped:
        rep.check("R >= R lower bound").record(R - R_lower_bound_sides(n, report.r0, report.r1), case)
        rep.check("bias mass <= 4 * tails").record(
            bias_upper_bound(n, report.r0, report.r1) - bias_mass(f), case)

    for c in sorted({*NOISE_CS, n}):
        if c > n:
            continue
        noise = noise_inequality_report(f, c)
        for label, margin in zip(("forward", "backward", "remainder"), noise.margins):
            slack = 1e-12 * max(1.0, abs(float(noise.R)))
            rep.check(f"noise inequality ({label})").record(
                0.0 if -slack <= margin < 0 else margin, f"{case} c={c}")

    mon = monomial_report(f, Fraction(1, 3))
    rep.check("monomials <= (2n/eps^2) l1^2").record(mon.bound - mon.mon, case)

    tree = build_pdt(f)
    rep.check("PDT evaluates f").record_bool(bool(np.array_equal(eval_pdt_table(tree), table)), case)
    count, leaves = leaf_count(tree)
    rep.check("PDT leaves <= 4 (C(n,r0) + C(n,r1))").record(leaves.bound_with_parity - count, case)
    try:
        l1_size_certificate(f, tree, AUDIT_MAX, norm_cache)
        ok = True
    except CertificateError:
        ok = False
    rep.check("l1 <= leaves, leaf indicators have norm 1").record_bool(ok, case)

    if n <= LP_MAX:
        rep.check("LP at eps = 0 recovers l1").record_bool(approx_spectral_norm(f, 0) == norm, case)


def report_dict(rep: VerifyReport) -> dict:
    def text(v):
        if v is None:
            return None
        return repr(v) if isinstance(v, float) else str(v)

    return {
        "schema": "symspec.verify/1",
        "n_max": rep.n_max,
        "passed": rep.passed,
        "checks": [
            {"name": c.name, "checked": c.checked, "failures": c.failures,
             "worst_margin": text(c.worst_margin), "worst_case": c.worst_case,
             "counterexample": c.counterexample, "passed": c.passed}
            for c in rep.checks.values()
        ],
    }
