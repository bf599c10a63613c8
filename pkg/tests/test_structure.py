from fractions import Fraction

import pytest
from hypothesis import given, settings

from symspec.spectrum import SymmetricFunction, level_spectrum
from symspec.structure import (PATTERNS, R_functional, derivative_energy,
                               derivative_energy_bruteforce, fit_pattern, paturi_t,
                               pattern_value, r_parameters)

from conftest import all_functions, constant, parity, symmetric_functions


def test_r_parameters_examples(maj3):
    rep = r_parameters(parity(6))
    assert (rep.chosen_pattern, rep.r0, rep.r1, rep.r) == ("+parity", 0, 0, 0)
    rep = r_parameters(maj3)
    assert (rep.chosen_pattern, rep.r0, rep.r1, rep.r) == ("+parity", 1, 1, 1)
    rep = r_parameters(SymmetricFunction(4, (1, 1, 1, -1, 1)))
    assert rep.clamped and rep.r == 2 and rep.chosen_pattern is None


def test_window_is_constant_after_pattern():
    for n in range(1, 9):
        for f in all_functions(n):
            rep = r_parameters(f)
            if rep.clamped:
                assert n % 2 == 0 and rep.r0 == rep.r1 == n // 2
                continue
            lo, hi = rep.window
            assert 2 * rep.r0 < n and 2 * rep.r1 < n
            for k in range(lo, hi + 1):
                assert f(k) == pattern_value(rep.chosen_pattern, k)


def test_minimality_against_scan():
    # brute force: smallest r over all patterns and all (r0, r1) windows that fit
    for n in range(1, 9):
        for f in all_functions(n):
            best = None
            for p in PATTERNS:
                for r0 in range(n + 1):
                    for r1 in range(n + 1):
                        if 2 * r0 < n and 2 * r1 < n and all(
                                f(k) == pattern_value(p, k) for k in range(r0, n - r1 + 1)):
                            key = max(r0, r1)
                            best = key if best is None else min(best, key)
            rep = r_parameters(f)
            assert rep.r == (best if best is not None else n // 2)


def test_odd_n_never_clamps():
    for n in (1, 3, 5, 7, 9):
        assert not any(r_parameters(f).clamped for f in all_functions(n))


def test_paturi_examples():
    assert paturi_t(constant(6)) == (0, 0)
    # maj5: the only violation is at i = 2, below mid = 3
    assert paturi_t(SymmetricFunction(5, (-1, -1, -1, 1, 1, 1))) == (3, 0)
    assert paturi_t(parity(1)) == (1, 0)
    for n in range(2, 10):
        assert paturi_t(parity(n)) == ((n + 1) // 2, (n + 1) // 2)


def test_paturi_window_is_constant():
    for n in range(1, 9):
        for f in all_functions(n):
            t0, t1 = paturi_t(f)
            assert all(f(i) == f(i + 1) for i in range(t0, n - t1))


def test_R_examples(maj3):
    assert R_functional(level_spectrum(parity(7))) == 0
    assert R_functional(level_spectrum(maj3)) == Fraction(3, 2)
    assert R_functional(level_spectrum(SymmetricFunction(4, (1, -1, 1, 1, 1)))) == Fraction(3, 2)


def test_derivative_energy_examples(maj3):
    assert derivative_energy(parity(5)) == 0
    assert derivative_energy(maj3) == 12
    assert derivative_energy(constant(4)) == 0
    assert derivative_energy_bruteforce(maj3.truth_table()) == 12
    with pytest.raises(ValueError, match="need two variables"):
        derivative_energy(constant(1))


@settings(max_examples=60, deadline=None)
@given(symmetric_functions(min_n=2, max_n=9))
def test_energy_identity(f):
    energy = derivative_energy(f)
    assert energy == 8 * R_functional(level_spectrum(f))
    assert energy == derivative_energy_bruteforce(f.truth_table())


def test_fit_pattern_validity_flag():
    fit = fit_pattern(SymmetricFunction(3, (-1, -1, 1, 1)), "+1")
    assert (fit.r0, fit.r1, fit.valid) == (2, 0, False)
