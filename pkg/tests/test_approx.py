from fractions import Fraction

import pytest
from hypothesis import given, settings

from symspec.approx import (OPTIMAL, approx_spectral_norm, build_symmetric_l1_lp, check_feasible,
                            conjecture_ratio, enumerate_vertices_optimum, export_lp, solve_lp,
                            unrestricted_approx_norm)
from symspec.dsl import parse_function_spec
from symspec.lp import INFEASIBLE, ITERATION_LIMIT, UNBOUNDED, LinearProgram, solve
from symspec.spectrum import level_spectrum, spectral_norm

from conftest import all_functions, parity, symmetric_functions

F = Fraction
GRID = (F(0), F(1, 10), F(1, 3), F(9, 10), F(1))


def lp(c, A, b):
    return LinearProgram(tuple(map(F, c)), tuple(tuple(map(F, r)) for r in A), tuple(map(F, b)))


def test_simplex_textbook():
    # min -x - y s.t. x + 2y <= 4, 3x + y <= 6  ->  x = 8/5, y = 6/5
    res = solve(lp([-1, -1], [[1, 2], [3, 1]], [4, 6]))
    assert res.status == "optimal" and res.x == (F(8, 5), F(6, 5)) and res.objective == F(-14, 5)


def test_simplex_statuses():
    assert solve(lp([-1], [[-1]], [0])).status == UNBOUNDED
    assert solve(lp([1], [[1], [-1]], [-1, 0])).status == INFEASIBLE
    assert solve(lp([1], [[1], [-1]], [-1, 0]), method="dual").status == INFEASIBLE
    res = solve(lp([-1, -1], [[1, 2], [3, 1]], [4, 6]), max_iterations=1)
    assert res.status == ITERATION_LIMIT and res.x is None
    with pytest.raises(ValueError):
        solve(lp([-1], [[1]], [1]), method="dual")


def test_dual_and_two_phase_agree():
    for f in all_functions(5):
        for eps in GRID:
            prog = build_symmetric_l1_lp(f, eps).program()
            assert solve(prog, "dual").objective == solve(prog, "two-phase").objective


def test_build_examples(maj3):
    inst = build_symmetric_l1_lp(maj3, F(1, 3))
    assert len(inst.A) == 8 and len(inst.objective) == 8
    assert all(v.denominator == 1 for row in inst.A for v in row)
    with pytest.raises(ValueError):
        build_symmetric_l1_lp(maj3, F(-1, 2))


def test_solve_examples(maj3):
    for f in (maj3, parity(4), parse_function_spec("g:1:5")):
        assert solve_lp(build_symmetric_l1_lp(f, 0)).optimum == spectral_norm(level_spectrum(f))
        assert solve_lp(build_symmetric_l1_lp(f, 1)).optimum == 0
    value = approx_spectral_norm(maj3, F(1, 3))
    assert 0 < value <= 2
    assert value == enumerate_vertices_optimum(build_symmetric_l1_lp(maj3, F(1, 3))) == F(4, 3)


def test_parity_at_one_third():
    for n in range(1, 8):
        assert approx_spectral_norm(parity(n), F(1, 3)) == F(2, 3)


def test_vertex_oracle_small():
    cases = [f for n in (1, 2) for f in all_functions(n)]
    cases += [parse_function_spec("+--+"), parse_function_spec("and:3")]
    for f in cases:
        for eps in (F(1, 10), F(1, 3)):
            inst = build_symmetric_l1_lp(f, eps)
            assert solve_lp(inst).optimum == enumerate_vertices_optimum(inst)


@settings(max_examples=30, deadline=None)
@given(symmetric_functions(max_n=9))
def test_monotone_and_feasible(f):
    values = []
    for eps in GRID:
        sol = solve_lp(build_symmetric_l1_lp(f, eps))
        assert sol.status == OPTIMAL
        assert check_feasible(f, sol.level_coeffs, eps)
        values.append(sol.optimum)
    assert values == sorted(values, reverse=True)
    assert values[0] == spectral_norm(level_spectrum(f))


def test_symmetry_reduction_small():
    for n in (1, 2, 3):
        for f in all_functions(n):
            assert unrestricted_approx_norm(f, F(1, 3)) == approx_spectral_norm(f, F(1, 3))


def test_determinism(maj3):
    a = solve_lp(build_symmetric_l1_lp(maj3, F(1, 3)))
    b = solve_lp(build_symmetric_l1_lp(maj3, F(1, 3)))
    assert a == b


def test_conjecture_ratio(maj3):
    rep = conjecture_ratio(parity(6))
    assert rep.undefined and rep.ratio is None and rep.log_l1 == 0 and rep.log_approx < 0
    rep = conjecture_ratio(maj3)
    assert not rep.undefined and rep.log_l1 == 1 and rep.ratio > 0


def test_export_against_highspy(tmp_path):
    highspy = pytest.importorskip("highspy")
    for spec, eps in (("maj:3", F(1, 3)), ("maj:7", F(1, 10)), ("g:2:6", F(9, 10)), ("and:5", F(1, 3))):
        f = parse_function_spec(spec)
        inst = build_symmetric_l1_lp(f, eps)
        path = tmp_path / "model.lp"
        path.write_text(export_lp(inst), encoding="utf-8")
        h = highspy.Highs()
        h.setOptionValue("output_flag", False)
        h.readModel(str(path))
        h.run()
        value = h.getInfo().objective_function_value
        exact = solve_lp(inst).optimum
        assert value == pytest.approx(float(exact), rel=1e-9, abs=1e-12)
