"""Approximate spectral norm ``min ||g^||_1`` subject to ``||f - g||_inf <= eps``.

The minimizer may be taken symmetric: averaging a feasible ``g`` over all
coordinate permutations keeps it feasible (convexity) and cannot raise the
spectral norm (triangle inequality).  So the LP runs over the ``n + 1``
level coefficients, split as ``a_k = a_k+ - a_k-``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .lp import INFEASIBLE, ITERATION_LIMIT, MAX_ITERATIONS, OPTIMAL, LinearProgram, solve
from .spectrum import SymmetricFunction, binomial, krawtchouk_table

UNRESTRICTED_MAX = 6


@dataclass(frozen=True)
class LpInstance:
    """Rows are ``A x <= b`` over ``x = (a_0+, a_0-, ..., a_n+, a_n-)``.

    Row ``2m`` is the upper constraint at level ``m``, row ``2m + 1`` the lower one.
    """
    n: int
    objective: tuple[Fraction, ...]
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]
    epsilon: Fraction
    levels: tuple[int, ...]

    def program(self) -> LinearProgram:
        return LinearProgram(self.objective, self.A, self.b)


@dataclass(frozen=True)
class LpSolution:
    optimum: Fraction | None
    level_coeffs: tuple[Fraction, ...] | None
    status: str


def _check_epsilon(epsilon) -> Fraction:
    epsilon = Fraction(epsilon)
    if epsilon < 0:
        raise ValueError("epsilon must be nonnegative")
    return epsilon


def build_symmetric_l1_lp(f: SymmetricFunction, epsilon) -> LpInstance:
    epsilon = _check_epsilon(epsilon)
    n = f.n
    table = krawtchouk_table(n)
    objective = []
    for k in range(n + 1):
        objective += [Fraction(binomial(n, k))] * 2
    A, b = [], []
    for m in range(n + 1):
        row = []
        for k in range(n + 1):
            row += [Fraction(table[k][m]), Fraction(-table[k][m])]
        A.append(tuple(row))
        b.append(f(m) + epsilon)
        A.append(tuple(-v for v in row))
        b.append(epsilon - f(m))
    return LpInstance(n, tuple(objective), tuple(A), tuple(b), epsilon, f.levels)


def solve_lp(inst: LpInstance, max_iterations: int = MAX_ITERATIONS) -> LpSolution:
    result = solve(inst.program(), max_iterations=max_iterations)
    if result.status != OPTIMAL:
        return LpSolution(None, None, result.status)
    x = result.x
    coeffs = tuple(x[2 * k] - x[2 * k + 1] for k in range(inst.n + 1))
    optimum = sum((binomial(inst.n, k) * abs(c) for k, c in enumerate(coeffs)), Fraction(0))
    # splitting never leaves both halves positive at an optimum
    assert optimum == result.objective
    return LpSolution(optimum, coeffs, result.status)


def check_feasible(f: SymmetricFunction, coeffs, epsilon) -> bool:
    """Exact re-check of ``|g(m) - f(m)| <= eps`` at every level."""
    table = krawtchouk_table(f.n)
    for m in range(f.n + 1):
        g = sum((c * table[k][m] for k, c in enumerate(coeffs)), Fraction(0))
        if abs(g - f(m)) > epsilon:
            return False
    return True


def approx_spectral_norm(f: SymmetricFunction, epsilon) -> Fraction:
    sol = solve_lp(build_symmetric_l1_lp(f, epsilon))
    if sol.status != OPTIMAL:
        raise RuntimeError(f"LP did not reach an optimum: {sol.status}")
    return sol.optimum


def build_unrestricted_l1_lp(f: SymmetricFunction, epsilon) -> LinearProgram:
    """Same problem over all ``2^n`` characters, no symmetry assumed."""
    epsilon = _check_epsilon(epsilon)
    n = f.n
    if n > UNRESTRICTED_MAX:
        raise ValueError(f"unrestricted LP limited to n <= {UNRESTRICTED_MAX}")
    size = 1 << n
    objective = (Fraction(1),) * (2 * size)
    A, b = [], []
    for x in range(size):
        row = []
        for s in range(size):
            chi = -1 if (x & s).bit_count() % 2 else 1
            row += [Fraction(chi), Fraction(-chi)]
        value = f(x.bit_count())
        A.append(tuple(row))
        b.append(value + epsilon)
        A.append(tuple(-v for v in row))
        b.append(epsilon - value)
    return LinearProgram(objective, tuple(A), tuple(b))


def unrestricted_approx_norm(f: SymmetricFunction, epsilon) -> Fraction:
    result = solve(build_unrestricted_l1_lp(f, epsilon))
    if result.status != OPTIMAL:
        raise RuntimeError(f"LP did not reach an optimum: {result.status}")
    return result.objective


def _lp_number(q: Fraction) -> str:
    assert q.denominator == 1
    return str(q.numerator)


def export_lp(inst: LpInstance) -> str:
    """CPLEX LP text.  Each row is scaled to integer coefficients."""
    names = [f"{sign}{k}" for k in range(inst.n + 1) for sign in ("ap", "am")]
    lines = [f"\\ approximate spectral norm, n = {inst.n}, eps = {inst.epsilon}",
             "Minimize",
             " obj: " + " + ".join(f"{_lp_number(c)} {v}" for c, v in zip(inst.objective, names)),
             "Subject To"]
    for i, (row, rhs) in enumerate(zip(inst.A, inst.b)):
        scale = math.lcm(*(q.denominator for q in (*row, rhs)))
        terms = [f"{'-' if c < 0 else '+'} {_lp_number(abs(c) * scale)} {v}"
                 for c, v in zip(row, names) if c]
        expr = " ".join(terms) if terms else "0 ap0"
        if expr.startswith("+ "):
            expr = expr[2:]
        lines.append(f" c{i}: {expr} <= {_lp_number(rhs * scale)}")
    lines += ["End", ""]
    return "\n".join(lines)


@dataclass(frozen=True)
class ConjectureReport:
    n: int
    log_l1: float
    log_approx: float | None
    ratio: float | None
    normalized_ratio: float | None
    undefined: bool


def conjecture_ratio(f: SymmetricFunction, epsilon=Fraction(1, 3), norm=None) -> ConjectureReport:
    """``log2 ||f^||_1`` against ``log2 ||f^||_{1,eps}``; flagged when the latter is <= 1."""
    from .spectrum import level_spectrum, spectral_norm

    if f.n < 2:
        raise ValueError("need n >= 2")
    if norm is None:
        norm = spectral_norm(level_spectrum(f))
    approx = approx_spectral_norm(f, epsilon)
    log_l1 = math.log2(norm.numerator) - math.log2(norm.denominator)
    log_approx = (math.log2(approx.numerator) - math.log2(approx.denominator)) if approx > 0 else None
    if approx <= 1:
        return ConjectureReport(f.n, log_l1, log_approx, None, None, True)
    ratio = log_l1 / log_approx
    return ConjectureReport(f.n, log_l1, log_approx, ratio, ratio / math.log2(f.n), False)


def enumerate_vertices_optimum(inst: LpInstance) -> Fraction:
    """Brute-force oracle: best objective over all basic feasible points.

    Works on the reduced problem in ``a`` (dimension ``n + 1``) with
    ``|a_k|`` objective, so every candidate is a vertex of the region
    ``|K a - f| <= eps`` intersected with a sign orthant.
    """
    n = inst.n
    table = krawtchouk_table(n)
    eps = inst.epsilon
    f = inst.levels
    dim = n + 1
    best = None
    for signs in itertools.product((1, -1), repeat=dim):
        # constraints: K a <= f + eps, -K a <= eps - f, -sign_k a_k <= 0
        rows = []
        for m in range(dim):
            row = [Fraction(table[k][m]) for k in range(dim)]
            rows.append((row, f[m] + eps))
            rows.append(([-v for v in row], eps - f[m]))
        for k in range(dim):
            row = [Fraction(0)] * dim
            row[k] = Fraction(-signs[k])
            rows.append((row, Fraction(0)))
        for subset in itertools.combinations(range(len(rows)), dim):
            point = _solve_square([rows[i][0] for i in subset], [rows[i][1] for i in subset])
            if point is None:
                continue
            if all(sum(c * p for c, p in zip(row, point)) <= rhs for row, rhs in rows):
                value = sum(binomial(n, k) * abs(p) for k, p in enumerate(point))
                if best is None or value < best:
                    best = value
    return best


def _solve_square(M, rhs):
    """Gaussian elimination over Fractions; ``None`` if singular."""
    size = len(M)
    aug = [list(row) + [r] for row, r in zip(M, rhs)]
    for col in range(size):
        piv = next((i for i in range(col, size) if aug[i][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [v / p for v in aug[col]]
        for i in range(size):
            if i != col and aug[i][col]:
                q = aug[i][col]
                aug[i] = [v - q * w for v, w in zip(aug[i], aug[col])]
    return [aug[i][size] for i in range(size)]


__all__ = [
    "INFEASIBLE", "ITERATION_LIMIT", "OPTIMAL", "LpInstance", "LpSolution",
    "ConjectureReport", "approx_spectral_norm", "build_symmetric_l1_lp",
    "build_unrestricted_l1_lp", "check_feasible", "conjecture_ratio",
    "enumerate_vertices_optimum", "export_lp", "solve_lp", "unrestricted_approx_norm",
]
