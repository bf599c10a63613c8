"""Exact simplex over the rationals for ``min c.x  s.t.  A x <= b, x >= 0``.

The tableau is kept fraction-free: an integer matrix ``M`` and a positive
integer ``d`` with tableau ``= M / d``.  Each pivot is an integer update
with an exact division by the previous ``d`` (Edmonds / Bareiss pivoting),
so there is no gcd work and no rounding.

Two solve paths, both using Bland's smallest-index rule:

* ``dual``: dual simplex from the slack basis.  Requires ``c >= 0`` so that
  the slack basis is dual feasible.
* ``two-phase``: dual simplex with a zero objective to reach primal
  feasibility, then primal simplex on the real objective.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

MAX_ITERATIONS = 10 ** 6

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"
ITERATION_LIMIT = "iteration-limit"


@dataclass(frozen=True)
class LinearProgram:
    objective: tuple[Fraction, ...]
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        if any(len(row) != len(self.objective) for row in self.A):
            raise ValueError("constraint rows must match the number of variables")
        if len(self.A) != len(self.b):
            raise ValueError("one right-hand side per constraint row")


@dataclass(frozen=True)
class SimplexResult:
    status: str
    x: tuple[Fraction, ...] | None
    objective: Fraction | None
    iterations: int


def _scaled_integers(values) -> list[int]:
    """Values times the lcm of their denominators."""
    values = [Fraction(v) for v in values]
    scale = math.lcm(*(v.denominator for v in values))
    return [v.numerator * (scale // v.denominator) for v in values]


class _Tableau:
    def __init__(self, lp: LinearProgram):
        m, n = len(lp.A), len(lp.objective)
        self.m, self.n = m, n
        self.width = n + m + 1  # structural, slack, rhs
        rows = []
        for i, (row, rhs) in enumerate(zip(lp.A, lp.b)):
            # scaling a row and its slack together keeps the slack a unit column
            *coeffs, rhs_int = _scaled_integers([*row, rhs])
            slack = [0] * m
            slack[i] = 1
            rows.append(coeffs + slack + [rhs_int])
        self.rows = rows
        # tableau = rows / d, and d = |det| of the current basis columns
        self.d = 1
        self.basis = list(range(n, n + m))
        self.cost = _scaled_integers(lp.objective) + [0] * m
        self.obj = None
        self.iterations = 0

    def set_objective(self, cost: Sequence[int]):
        """Reduced-cost row ``d*c - sum_i c_B(i) * row_i`` for the current basis."""
        obj = [self.d * c for c in cost] + [0]
        for i, var in enumerate(self.basis):
            cb = cost[var]
            if cb:
                row = self.rows[i]
                obj = [o - cb * v for o, v in zip(obj, row)]
        # obj = d * reduced costs; basic columns vanish exactly
        assert all(obj[var] == 0 for var in self.basis)
        self.obj = obj

    def pivot(self, r: int, s: int):
        p = self.rows[r][s]
        d = self.d
        sign = 1 if p > 0 else -1
        prow = self.rows[r]
        new_rows = []
        for i, row in enumerate(self.rows):
            if i == r:
                new_rows.append(prow if sign > 0 else [-v for v in prow])
                continue
            q = row[s]
            new_rows.append([sign * ((p * v - q * w) // d) for v, w in zip(row, prow)])
        if self.obj is not None:
            q = self.obj[s]
            self.obj = [sign * ((p * v - q * w) // d) for v, w in zip(self.obj, prow)]
        self.rows = new_rows
        self.d = abs(p)
        self.basis[r] = s
        self.iterations += 1

    def dual_simplex(self, limit: int) -> str:
        """Requires every reduced cost >= 0."""
        last = self.width - 1
        while True:
            if self.iterations >= limit:
                return ITERATION_LIMIT
            candidates = [(self.basis[i], i) for i in range(self.m) if self.rows[i][last] < 0]
            if not candidates:
                return OPTIMAL
            _, r = min(candidates)
            row = self.rows[r]
            best = None
            for j in range(last):
                a = row[j]
                if a < 0:
                    cbar = self.obj[j] if self.obj is not None else 0
                    # ratio cbar / |a|, compared by cross multiplication
                    if best is None or cbar * best[1] < best[0] * (-a):
                        best = (cbar, -a, j)
            if best is None:
                return INFEASIBLE
            self.pivot(r, best[2])

    def primal_simplex(self, limit: int) -> str:
        """Requires every right-hand side >= 0."""
        last = self.width - 1
        while True:
            if self.iterations >= limit:
                return ITERATION_LIMIT
            s = next((j for j in range(last) if self.obj[j] < 0), None)
            if s is None:
                return OPTIMAL
            best = None
            for i in range(self.m):
                a = self.rows[i][s]
                if a > 0:
                    rhs = self.rows[i][last]
                    key = (Fraction(rhs, a), self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], s)

    def solution(self) -> tuple[Fraction, ...]:
        x = [Fraction(0)] * self.n
        last = self.width - 1
        for i, var in enumerate(self.basis):
            if var < self.n:
                x[var] = Fraction(self.rows[i][last], self.d)
        return tuple(x)


def solve(lp: LinearProgram, method: str = "auto", max_iterations: int = MAX_ITERATIONS) -> SimplexResult:
    tab = _Tableau(lp)
    nonneg = all(c >= 0 for c in tab.cost)
    if method == "auto":
        method = "dual" if nonneg else "two-phase"
    if method == "dual":
        if not nonneg:
            raise ValueError("dual path needs a nonnegative objective")
        tab.set_objective(tab.cost)
        status = tab.dual_simplex(max_iterations)
    elif method == "two-phase":
        tab.obj = None
        status = tab.dual_simplex(max_iterations)
        if status == OPTIMAL:
            tab.set_objective(tab.cost)
            status = tab.primal_simplex(max_iterations)
    else:
        raise ValueError(f"unknown method {method!r}")
    if status != OPTIMAL:
        return SimplexResult(status, None, None, tab.iterations)
    x = tab.solution()
    value = sum((Fraction(c) * v for c, v in zip(lp.objective, x)), Fraction(0))
    return SimplexResult(OPTIMAL, x, value, tab.iterations)
