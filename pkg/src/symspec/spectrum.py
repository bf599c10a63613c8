"""Level-wise Fourier spectrum of symmetric Boolean functions.

A symmetric ``f: {0,1}^n -> {-1,+1}`` is stored as its ``n + 1`` level values
``f(0), ..., f(n)``.  Every Fourier coefficient ``f^(S)`` depends only on
``|S|``, so the whole spectrum is ``n + 1`` dyadic rationals with denominator
dividing ``2**n``.  All exact quantities are :class:`fractions.Fraction`.

Two independent routes produce the level numerators ``2**n * f^_k``:

* a dense route through the cached Krawtchouk table (small ``n``), and
* a change-point route that only touches the levels where ``f`` flips,
  using Krawtchouk columns in dimension ``n - 1`` (large ``n``).

:func:`brute_force_spectrum` is the full ``2**n`` butterfly oracle.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

import numpy as np

ExactScalar = Fraction

DEFAULT_EXACT_LIMIT = 64
DEFAULT_ORACLE_CAP = 20
# dense Krawtchouk-table route up to this n, change-point route above
DENSE_MAX = 64

_UNIT_ROUNDOFF = 2.0 ** -53


def exact_limit() -> int:
    """Largest ``n`` for which the exact path is mandatory.

    Overridable through the ``SYMSPEC_EXACT_LIMIT`` environment variable.
    """
    raw = os.environ.get("SYMSPEC_EXACT_LIMIT")
    if raw is None or raw.strip() == "":
        return DEFAULT_EXACT_LIMIT
    value = int(raw)
    if value < 0:
        raise ValueError("SYMSPEC_EXACT_LIMIT must be nonnegative")
    return value


@dataclass(frozen=True)
class SymmetricFunction:
    """``levels[k]`` is the value of ``f`` on every input of Hamming weight ``k``."""

    n: int
    levels: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise ValueError("n must be a positive integer")
        levels = tuple(int(v) for v in self.levels)
        if len(levels) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} levels, got {len(levels)}")
        if any(v not in (-1, 1) for v in levels):
            raise ValueError("every level value must be -1 or +1")
        object.__setattr__(self, "levels", levels)

    @classmethod
    def from_levels(cls, levels: Sequence[int]) -> "SymmetricFunction":
        return cls(len(levels) - 1, tuple(levels))

    @classmethod
    def from_index(cls, n: int, index: int) -> "SymmetricFunction":
        """Function whose level pattern is the binary expansion of ``index``.

        Bit ``n - k`` of ``index`` set means ``f(k) = -1``, so increasing
        ``index`` enumerates level strings over ``+ < -`` lexicographically.
        """
        if not 0 <= index < 2 ** (n + 1):
            raise ValueError("index out of range")
        return cls(n, tuple(-1 if (index >> (n - k)) & 1 else 1 for k in range(n + 1)))

    def __call__(self, k: int) -> int:
        return self.levels[k]

    def negated(self) -> "SymmetricFunction":
        return SymmetricFunction(self.n, tuple(-v for v in self.levels))

    def times_parity(self) -> "SymmetricFunction":
        return SymmetricFunction(
            self.n, tuple(v if k % 2 == 0 else -v for k, v in enumerate(self.levels)))

    def level_string(self) -> str:
        return "".join("+" if v == 1 else "-" for v in self.levels)

    def truth_table(self) -> np.ndarray:
        """Values on all ``2**n`` inputs; bit ``i`` of the index is ``x_{i+1}``."""
        weights = popcounts(self.n)
        return np.asarray(self.levels, dtype=np.int64)[weights]

    def change_points(self) -> list[int]:
        return [j for j in range(1, self.n + 1) if self.levels[j] != self.levels[j - 1]]


@lru_cache(maxsize=None)
def popcounts(n: int) -> np.ndarray:
    weights = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        weights[1 << i:1 << (i + 1)] = weights[:1 << i] + 1
    weights.setflags(write=False)
    return weights


@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    """``C(n, k)``, zero outside ``0 <= k <= n``."""
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


@lru_cache(maxsize=None)
def krawtchouk_table(n: int) -> tuple[tuple[int, ...], ...]:
    """``table[k][m] = K_k(m)`` for ``0 <= k, m <= n`` by the degree recurrence.

    ``(k+1) K_{k+1}(m) = (n - 2m) K_k(m) - (n - k + 1) K_{k-1}(m)``; the
    division is exact.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    rows = [[1] * (n + 1)]
    if n >= 1:
        rows.append([n - 2 * m for m in range(n + 1)])
    for k in range(1, n):
        prev, cur = rows[k - 1], rows[k]
        nxt = []
        for m in range(n + 1):
            q, rem = divmod((n - 2 * m) * cur[m] - (n - k + 1) * prev[m], k + 1)
            assert rem == 0
            nxt.append(q)
        rows.append(nxt)
    return tuple(tuple(row) for row in rows)


def krawtchouk(n: int, k: int, m: int) -> int:
    """``K_k(m) = sum_j (-1)^j C(m, j) C(n - m, k - j)``.

    Equivalently the sum of ``chi_S(x)`` over all ``|S| = k`` for one fixed
    ``x`` of weight ``m``.
    """
    if not (0 <= k <= n and 0 <= m <= n):
        raise ValueError("level out of range")
    return krawtchouk_table(n)[k][m]


def krawtchouk_sum(n: int, k: int, m: int) -> int:
    """Defining alternating sum, used as the oracle for the recurrence."""
    if not (0 <= k <= n and 0 <= m <= n):
        raise ValueError("level out of range")
    return sum((-1) ** j * binomial(m, j) * binomial(n - m, k - j) for j in range(k + 1))


def krawtchouk_column(dim: int, degree: int) -> list[int]:
    """``K_degree(x)`` in dimension ``dim`` for every ``x = 0..dim``.

    Uses the recurrence in the argument,
    ``(N - x) K_a(x+1) = (N - 2a) K_a(x) - x K_a(x-1)``.
    """
    out = [binomial(dim, degree)]
    if dim == 0:
        return out
    out.append(binomial(dim - 1, degree) - binomial(dim - 1, degree - 1))
    for x in range(1, dim):
        q, rem = divmod((dim - 2 * degree) * out[x] - x * out[x - 1], dim - x)
        assert rem == 0
        out.append(q)
    return out


def _numerators_dense(f: SymmetricFunction) -> list[int]:
    # 2^n f^_k = sum_m f(m) * sum_{|x|=m} chi_S(x) = sum_m f(m) K_m(k)
    table = krawtchouk_table(f.n)
    return [sum(v * row[k] for v, row in zip(f.levels, table)) for k in range(f.n + 1)]


def _numerators_sparse(f: SymmetricFunction) -> list[int]:
    """Change-point route.

    With ``f(m) = f(0) + sum_{j <= m} d_j`` and ``sum_m K_m(k) = 0`` for
    ``k >= 1``, the level-``k`` numerator is ``-sum_j d_j K'_{j-1}(k-1)``
    where ``K'`` lives in dimension ``n - 1``.
    """
    n = f.n
    out = [0] * (n + 1)
    out[0] = sum(v * binomial(n, m) for m, v in enumerate(f.levels))
    for j in f.change_points():
        step = f.levels[j] - f.levels[j - 1]
        column = krawtchouk_column(n - 1, j - 1)
        for k in range(1, n + 1):
            out[k] -= step * column[k - 1]
    return out


def level_numerators(f: SymmetricFunction, method: str = "auto") -> list[int]:
    """Integers ``2**n * f^_k`` for ``k = 0..n``."""
    if method == "auto":
        method = "dense" if f.n <= DENSE_MAX else "sparse"
    if method == "dense":
        return _numerators_dense(f)
    if method != "sparse":
        raise ValueError(f"unknown method {method!r}")
    g = f.times_parity()
    if len(g.change_points()) < len(f.change_points()):
        # multiplying by parity reverses the spectrum
        return _numerators_sparse(g)[::-1]
    return _numerators_sparse(f)


@dataclass(frozen=True)
class LevelSpectrum:
    """``coeffs[k] = f^(S)`` for every ``|S| = k``."""

    n: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.n + 1:
            raise ValueError("spectrum must have n + 1 levels")

    @classmethod
    def from_numerators(cls, n: int, numerators: Sequence[int]) -> "LevelSpectrum":
        denom = 1 << n
        return cls(n, tuple(Fraction(v, denom) for v in numerators))

    def numerators(self) -> list[int]:
        scale = 1 << self.n
        return [int(c * scale) for c in self.coeffs]


def level_spectrum(f: SymmetricFunction, method: str = "auto") -> LevelSpectrum:
    return LevelSpectrum.from_numerators(f.n, level_numerators(f, method))


def walsh_hadamard(table) -> np.ndarray:
    """Unnormalized in-place butterfly over int64; entry ``S`` is ``sum_x t(x) chi_S(x)``."""
    values = np.array(table, dtype=np.int64)
    size = values.shape[0]
    if size == 0 or size & (size - 1):
        raise ValueError("table length must be a power of two")
    h = 1
    while h < size:
        view = values.reshape(-1, 2, h)
        lo = view[:, 0, :].copy()
        hi = view[:, 1, :]
        view[:, 0, :] += hi
        view[:, 1, :] = lo - hi
        h *= 2
    return values


def brute_force_spectrum(truth_table, cap: int = DEFAULT_ORACLE_CAP) -> list[Fraction]:
    """All ``2**n`` Fourier coefficients, indexed by subset bitmask.

    Bit ``i`` of a table index is ``x_{i+1}`` and bit ``i`` of a subset
    index means ``i + 1`` is in ``S``.
    """
    size = len(truth_table)
    if size == 0 or size & (size - 1):
        raise ValueError("table length must be a power of two")
    n = size.bit_length() - 1
    if n > cap:
        raise ValueError("oracle cap exceeded")
    if any(v not in (-1, 1) for v in np.asarray(truth_table).tolist()):
        raise ValueError("truth table values must be -1 or +1")
    raw = walsh_hadamard(truth_table)
    return [Fraction(int(v), size) for v in raw]


def symmetrized_levels(spectrum: Sequence[Fraction], n: int) -> list[Fraction]:
    """Collapse a full spectrum to one value per level.

    Raises if two subsets of the same size disagree, since then the source
    was not symmetric.
    """
    levels: list[Fraction | None] = [None] * (n + 1)
    weights = popcounts(n)
    for index, value in enumerate(spectrum):
        k = int(weights[index])
        if levels[k] is None:
            levels[k] = value
        elif levels[k] != value:
            raise ValueError(f"spectrum is not symmetric at level {k}")
    return levels  # type: ignore[return-value]


def brute_force_levels(truth_table, cap: int = DEFAULT_ORACLE_CAP) -> list[Fraction]:
    """Brute-force WHT collapsed to levels; same checks as the two-step route, vectorized."""
    table = np.asarray(truth_table, dtype=np.int64)
    size = table.shape[0]
    if size == 0 or size & (size - 1):
        raise ValueError("table length must be a power of two")
    n = size.bit_length() - 1
    if n > cap:
        raise ValueError("oracle cap exceeded")
    if not np.isin(table, (-1, 1)).all():
        raise ValueError("truth table values must be -1 or +1")
    raw = walsh_hadamard(table)
    weights = popcounts(n)
    levels = []
    for k in range(n + 1):
        vals = raw[weights == k]
        if (vals != vals[0]).any():
            raise ValueError(f"spectrum is not symmetric at level {k}")
        levels.append(Fraction(int(vals[0]), size))
    return levels


def spectral_norm(spec: LevelSpectrum) -> Fraction:
    return sum((binomial(spec.n, k) * abs(c) for k, c in enumerate(spec.coeffs)), Fraction(0))


def level_weights(spec: LevelSpectrum) -> list[Fraction]:
    return [binomial(spec.n, k) * c * c for k, c in enumerate(spec.coeffs)]


class FloatResult(NamedTuple):
    value: float
    rel_err: float


def spectral_norm_float(spec: LevelSpectrum) -> FloatResult:
    """Float spectral norm with a rigorous relative-error bound.

    Each level mass ``C(n,k)|f^_k|`` is a correctly rounded quotient of
    exact integers and all masses are nonnegative, so after a correctly
    rounded ``math.fsum`` the relative error is at most ``(1 + u)**2 - 1``.
    """
    terms = [float(binomial(spec.n, k) * abs(c)) for k, c in enumerate(spec.coeffs)]
    return FloatResult(math.fsum(terms), (1 + _UNIT_ROUNDOFF) ** 2 - 1)


def level_weights_float(spec: LevelSpectrum) -> list[float]:
    return [float(w) for w in level_weights(spec)]


def _log2_fraction(q: Fraction) -> float:
    return math.log2(q.numerator) - math.log2(q.denominator)


def shannon_entropy(spec: LevelSpectrum) -> float:
    """``-sum_S f^(S)^2 log2 f^(S)^2`` with ``0 log 0 = 0``."""
    terms = []
    for k, c in enumerate(spec.coeffs):
        if c == 0:
            continue
        sq = c * c
        terms.append(-float(binomial(spec.n, k) * sq) * _log2_fraction(sq))
    return max(0.0, math.fsum(terms))


@dataclass(frozen=True)
class SpectralSummary:
    """Norms and entropies of one spectrum.

    ``l1_norm``, ``level_weights`` and ``parseval_defect`` are Fractions on
    the exact path and floats on the float path; ``rel_err_bound`` is 0 on
    the exact path.
    """

    n: int
    l1_norm: Fraction | float
    level_weights: tuple
    shannon_entropy: float
    renyi_half_entropy: float
    parseval_defect: Fraction | float
    exact: bool
    rel_err_bound: float = 0.0


def spectral_summary(f: SymmetricFunction, exact: bool | None = None) -> SpectralSummary:
    if exact is None:
        exact = f.n <= exact_limit()
    spec = level_spectrum(f)
    entropy = shannon_entropy(spec)
    if exact:
        norm = spectral_norm(spec)
        weights = level_weights(spec)
        return SpectralSummary(
            n=f.n,
            l1_norm=norm,
            level_weights=tuple(weights),
            shannon_entropy=entropy,
            renyi_half_entropy=2 * _log2_fraction(norm),
            parseval_defect=sum(weights, Fraction(0)) - 1,
            exact=True,
        )
    norm_f = spectral_norm_float(spec)
    weights_f = level_weights_float(spec)
    return SpectralSummary(
        n=f.n,
        l1_norm=norm_f.value,
        level_weights=tuple(weights_f),
        shannon_entropy=entropy,
        renyi_half_entropy=2 * math.log2(norm_f.value),
        parseval_defect=math.fsum(weights_f) - 1.0,
        exact=False,
        rel_err_bound=norm_f.rel_err,
    )
