"""Text syntax for symmetric functions.

Named families (all arguments are decimal integers, ``n >= 1``)::

    maj:n            +1 iff |x| > n/2 (ties go to -1)
    and:n            -1 iff |x| = n
    or:n             +1 iff |x| = 0
    parity:n         (-1)^|x|
    mod:m:n          -1 iff |x| = 0 (mod m)
    threshold:t:n    +1 iff |x| >= t
    g:k:n            -1 iff |x| = k
    random:seed:n    levels drawn from random.Random(seed)

A literal is the level string f(0) f(1) ... f(n) over ``+`` and ``-``
(U+2212 is accepted for ``-``), so its length is ``n + 1``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .spectrum import SymmetricFunction

FAMILIES = ("maj", "and", "or", "parity", "mod", "threshold", "g", "random")
_ARITY = {"maj": 0, "and": 0, "or": 0, "parity": 0, "mod": 1, "threshold": 1, "g": 1, "random": 1}
_MINUS = ("-", "−")


class SpecError(ValueError):
    """Malformed function spec; ``position`` is the 0-based column of the problem."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


@dataclass(frozen=True)
class FunctionSpec:
    family: str | None  # None for a literal level string
    params: tuple[int, ...]
    function: SymmetricFunction

    @property
    def n(self) -> int:
        return self.function.n

    def canonical(self) -> str:
        if self.family is None:
            return self.function.level_string()
        return ":".join([self.family, *map(str, self.params), str(self.n)])


def _family_levels(family: str, params: tuple[int, ...], n: int) -> tuple[int, ...]:
    ks = range(n + 1)
    if family == "maj":
        return tuple(1 if 2 * k > n else -1 for k in ks)
    if family == "and":
        return tuple(-1 if k == n else 1 for k in ks)
    if family == "or":
        return tuple(1 if k == 0 else -1 for k in ks)
    if family == "parity":
        return tuple(-1 if k % 2 else 1 for k in ks)
    (p,) = params
    if family == "mod":
        return tuple(-1 if k % p == 0 else 1 for k in ks)
    if family == "threshold":
        return tuple(1 if k >= p else -1 for k in ks)
    if family == "g":
        return tuple(-1 if k == p else 1 for k in ks)
    if family == "random":
        rng = random.Random(p)
        return tuple(rng.choice((1, -1)) for _ in ks)
    raise AssertionError(family)


def _parse_literal(text: str, offset: int) -> FunctionSpec:
    levels = []
    for i, ch in enumerate(text):
        if ch == "+":
            levels.append(1)
        elif ch in _MINUS:
            levels.append(-1)
        else:
            raise SpecError(f"unexpected character {ch!r} in level string", offset + i)
    if len(levels) < 2:
        raise SpecError("level string needs n + 1 >= 2 symbols", offset)
    return FunctionSpec(None, (), SymmetricFunction(len(levels) - 1, tuple(levels)))


def parse_spec(text: str) -> FunctionSpec:
    stripped = text.strip()
    offset = len(text) - len(text.lstrip())
    if not stripped:
        raise SpecError("empty function spec", offset)
    if stripped[0] in "+-−":
        return _parse_literal(stripped, offset)
    parts = stripped.split(":")
    family = parts[0]
    if family not in FAMILIES:
        raise SpecError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}", offset)
    want = _ARITY[family] + 1
    if len(parts) - 1 != want:
        raise SpecError(f"{family} takes {want} integer argument(s)", offset + len(family))
    values = []
    pos = offset + len(family) + 1
    for part in parts[1:]:
        if not part.isascii() or not part.isdigit():
            raise SpecError(f"expected a nonnegative integer, got {part!r}", pos)
        values.append(int(part))
        pos += len(part) + 1
    *params, n = values
    n_pos = pos - len(parts[-1]) - 1
    if n == 0:
        raise SpecError("n must be at least 1", n_pos)
    params = tuple(params)
    if family == "mod" and params[0] < 1:
        raise SpecError("modulus must be at least 1", offset + len(family) + 1)
    if family == "g" and params[0] > n:
        raise SpecError("level k must lie in [0, n]", offset + len(family) + 1)
    if family == "threshold" and params[0] > n + 1:
        raise SpecError("threshold must lie in [0, n + 1]", offset + len(family) + 1)
    return FunctionSpec(family, params, SymmetricFunction(n, _family_levels(family, params, n)))


def parse_function_spec(text: str) -> SymmetricFunction:
    return parse_spec(text).function


def format_function_spec(text: str) -> str:
    """Canonical form of a spec string."""
    return parse_spec(text).canonical()


def named_families(n: int) -> list[str]:
    """The family specs used by ``sweep --mode families``."""
    return [f"maj:{n}", f"and:{n}", f"or:{n}", f"parity:{n}", f"mod:3:{n}",
            f"threshold:{(n + 3) // 4}:{n}", f"g:1:{n}", f"random:0:{n}"]
