"""Pruned parity decision trees for symmetric functions.

Variables are queried in the fixed order ``x_1, ..., x_n``.  A node is
determined by the number of ones ``a`` and zeros ``b`` read so far; it
becomes a leaf as soon as ``a >= r0`` and ``b >= r1``, since every
completion then has weight in ``[r0, n - r1]`` where the residual function
is constant.  When the chosen pattern is a parity pattern, the residual is
``f * parity`` and the tree carries a single global parity pre-query.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Union

import numpy as np

from .spectrum import (SymmetricFunction, binomial, level_spectrum, popcounts, spectral_norm,
                       walsh_hadamard)
from .structure import pattern_value, r_parameters

LAZY_ABOVE = 20
AUDIT_MAX = 10


class MalformedTreeError(ValueError):
    pass


class CertificateError(AssertionError):
    """A size certificate failed; this indicates a bug, not bad input."""


@dataclass(frozen=True)
class Leaf:
    value: int
    ones: int
    zeros: int


@dataclass(frozen=True)
class Query:
    var: int
    zero: "Node"
    one: "Node"
    ones: int
    zeros: int


class LazyQuery:
    """Query node whose children are generated on demand."""

    __slots__ = ("_tree", "var", "ones", "zeros")

    def __init__(self, tree: "ParityDecisionTree", ones: int, zeros: int):
        self._tree = tree
        self.var = ones + zeros + 1
        self.ones = ones
        self.zeros = zeros

    @property
    def zero(self) -> "Node":
        return self._tree.node_at(self.ones, self.zeros + 1)

    @property
    def one(self) -> "Node":
        return self._tree.node_at(self.ones + 1, self.zeros)


Node = Union[Leaf, Query, LazyQuery]


@dataclass(frozen=True)
class ParityDecisionTree:
    n: int
    r0: int
    r1: int
    parity_pre_query: bool
    residual: tuple[int, ...]
    window_value: int
    root: Node | None = field(default=None, compare=False)

    def node_at(self, ones: int, zeros: int) -> Node:
        if ones >= self.r0 and zeros >= self.r1:
            return Leaf(self.window_value, ones, zeros)
        if ones + zeros == self.n:
            return Leaf(self.residual[ones], ones, zeros)
        return LazyQuery(self, ones, zeros)

    @property
    def materialized(self) -> bool:
        return isinstance(self.root, (Leaf, Query))

    def start(self) -> Node:
        return self.root if self.root is not None else self.node_at(0, 0)


def _materialize(tree: ParityDecisionTree) -> Node:
    # identical (ones, zeros) prefixes have identical subtrees, so share them
    memo: dict[tuple[int, int], Node] = {}

    def build(a: int, b: int) -> Node:
        key = (a, b)
        if key not in memo:
            node = tree.node_at(a, b)
            if isinstance(node, LazyQuery):
                node = Query(a + b + 1, build(a, b + 1), build(a + 1, b), a, b)
            memo[key] = node
        return memo[key]

    return build(0, 0)


def build_pdt(f: SymmetricFunction, lazy_above: int = LAZY_ABOVE) -> ParityDecisionTree:
    report = r_parameters(f)
    pattern = report.chosen_pattern
    if pattern is None:
        # clamped: n is even and the window is the single middle level
        pattern = "+1" if f(report.r0) == 1 else "-1"
    parity = pattern in ("+parity", "-parity")
    residual = f.times_parity() if parity else f
    window_value = pattern_value(pattern, 0)
    lo, hi = report.window
    assert all(residual(k) == window_value for k in range(lo, hi + 1))
    tree = ParityDecisionTree(f.n, report.r0, report.r1, parity, residual.levels, window_value)
    if f.n <= lazy_above:
        object.__setattr__(tree, "root", _materialize(tree))
    return tree


def eval_pdt(t: ParityDecisionTree, x) -> int:
    bits = [int(v) for v in x]
    if len(bits) != t.n or any(v not in (0, 1) for v in bits):
        raise ValueError(f"expected {t.n} bits")
    node = t.start()
    seen = set()
    while not isinstance(node, Leaf):
        if not isinstance(node, (Query, LazyQuery)):
            raise MalformedTreeError(f"unexpected node {node!r}")
        if not 1 <= node.var <= t.n or node.var in seen:
            raise MalformedTreeError(f"bad query variable {node.var}")
        seen.add(node.var)
        node = node.one if bits[node.var - 1] else node.zero
    if node.value not in (-1, 1):
        raise MalformedTreeError(f"bad leaf label {node.value}")
    if t.parity_pre_query and sum(bits) % 2:
        return -node.value
    return node.value


def _compile(t: ParityDecisionTree):
    """Flatten the reachable nodes into arrays ``(var, zero, one, value)``.

    Leaves point to themselves with ``var = 0``.  Materialized nodes are
    keyed by identity; lazy nodes by their ``(ones, zeros)`` state, which
    determines them.
    """
    keep, index = [], {}
    var, zero, one, value = [], [], [], []

    def key(node):
        if isinstance(node, LazyQuery) or (not t.materialized and isinstance(node, Leaf)):
            return (type(node).__name__, node.ones, node.zeros)
        return id(node)

    def visit(node) -> int:
        k = key(node)
        if k in index:
            return index[k]
        i = index[k] = len(keep)
        keep.append(node)
        var.append(0), zero.append(i), one.append(i), value.append(0)
        if isinstance(node, Leaf):
            value[i] = node.value
        elif isinstance(node, (Query, LazyQuery)):
            var[i] = node.var
            zero[i] = visit(node.zero)
            one[i] = visit(node.one)
        else:
            raise MalformedTreeError(f"unexpected node {node!r}")
        return i

    visit(t.start())
    return tuple(np.asarray(a, dtype=np.int64) for a in (var, zero, one, value))


def eval_pdt_table(t: ParityDecisionTree) -> np.ndarray:
    """Evaluate the tree on all ``2**n`` inputs at once (bit ``i`` of index = ``x_{i+1}``)."""
    var, zero, one, value = _compile(t)
    idx = np.arange(1 << t.n)
    state = np.zeros(idx.shape, dtype=np.int64)
    for _ in range(t.n):
        v = var[state]
        bit = (idx >> np.maximum(v - 1, 0)) & 1
        state = np.where(bit == 1, one[state], zero[state])
    if (var[state] != 0).any():
        raise MalformedTreeError("path longer than n queries")
    out = value[state]
    if t.parity_pre_query:
        out = np.where(popcounts(t.n) % 2 == 1, -out, out)
    return out


def _residual_leaves_traversal(root: Node, n: int) -> tuple[int, int]:
    """``(all leaves, leaves at depth n)`` of a materialized residual tree."""
    memo: dict[int, tuple[int, int]] = {}

    def count(node: Node) -> tuple[int, int]:
        if isinstance(node, Leaf):
            return 1, int(node.ones + node.zeros == n)
        key = id(node)
        if key not in memo:
            z, o = count(node.zero), count(node.one)
            memo[key] = (z[0] + o[0], z[1] + o[1])
        return memo[key]

    return count(root)


def residual_leaves_closed_form(n: int, r0: int, r1: int) -> int:
    """Leaves of the pruned tree from the ``(ones, zeros)`` prefix counts.

    Leaves pruned right after the ``r0``-th one, leaves pruned right after
    the ``r1``-th zero, and unpruned depth-``n`` leaves.
    """
    if r0 == 0 and r1 == 0:
        return 1
    total = 0
    if r0 >= 1:
        total += sum(binomial(r0 - 1 + b, r0 - 1) for b in range(r1, n - r0 + 1))
    if r1 >= 1:
        total += sum(binomial(a + r1 - 1, r1 - 1) for a in range(r0, n - r1 + 1))
    total += sum(binomial(n, a) for a in range(n + 1) if a < r0 or n - a < r1)
    return total


def full_depth_leaves_closed_form(n: int, r0: int, r1: int) -> int:
    """Leaves of the pruned tree that sit at depth ``n``."""
    if r0 == 0 and r1 == 0:
        return 0
    total = sum(binomial(n, a) for a in range(n + 1) if a < r0 or n - a < r1)
    # window leaves whose pruning step is the last query
    if r0 >= 1 and n - r0 >= r1:
        total += binomial(n - 1, r0 - 1)
    if r1 >= 1 and n - r1 >= r0:
        total += binomial(n - 1, r1 - 1)
    return total


@dataclass(frozen=True)
class LeafCountReport:
    """``count`` is the number of reachable leaves.

    With a parity pre-query the residual tree hangs below both parity
    answers, but a depth-``n`` leaf fixes every bit and so is reachable
    under only one of them: ``count = 2 * residual - full_depth``.
    ``raw_count`` is ``2 * residual`` without that correction.
    """

    count: int
    raw_count: int
    bound_no_parity: int
    bound_with_parity: int
    parity_pre_query: bool

    @property
    def applicable_bound(self) -> int:
        return self.bound_with_parity if self.parity_pre_query else self.bound_no_parity

    @property
    def within_applicable(self) -> bool:
        return self.count <= self.applicable_bound

    @property
    def within_4x(self) -> bool:
        return self.count <= self.bound_with_parity


def leaf_count(t: ParityDecisionTree) -> tuple[int, LeafCountReport]:
    if t.materialized:
        residual, full_depth = _residual_leaves_traversal(t.root, t.n)
    else:
        residual = residual_leaves_closed_form(t.n, t.r0, t.r1)
        full_depth = full_depth_leaves_closed_form(t.n, t.r0, t.r1)
    if t.parity_pre_query:
        count, raw = 2 * residual - full_depth, 2 * residual
    else:
        count = raw = residual
    base = binomial(t.n, t.r0) + binomial(t.n, t.r1)
    return count, LeafCountReport(count, raw, 2 * base, 4 * base, t.parity_pre_query)


def iter_leaves(t: ParityDecisionTree) -> Iterator[tuple[tuple[int, ...], Leaf]]:
    """Residual leaves with the bit prefix ``(x_1, ..., x_d)`` leading to them."""
    stack: list[tuple[Node, tuple[int, ...]]] = [(t.start(), ())]
    while stack:
        node, prefix = stack.pop()
        if isinstance(node, Leaf):
            yield prefix, node
        else:
            stack.append((node.one, prefix + (1,)))
            stack.append((node.zero, prefix + (0,)))


def max_depth(t: ParityDecisionTree) -> int:
    memo: dict[tuple[int, int], int] = {}

    def depth(node: Node) -> int:
        if isinstance(node, Leaf):
            return 0
        key = (node.ones, node.zeros)
        if key not in memo:
            memo[key] = 1 + max(depth(node.zero), depth(node.one))
        return memo[key]

    return depth(t.start())


def leaf_indicator_table(n: int, prefix: tuple[int, ...], parity_bit: int | None = None) -> np.ndarray:
    """0/1 table of the inputs reaching a leaf (and with the given parity, if any)."""
    idx = np.arange(1 << n)
    d = len(prefix)
    code = sum(bit << i for i, bit in enumerate(prefix))
    mask = (idx & ((1 << d) - 1)) == code
    if parity_bit is not None:
        par = np.zeros_like(idx)
        for i in range(n):
            par ^= (idx >> i) & 1
        mask &= par == parity_bit
    return mask.astype(np.int64)


def indicator_norm(table: np.ndarray) -> Fraction:
    coeffs = walsh_hadamard(table)
    return Fraction(int(np.abs(coeffs).sum()), table.shape[0])


@dataclass(frozen=True)
class SizeCertificate:
    l1_norm: Fraction
    leaves: int
    leaves_audited: int


def l1_size_certificate(f: SymmetricFunction, t: ParityDecisionTree,
                        audit_max: int = AUDIT_MAX, _norm_cache: dict | None = None) -> SizeCertificate:
    """Check ``||f^||_1 <= #leaves`` and, for small ``n``, that each leaf indicator has norm 1.

    Raises :class:`CertificateError` on any violation.
    """
    norm = spectral_norm(level_spectrum(f))
    count, _ = leaf_count(t)
    if norm > count:
        raise CertificateError(f"{f.level_string()}: ||f^||_1 = {norm} exceeds {count} leaves")
    audited = 0
    if f.n <= audit_max:
        cache = {} if _norm_cache is None else _norm_cache
        parities = (0, 1) if t.parity_pre_query else (None,)
        for prefix, _leaf in iter_leaves(t):
            for p in parities:
                key = (f.n, prefix, p)
                if key not in cache:
                    table = leaf_indicator_table(f.n, prefix, p)
                    # a full-depth prefix fixes the parity, so one branch is empty
                    cache[key] = indicator_norm(table) if table.any() else None
                if cache[key] is None:
                    continue
                if cache[key] != 1:
                    raise CertificateError(
                        f"{f.level_string()}: leaf {prefix} parity {p} has norm {cache[key]}")
                audited += 1
        if audited != count:
            raise CertificateError(f"{f.level_string()}: {audited} nonempty leaves, count says {count}")
    return SizeCertificate(norm, count, audited)


def export_tree(t: ParityDecisionTree) -> str:
    """Nested text form: one node per line, two spaces per depth, zero child first."""
    lines = []
    indent = 0
    if t.parity_pre_query:
        lines.append("PARITY")
        indent = 1
    stack: list[tuple[Node, int]] = [(t.start(), indent)]
    while stack:
        node, depth = stack.pop()
        pad = "  " * depth
        if isinstance(node, Leaf):
            lines.append(f"{pad}LEAF {'+1' if node.value == 1 else '-1'}")
        else:
            lines.append(f"{pad}Q {node.var}")
            stack.append((node.one, depth + 1))
            stack.append((node.zero, depth + 1))
    return "\n".join(lines) + "\n"


def parse_tree(text: str) -> tuple[bool, Node]:
    """Inverse of :func:`export_tree`; returns ``(parity_pre_query, root)``."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        if not raw.strip():
            continue
        stripped = raw.lstrip(" ")
        depth, rem = divmod(len(raw) - len(stripped), 2)
        if rem:
            raise MalformedTreeError(f"line {lineno}: odd indentation")
        rows.append((lineno, depth, stripped.split()))
    parity = bool(rows) and rows[0][2] == ["PARITY"]
    pos = 1 if parity else 0

    def parse(depth: int, ones: int, zeros: int) -> Node:
        nonlocal pos
        if pos >= len(rows):
            raise MalformedTreeError("unexpected end of tree")
        lineno, d, tokens = rows[pos]
        if d != depth:
            raise MalformedTreeError(f"line {lineno}: expected depth {depth}")
        pos += 1
        if tokens[0] == "LEAF" and len(tokens) == 2 and tokens[1] in ("+1", "-1"):
            return Leaf(int(tokens[1]), ones, zeros)
        if tokens[0] == "Q" and len(tokens) == 2 and tokens[1].isdigit():
            zero = parse(depth + 1, ones, zeros + 1)
            one = parse(depth + 1, ones + 1, zeros)
            return Query(int(tokens[1]), zero, one, ones, zeros)
        raise MalformedTreeError(f"line {lineno}: cannot parse {' '.join(tokens)!r}")

    root = parse(1 if parity else 0, 0, 0)
    if pos != len(rows):
        raise MalformedTreeError(f"line {rows[pos][0]}: trailing content")
    return parity, root
