import random
from fractions import Fraction

import numpy as np
import pytest

from symspec.dsl import named_families, parse_function_spec
from symspec.pdt import (LazyQuery, Leaf, MalformedTreeError, Query, build_pdt, eval_pdt,
                         eval_pdt_table, export_tree, full_depth_leaves_closed_form,
                         l1_size_certificate, leaf_count, max_depth, parse_tree,
                         residual_leaves_closed_form)
from symspec.spectrum import SymmetricFunction, binomial

from conftest import all_functions, constant, parity

AND4 = SymmetricFunction(4, (1, 1, 1, 1, -1))


def test_constant_tree():
    t = build_pdt(constant(5, -1))
    assert isinstance(t.root, Leaf) and not t.parity_pre_query
    count, rep = leaf_count(t)
    assert count == 1 and rep.bound_no_parity == 4
    assert eval_pdt(t, [1, 0, 1, 1, 0]) == -1


def test_parity_tree():
    t = build_pdt(parity(6))
    assert t.parity_pre_query
    count, rep = leaf_count(t)
    assert count == 2 and rep.within_applicable
    assert eval_pdt(t, [0] * 6) == 1
    assert eval_pdt(t, [1, 0, 0, 0, 0, 0]) == -1


def test_and4_path_tree():
    t = build_pdt(AND4)
    assert (t.r0, t.r1) == (0, 1)
    count, rep = leaf_count(t)
    assert count == 5 and rep.bound_no_parity == 10
    assert eval_pdt(t, [1, 1, 1, 1]) == -1
    assert max_depth(t) == 4
    cert = l1_size_certificate(AND4, t)
    assert cert.l1_norm == Fraction(11, 4) and cert.leaves == 5


def test_maj3_certificate(maj3):
    t = build_pdt(maj3)
    cert = l1_size_certificate(maj3, t)
    assert cert.l1_norm == 2 <= cert.leaves == cert.leaves_audited


def test_eval_agrees_exhaustive_small():
    for n in range(1, 9):
        for f in all_functions(n):
            t = build_pdt(f)
            assert np.array_equal(eval_pdt_table(t), f.truth_table())


def test_lazy_tree_matches_materialized():
    for n in range(1, 9):
        for f in all_functions(n):
            lazy, full = build_pdt(f, lazy_above=0), build_pdt(f)
            assert leaf_count(lazy) == leaf_count(full)
            assert np.array_equal(eval_pdt_table(lazy), f.truth_table())


def test_named_families_random_inputs():
    rng = random.Random(1)
    for n in (16, 20, 24):
        for spec in named_families(n):
            f = parse_function_spec(spec)
            t = build_pdt(f)
            for _ in range(300):
                x = [rng.randrange(2) for _ in range(n)]
                assert eval_pdt(t, x) == f(sum(x))


def test_closed_forms():
    # brute-force the pruning rule over all prefixes
    for n in range(1, 9):
        for r0 in range(n + 1):
            for r1 in range(n + 1 - r0):
                leaves = deep = 0
                stack = [(0, 0)]
                while stack:
                    a, b = stack.pop()
                    if (a >= r0 and b >= r1) or a + b == n:
                        leaves += 1
                        deep += a + b == n
                        continue
                    stack += [(a + 1, b), (a, b + 1)]
                assert residual_leaves_closed_form(n, r0, r1) == leaves
                assert full_depth_leaves_closed_form(n, r0, r1) == deep


def test_four_times_bound_and_depth():
    for n in range(1, 11):
        for f in all_functions(n):
            t = build_pdt(f)
            count, rep = leaf_count(t)
            assert rep.within_4x
            assert max_depth(t) <= n


def test_four_times_bound_first_failure_for_majority():
    fails = [n for n in range(3, 43, 2) if not leaf_count(build_pdt(parse_function_spec(f"maj:{n}")))[1].within_4x]
    assert fails[0] == 41


def test_two_times_bound_counterexamples():
    # level-n leaves can exceed C(n,r0) + C(n,r1); the 2x bound fails
    t = build_pdt(SymmetricFunction.from_levels([1, 1, 1, 1, 1, 1, -1, 1, 1, 1]))
    count, rep = leaf_count(t)
    assert not t.parity_pre_query and (t.r0, t.r1) == (0, 4)
    assert count == 256 > rep.bound_no_parity == 254
    t = build_pdt(parse_function_spec("++++++-++++"))
    count, rep = leaf_count(t)
    assert count == 1024 > rep.bound_no_parity == 1008 and rep.within_4x


def test_reachable_leaf_count():
    f = parse_function_spec("+++++-+-+-")
    t = build_pdt(f)
    count, rep = leaf_count(t)
    assert t.parity_pre_query and (t.r0, t.r1) == (4, 0)
    assert rep.raw_count == 512 > rep.bound_with_parity == 508
    assert count == 2 * 256 - full_depth_leaves_closed_form(9, 4, 0) <= 508
    assert l1_size_certificate(f, t).leaves_audited == count


def test_large_n_lazy():
    f = parse_function_spec("maj:1001")
    t = build_pdt(f)
    assert not t.materialized
    count, rep = leaf_count(t)
    # for r near n/2 the depth-n leaves (~2^n) outgrow 4 (C(n,r0) + C(n,r1))
    assert not rep.within_4x
    assert 4.9 < count / rep.bound_with_parity < 5.0
    x = [1] * 501 + [0] * 500
    assert eval_pdt(t, x) == 1
    assert isinstance(t.start(), LazyQuery)


def test_export_round_trip():
    for spec in ("maj:5", "and:4", "parity:3", "+--+-", "g:2:6"):
        t = build_pdt(parse_function_spec(spec))
        text = export_tree(t)
        parity_flag, root = parse_tree(text)
        assert parity_flag == t.parity_pre_query
        assert export_tree(type(t)(t.n, t.r0, t.r1, t.parity_pre_query, t.residual,
                                   t.window_value, root)) == text


def test_export_golden_and4():
    assert export_tree(build_pdt(AND4)) == (
        "Q 1\n  LEAF +1\n  Q 2\n    LEAF +1\n    Q 3\n      LEAF +1\n"
        "      Q 4\n        LEAF +1\n        LEAF -1\n")


def test_malformed_trees():
    with pytest.raises(MalformedTreeError):
        parse_tree("Q 1\n  LEAF +1\n")
    with pytest.raises(MalformedTreeError):
        parse_tree("Q 1\n   LEAF +1\n  LEAF -1\n")
    with pytest.raises(MalformedTreeError):
        parse_tree("LEAF 0\n")
    t = build_pdt(AND4)
    bad = type(t)(4, 0, 1, False, t.residual, 1, Query(1, Leaf(1, 0, 1), Query(1, Leaf(1, 1, 1), Leaf(1, 2, 0), 1, 0), 0, 0))
    with pytest.raises(MalformedTreeError):
        eval_pdt(bad, [1, 1, 0, 0])
    with pytest.raises(ValueError):
        eval_pdt(t, [1, 1])
