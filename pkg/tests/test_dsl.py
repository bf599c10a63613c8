import pytest
from hypothesis import given, strategies as st

from symspec.dsl import SpecError, format_function_spec, named_families, parse_function_spec, parse_spec


def test_examples():
    assert parse_function_spec("parity:4").levels == (1, -1, 1, -1, 1)
    assert parse_function_spec("g:1:4").levels == (1, -1, 1, 1, 1)
    f = parse_function_spec("+--+")
    assert f.n == 3 and f.levels == (1, -1, -1, 1)


def test_families():
    assert parse_function_spec("maj:4").levels == (-1, -1, -1, 1, 1)
    assert parse_function_spec("maj:3").levels == (-1, -1, 1, 1)
    assert parse_function_spec("and:3").levels == (1, 1, 1, -1)
    assert parse_function_spec("or:3").levels == (1, -1, -1, -1)
    assert parse_function_spec("mod:3:6").levels == (-1, 1, 1, -1, 1, 1, -1)
    assert parse_function_spec("threshold:2:3").levels == (-1, -1, 1, 1)
    assert parse_function_spec("random:7:20") == parse_function_spec("random:7:20")
    assert parse_function_spec("+−−+") == parse_function_spec("+--+")


@pytest.mark.parametrize("text, position", [
    ("maj:0", 4), ("", 0), ("foo:3", 0), ("maj:x", 4), ("mod:3", 3), ("++x-", 2),
    ("+", 0), ("g:9:4", 2), ("  parity:-1", 9),
])
def test_errors_carry_position(text, position):
    with pytest.raises(SpecError) as info:
        parse_spec(text)
    assert info.value.position == position


@given(st.sampled_from(["maj", "and", "or", "parity"]), st.integers(1, 40))
def test_round_trip_named(family, n):
    text = f"{family}:{n}"
    assert format_function_spec(text) == text
    assert parse_function_spec(format_function_spec(text)) == parse_function_spec(text)


@given(st.text(alphabet="+-", min_size=2, max_size=30))
def test_round_trip_literal(text):
    assert format_function_spec(text) == text


def test_named_family_list():
    specs = named_families(64)
    assert len(specs) == len(set(specs)) == 8
    assert all(parse_function_spec(s).n == 64 for s in specs)
