import random

import pytest
from hypothesis import given, settings, strategies as st

from cremona.cremap import cm_from_lin, cm_h, cm_identity, cm_sigma
from cremona.errors import ParseError
from cremona.exactnum import GF, QQ
from cremona.generators import random_jonquieres_map, random_word
from cremona.parsing import (
    format_map,
    format_triple,
    format_word,
    parse_map,
    parse_poly,
    parse_triple,
    parse_word,
)
from cremona.selftest import random_triple

fields = st.sampled_from([QQ, GF()])
seeds = st.integers(0, 10 ** 9)


def test_map_examples():
    assert parse_map("[y*z : x*z : x*y]") == cm_sigma()
    assert parse_map("[x : y : z]") == cm_identity()
    assert parse_map("[z-x : z-y : z]") == cm_from_lin(cm_h())


def test_poly_grammar_variants():
    assert parse_poly("3/2 x^2 y") == parse_poly("3/2*x*x*y")
    assert parse_poly("- x + 2y") == parse_poly("2*y - x")
    assert parse_poly("x - x").is_zero()


@pytest.mark.parametrize(
    "text, column",
    [("[x : y]", 7), ("[x : y : z", 11), ("[x : y^ : z]", 9), ("[x : y : z] q", 13)],
)
def test_map_errors_report_position(text, column):
    with pytest.raises(ParseError) as info:
        parse_map(text)
    assert info.value.line == 1 and info.value.column == column
    assert info.value.expected


def test_inhomogeneous_map_rejected():
    with pytest.raises(ParseError, match="homogeneous"):
        parse_map("[x + y*z : y : z]")
    with pytest.raises(ParseError, match="degrees"):
        parse_map("[x*x : y : z]")


def test_word_errors():
    with pytest.raises(ParseError) as info:
        parse_word("sigma\n\n  lin [[1,0,0],[0,1,0],[0,0]]\n")
    assert info.value.line == 3
    with pytest.raises(ParseError, match="unknown letter"):
        parse_word("tau\n")
    with pytest.raises(ParseError, match="singular"):
        parse_word("lin [[1,0,0],[0,1,0],[0,0,0]]")


def test_word_comments_skipped():
    w = parse_word("# header\nsigma  # the involution\n\nlin [[1,0,0],[0,1,0],[0,0,2]]\n")
    assert len(w) == 2


def test_triple_errors():
    with pytest.raises(ParseError, match="size"):
        parse_triple("x\n1\n\n1\n\n1\n")
    with pytest.raises(ParseError, match="entries"):
        parse_triple("2\n1 0\n0\n")
    with pytest.raises(ParseError, match="three"):
        parse_triple("1\n1\n\n2\n")


@given(fields, seeds)
@settings(max_examples=40, deadline=None)
def test_map_roundtrip(K, seed):
    f, _ = random_jonquieres_map(random.Random(seed), K)
    text = format_map(f)
    assert parse_map(text, K) == f
    assert format_map(parse_map(text, K)) == text


@given(fields, seeds, st.integers(0, 8))
@settings(max_examples=60, deadline=None)
def test_word_roundtrip(K, seed, n):
    w = random_word(random.Random(seed), n, K)
    text = format_word(w)
    assert parse_word(text, K) == w
    assert format_word(parse_word(text, K)) == text


@given(fields, seeds, st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_triple_roundtrip(K, seed, n):
    T = random_triple(random.Random(seed), n, K)
    text = format_triple(T)
    assert parse_triple(text, K) == T
    assert format_triple(parse_triple(text, K)) == text
