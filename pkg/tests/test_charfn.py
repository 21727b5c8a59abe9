import pytest
from hypothesis import given, strategies as st

from smallcovers.charfn import (
    CharFunction,
    enumerate_charfns,
    f2_rank,
    format_charfn,
    parse_beta_arg,
    parse_charfn,
    special_edge_count,
    span,
    standard_simplex_charfn,
    validate_charfn,
    vector_multiplicities,
)
from smallcovers.polytope import polygon, prism, simplex
from smallcovers.threefolds import PRISM_BETAS


@given(st.lists(st.integers(0, 15), max_size=6))
def test_span_size_is_two_to_rank(vs):
    assert len(span(vs)) == 2 ** f2_rank(vs)


def test_polygon_counts():
    # adjacent facets must carry different nonzero vectors of Z_2^2
    assert len(enumerate_charfns(polygon(3))) == 6
    assert len(enumerate_charfns(polygon(4))) == 18


def test_standard_simplex_charfn_valid():
    for n in range(1, 6):
        assert validate_charfn(simplex(n), standard_simplex_charfn(n))


def test_simplex_has_one_class_up_to_gl():
    # every beta on the n-simplex is a basis plus their sum
    for beta in enumerate_charfns(simplex(3)):
        vs = beta.vectors
        assert f2_rank(vs[:3]) == 3 and vs[0] ^ vs[1] ^ vs[2] ^ vs[3] == 0


def test_invalid_charfn_detected():
    assert not validate_charfn(polygon(4), parse_beta_arg("10,10,01,11"))
    with pytest.raises(ValueError):
        CharFunction(2, (0, 1, 2))
    with pytest.raises(ValueError):
        CharFunction(2, (4, 1, 2))


def test_parse_and_format_round_trip():
    beta = parse_beta_arg("100,010,001,111")
    assert parse_charfn(format_charfn(beta)) == beta
    assert beta.as_rows() == ["100", "010", "001", "111"]


@pytest.mark.parametrize("text", ["", "F1: 1 2\n", "F1: 1 0\nF3: 0 1\n", "G1: 1 0\n", "F1: 1 0\nF2: 1\n"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_charfn(text)


def test_prism_betas_valid_and_multiplicities():
    P = prism()
    for key, arg in PRISM_BETAS.items():
        assert validate_charfn(P, parse_beta_arg(arg)), key
    s = vector_multiplicities(parse_beta_arg(PRISM_BETAS["beta1"]))
    assert s[0b100] == 2 and sum(s.values()) == 5 and len(s) == 7


def test_special_edge_counts():
    P = prism()
    assert special_edge_count(P, parse_beta_arg(PRISM_BETAS["beta1"])) == 0
    assert special_edge_count(P, parse_beta_arg(PRISM_BETAS["beta3"])) > 0
