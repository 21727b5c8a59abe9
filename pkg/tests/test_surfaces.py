import pytest
from hypothesis import given, settings, strategies as st

from smallcovers.charfn import enumerate_charfns, parse_beta_arg
from smallcovers.lift import equilibrium_check, is_equivariant
from smallcovers.polytope import polygon
from smallcovers.simplicial import verify_closed_manifold
from smallcovers.surfaces import audit_lower_bound, hub_facet, surface_2m, surface_2m4

betas_by_m = {m: enumerate_charfns(polygon(m)) for m in range(3, 8)}


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7), st.data())
def test_2m4_formulas(m, data):
    beta = data.draw(st.sampled_from(betas_by_m[m]))
    b = surface_2m4(m, beta)
    X = b.complex
    assert X.f_vector() == (2 * m + 4, 9 * m, 6 * m)
    assert X.euler_characteristic() == 4 - m
    assert verify_closed_manifold(X).ok
    assert is_equivariant(X, b.action)
    assert equilibrium_check(X, b.zones, b.equilibrium, 2).ok
    rep = audit_lower_bound(b)
    assert rep.ok and rep.margin == 4


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7), st.data())
def test_2m_meets_bound_when_a_vector_is_unique(m, data):
    beta = data.draw(st.sampled_from(betas_by_m[m]))
    if hub_facet(beta) is None:
        with pytest.raises(ValueError):
            surface_2m(m, beta)
        return
    b = surface_2m(m, beta)
    X = b.complex
    assert len(X.vertices) == 2 * m
    assert X.euler_characteristic() == 4 - m
    assert verify_closed_manifold(X).ok
    assert is_equivariant(X, b.action)
    rep = audit_lower_bound(b)
    assert rep.ok and rep.margin == 0


def test_six_vertex_rp2():
    b = surface_2m(3, parse_beta_arg("10,01,11"))
    assert b.complex.f_vector() == (6, 15, 10)


def test_square_torus():
    b = surface_2m4(4, parse_beta_arg("10,01,10,01"))
    assert len(b.complex.vertices) == 12
    assert b.complex.euler_characteristic() == 0


def test_bad_parameters():
    with pytest.raises(ValueError):
        surface_2m4(2, parse_beta_arg("10,01"))
    with pytest.raises(ValueError):
        surface_2m4(4, parse_beta_arg("10,01,11"))
    with pytest.raises(ValueError):
        surface_2m4(4, parse_beta_arg("10,10,01,11"))
