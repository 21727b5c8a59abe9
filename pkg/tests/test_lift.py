import pytest
from hypothesis import given, settings, strategies as st

from smallcovers.charfn import enumerate_charfns, parse_beta_arg, standard_simplex_charfn
from smallcovers.lift import (
    GroupAction,
    Zone,
    barycentric_lift,
    cubical_lift,
    equilibrium_check,
    format_action,
    format_projection,
    format_zones,
    is_equivariant,
    lift_vertex_count,
    parse_action,
    parse_lift_label,
    parse_projection,
    parse_zones,
    translation_action,
)
from smallcovers.polytope import polygon, prism, simplex
from smallcovers.simplicial import SimplicialComplex, verify_closed_manifold

SQUARE_TORUS = parse_beta_arg("10,01,10,01")


@settings(max_examples=25, deadline=None)
@given(st.integers(3, 7), st.data())
def test_polygon_lift_counts(m, data):
    P = polygon(m)
    beta = data.draw(st.sampled_from(enumerate_charfns(P)))
    L = barycentric_lift(P, beta)
    X = L.complex
    assert len(X.vertices) == lift_vertex_count(P) == 4 + 2 * m + m
    assert len(X.facets) == 4 * 2 * m
    assert X.euler_characteristic() == 4 - m
    assert verify_closed_manifold(X).ok
    assert is_equivariant(X, L.action)


def test_simplex_lift_is_closed_manifold():
    for n in range(1, 4):
        L = barycentric_lift(simplex(n), standard_simplex_charfn(n))
        assert len(L.complex.vertices) == lift_vertex_count(simplex(n))
        assert verify_closed_manifold(L.complex).ok


def test_lift_zones_are_equilibrium():
    L = barycentric_lift(prism(), parse_beta_arg("100,100,010,001,111"))
    assert equilibrium_check(L.complex, L.zones(), L.equilibrium(), 3).ok


def test_lift_rejects_invalid_beta():
    with pytest.raises(ValueError):
        barycentric_lift(polygon(4), parse_beta_arg("10,10,01,11"))


def test_label_parsing():
    assert parse_lift_label("F1,3|010") == (frozenset({1, 3}), 2)
    assert parse_lift_label("F∅|11") == (frozenset(), 3)
    with pytest.raises(ValueError):
        parse_lift_label("x")


def test_translation_action_matches_lift_action():
    L = barycentric_lift(polygon(4), SQUARE_TORUS)
    A = translation_action(SQUARE_TORUS, L.complex.vertices)
    assert A.generators == L.action.generators


def test_action_round_trip_and_validation():
    L = barycentric_lift(polygon(5), parse_beta_arg("10,01,10,01,11"))
    A = parse_action(format_action(L.action))
    assert is_equivariant(L.complex, A)
    with pytest.raises(ValueError):
        GroupAction(1, [{"a": "b"}])  # not an involution
    with pytest.raises(ValueError):
        GroupAction(2, [{"a": "b", "b": "a"}, {"b": "c", "c": "b"}])  # do not commute
    with pytest.raises(ValueError):
        parse_action("g2: a->b\n")


def test_broken_action_detected():
    X = SimplicialComplex([("a", "b", "c"), ("a", "b", "d"), ("a", "c", "d"), ("b", "c", "d")])
    assert is_equivariant(X, GroupAction(1, [{"a": "b", "b": "a"}]))
    Y = SimplicialComplex([("a", "b"), ("b", "c")])
    assert not is_equivariant(Y, GroupAction(1, [{"a": "b", "b": "a"}]))


def test_zone_and_projection_round_trip():
    L = barycentric_lift(polygon(4), SQUARE_TORUS)
    X = L.complex
    zones = [Zone(z.id, z.vertices, frozenset(f for f in X.facets if f <= z.vertices)) for z in L.zones()]
    back = parse_zones(format_zones(zones, X), X)
    assert back == zones
    proj = parse_projection(format_projection(L.projection), L.polytope)
    assert proj.vertex_map == L.projection.vertex_map


def test_equilibrium_failures():
    L = barycentric_lift(polygon(4), SQUARE_TORUS)
    X, zones, eq = L.complex, L.zones(), L.equilibrium()
    assert not equilibrium_check(X, zones[:-1], eq).ok  # a simplex escapes every zone
    assert not equilibrium_check(X, zones, eq[:-1]).ok  # wrong equilibrium size
    assert not equilibrium_check(X, zones + zones[:1], eq).ok  # overlapping zones


def test_cubical_lift_cells():
    L = cubical_lift(simplex(3), standard_simplex_charfn(3))
    tops = L.top_cells()
    assert len(tops) == 4 and all(len(c.vertices) == 8 for c in tops)
    assert not L.collisions


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([polygon(5), polygon(6), simplex(2), simplex(3), prism()]), st.data())
def test_counted_f_vector_matches_built_complex(P, data):
    beta = data.draw(st.sampled_from(enumerate_charfns(P)))
    L = barycentric_lift(P, beta)
    assert L.f_vector() == L.complex.f_vector()
    assert len(L.vertices) == len(L.complex.vertices)


def test_counted_f_vector_simplex4_sample():
    P = simplex(4)
    L = barycentric_lift(P, standard_simplex_charfn(4))
    assert L.f_vector() == L.complex.f_vector()


def test_vertex_count_weights_faces_by_codimension():
    # prism: 5 facets, 9 edges, 6 vertices
    assert lift_vertex_count(prism()) == 8 + 5 * 4 + 9 * 2 + 6
    L = barycentric_lift(prism(), parse_beta_arg("100,100,010,001,111"))
    assert len(L.complex.vertices) == L.vertex_count() == 52
