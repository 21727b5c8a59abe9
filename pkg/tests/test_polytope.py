from math import comb, factorial

import pytest
from hypothesis import given, strategies as st

from smallcovers.polytope import (
    SimplePolytope,
    cubical_subdivision,
    format_polytope,
    make_polytope,
    parse_polytope,
    polygon,
    prism,
    prism_edge,
    prism_vertex,
    simplex,
)


@given(st.integers(3, 12))
def test_polygon_face_counts(m):
    P = polygon(m)
    assert P.f_vector() == (m, m)
    assert len(P.flags()) == 2 * m


@given(st.integers(1, 5))
def test_simplex_faces_are_proper_facet_subsets(n):
    P = simplex(n)
    assert len(P.faces) == 2 ** (n + 1) - 1
    for k in range(n + 1):
        assert len(P.faces_of_dim(k)) == comb(n + 1, k + 1)
    assert len(P.flags()) == factorial(n + 1)


def test_prism_counts():
    P = prism()
    assert P.f_vector() == (5, 9, 6)
    assert [len(P.faces_of_dim(k)) for k in range(3)] == [6, 9, 5]


def test_prism_vertex_names_are_distinct_vertices():
    vs = {prism_vertex(i) for i in range(1, 7)}
    assert len(vs) == 6 and all(v.dim == 0 for v in vs)
    assert prism_edge(1, 2).dim == 1


@pytest.mark.parametrize("P", [polygon(5), simplex(3), prism()])
def test_cubical_subdivision_has_one_cube_per_vertex(P):
    C = cubical_subdivision(P)
    assert len(C.cubes) == len(P.vertices)
    assert all(len(c) == 2 ** P.dim for c in C.cubes)


@pytest.mark.parametrize("P", [polygon(7), simplex(4), prism()])
def test_format_round_trip(P):
    Q = parse_polytope(format_polytope(P))
    assert Q == P


def test_face_keys():
    P = simplex(2)
    assert P.face(set()).key() == "F∅"
    assert P.face({1, 3}).key() == "F1,3"


@pytest.mark.parametrize(
    "dim,m,verts",
    [
        (2, 3, [{1, 2}, {2, 3}, {1, 2, 3}]),  # vertex in three facets
        (2, 4, [{1, 2}, {2, 3}, {3, 1}]),  # facet 4 unused
        (2, 3, [{1, 2}, {1, 2}, {2, 3}]),  # repeated vertex
    ],
)
def test_invalid_polytopes_rejected(dim, m, verts):
    with pytest.raises(ValueError):
        SimplePolytope(dim, m, tuple(map(frozenset, verts)))


def test_unknown_kind():
    with pytest.raises(ValueError):
        make_polytope("cube", 3)


def test_parse_rejects_bad_header():
    with pytest.raises(ValueError):
        parse_polytope("dimension 2\n1 2\n")
    with pytest.raises(ValueError):
        parse_polytope("")
