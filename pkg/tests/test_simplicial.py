from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from smallcovers.simplicial import (
    ParseError,
    SimplicialComplex,
    betti_mod2,
    cone,
    cube_cell_complex,
    format_cplx,
    integral_homology,
    is_pseudomanifold,
    link,
    mod2_from_integral,
    orientable,
    parse_cplx,
    pull_triangulate,
    verify_closed_manifold,
)

from conftest import sphere, torus7

# small random complexes: up to 8 simplices on 7 vertices
simplices = st.frozensets(st.integers(0, 6), min_size=1, max_size=4)
complexes = st.lists(simplices, min_size=1, max_size=8).map(SimplicialComplex)


def test_sphere_invariants():
    for d in range(1, 5):
        S = sphere(d)
        assert betti_mod2(S) == [1] + [0] * (d - 1) + [1]
        assert orientable(S)
        rep = verify_closed_manifold(S)
        assert rep.ok and rep.certificate == ("full" if d <= 3 else "weak")


def test_rp2_homology(rp2):
    assert rp2.f_vector() == (6, 15, 10)
    assert betti_mod2(rp2) == [1, 1, 1]
    H = integral_homology(rp2)
    assert H.integral == [(1, []), (0, [2]), (0, [])]
    assert not orientable(rp2)
    assert verify_closed_manifold(rp2).ok


def test_torus_homology():
    T = torus7()
    assert T.f_vector() == (7, 21, 14)
    assert integral_homology(T).integral == [(1, []), (2, []), (1, [])]
    assert orientable(T)


@settings(max_examples=60, deadline=None)
@given(complexes)
def test_euler_equals_alternating_betti(X):
    assert X.euler_characteristic() == sum((-1) ** k * b for k, b in enumerate(betti_mod2(X)))


@settings(max_examples=60, deadline=None)
@given(complexes)
def test_universal_coefficients(X):
    assert mod2_from_integral(integral_homology(X)) == betti_mod2(X)


@settings(max_examples=60, deadline=None)
@given(complexes)
def test_cone_f_vector(X):
    C = cone("apex", SimplicialComplex(frozenset(map(str, f)) for f in X.facets))
    f, g = X.f_vector(), C.f_vector()
    assert g[0] == f[0] + 1
    for k in range(1, len(g)):
        assert g[k] == (f[k] if k < len(f) else 0) + f[k - 1]
    assert betti_mod2(C) == [1] + [0] * C.dim


@settings(max_examples=40, deadline=None)
@given(complexes)
def test_cplx_round_trip(X):
    # file labels are strings
    Y = SimplicialComplex(frozenset(f"v{x}" for x in f) for f in X.facets)
    assert parse_cplx(format_cplx(Y)) == Y


@pytest.mark.parametrize("d", range(1, 6))
def test_pulling_a_cube_gives_d_factorial_simplices(d):
    X = pull_triangulate(cube_cell_complex(d))
    tops = [f for f in X.facets if len(f) == d + 1]
    assert len(tops) == factorial(d) == len(X.facets)


def test_link_and_pseudomanifold():
    S = sphere(2)
    assert link(S, 0).f_vector() == (3, 3)
    disc = SimplicialComplex([(0, 1, 2)])
    assert not is_pseudomanifold(disc)
    assert is_pseudomanifold(disc, with_boundary=True)


def test_non_manifold_detected():
    # two triangles sharing only a vertex, closed up into two spheres at a point
    A = [f for f in sphere(2).facets]
    B = [frozenset(v + 10 if v else 0 for v in f) for f in A]
    X = SimplicialComplex(A + B)
    rep = verify_closed_manifold(X)
    assert not rep.ok and rep.witness == 0


@pytest.mark.parametrize(
    "text,line",
    [
        ("", None),
        ("dim 1 vertices 2\n", None),
        ("dim 1 vertices 2\na b\na b\n", 3),
        ("dim 1 vertices 2\na a\n", 2),
        ("dim x vertices 2\na b\n", 1),
        ("dim 2 vertices 3\na b c\na b\n", 3),
        ("dim 2 vertices 2\na b\n", 1),
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as e:
        parse_cplx(text)
    assert e.value.line == line


def test_orientability_needs_pseudomanifold():
    with pytest.raises(ValueError):
        orientable(SimplicialComplex([(0, 1, 2), (0, 1, 3), (0, 1, 4)]))
