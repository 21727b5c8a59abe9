import pytest

from smallcovers.charfn import parse_beta_arg
from smallcovers.lift import equilibrium_check, is_equivariant, translation_action
from smallcovers.polytope import prism
from smallcovers.search import SearchExhausted
from smallcovers.simplicial import betti_mod2, integral_homology, orientable, verify_closed_manifold
from smallcovers.threefolds import (
    PRISM_BETAS,
    TARGETS,
    audit_minimality,
    build_target,
    natural_count,
    polygon_triangulations,
    rp3_tri,
    target_spec,
)

from conftest import threefold

GOLDEN = {
    "rp3-12": ((12, 60, 96, 48), True, [(1, []), (0, [2]), (0, []), (1, [])]),
    "rp3-11": ((11, 52, 82, 41), True, [(1, []), (0, [2]), (0, []), (1, [])]),
    "n1": ((17, 106, 178, 89), True, [(1, []), (0, [2, 2]), (0, []), (1, [])]),
    # regression value for the second prism cover, not taken from a reference
    "n2": ((19, 111, 184, 92), False, [(1, []), (1, [2]), (0, [2]), (0, [])]),
    "n3": ((18, 114, 192, 96), False, [(1, []), (1, [2]), (0, [2]), (0, [])]),
}


@pytest.mark.parametrize("name", TARGETS)
def test_target(name):
    b = threefold(name)
    X = b.complex
    f, orient, H = GOLDEN[name]
    assert X.f_vector() == f
    assert verify_closed_manifold(X).ok
    assert X.euler_characteristic() == 0
    bet = betti_mod2(X)
    assert bet == bet[::-1]
    assert equilibrium_check(X, b.zones, b.equilibrium, 3).ok
    assert orientable(X) is orient
    assert integral_homology(X).integral == H


def test_rp3_12_is_not_equivariant():
    X = threefold("rp3-12").complex
    assert not is_equivariant(X, translation_action(target_spec("rp3-12").beta, X.vertices))


def test_rp3_wrapper():
    assert len(rp3_tri(11).complex.vertices) == 11
    with pytest.raises(ValueError):
        rp3_tri(10)


def test_deterministic():
    assert build_target("n1").complex.sorted_facets() == threefold("n1").complex.sorted_facets()


def test_budget_exhaustion():
    with pytest.raises(SearchExhausted):
        build_target("n3", budget=1)
    with pytest.raises(ValueError):
        build_target("n3", budget=0)


def test_unknown_target():
    with pytest.raises(ValueError):
        target_spec("n4")


def test_minimality_audit():
    for name in ("n1", "n2", "n3"):
        rep = audit_minimality(name, threefold(name))
        assert rep.ok and rep.f0 == rep.bound


def test_natural_construction_is_not_smaller_than_targets():
    P = prism()
    for key, name in zip(("beta1", "beta2", "beta3"), ("n1", "n2", "n3")):
        _, construction = natural_count(P, parse_beta_arg(PRISM_BETAS[key]))
        assert construction >= target_spec(name).f0


@pytest.mark.parametrize("k,catalan", [(3, 1), (4, 2), (5, 5), (6, 14), (7, 42)])
def test_polygon_triangulations(k, catalan):
    tris = polygon_triangulations(range(k))
    assert len(tris) == catalan
    assert all(len(t) == k - 2 for t in tris)
