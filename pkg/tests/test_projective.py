import pytest

from smallcovers.lift import equilibrium_check, is_equivariant
from smallcovers.projective import rpn_tri
from smallcovers.search import SearchExhausted
from smallcovers.simplicial import betti_mod2, integral_homology, orientable, verify_closed_manifold

from conftest import rpn


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_rpn(n):
    b = rpn(n)
    X = b.complex
    assert len(X.vertices) == 2 ** n + n + 1
    assert betti_mod2(X) == [1] * (n + 1)
    assert X.euler_characteristic() == (1 if n % 2 == 0 else 0)
    rep = verify_closed_manifold(X)
    assert rep.ok and rep.certificate == ("full" if n <= 3 else "weak")
    assert equilibrium_check(X, b.zones, b.equilibrium, n).ok


@pytest.mark.parametrize("n", [2, 3])
def test_rpn_homology(n):
    X = rpn(n).complex
    H = integral_homology(X).integral
    assert H[1] == (0, [2])
    assert orientable(X) is (n % 2 == 1)


def test_rp3_is_twelve_vertices():
    assert rpn(3).complex.f_vector() == (12, 60, 96, 48)


def test_bad_n():
    with pytest.raises(ValueError):
        rpn_tri(0)
    with pytest.raises(ValueError):
        rpn_tri(7)


def test_tiny_budget():
    with pytest.raises(SearchExhausted):
        rpn_tri(3, node_budget=1)


def test_rp2_is_equivariant():
    b = rpn(2)
    assert is_equivariant(b.complex, b.action)
