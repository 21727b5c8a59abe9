import functools

import pytest

from smallcovers.simplicial import SimplicialComplex

RP2_6 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
         (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4)]


def torus7():
    tris = []
    for i in range(7):
        tris.append((i, (i + 1) % 7, (i + 3) % 7))
        tris.append((i, (i + 2) % 7, (i + 3) % 7))
    return SimplicialComplex(tris)


def sphere(d):
    """Boundary of the (d+1)-simplex."""
    verts = range(d + 2)
    return SimplicialComplex(frozenset(verts) - {v} for v in verts)


@functools.lru_cache(maxsize=None)
def threefold(name):
    from smallcovers.threefolds import build_target
    return build_target(name)


@functools.lru_cache(maxsize=None)
def rpn(n):
    from smallcovers.projective import rpn_tri
    return rpn_tri(n)


@pytest.fixture
def rp2():
    return SimplicialComplex(RP2_6)
