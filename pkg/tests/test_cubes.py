from math import factorial

import pytest

from smallcovers.cubes import corners, cube_triangulations, main_diagonals


def test_catalog_sizes():
    assert len(cube_triangulations(1)) == 1
    assert len(cube_triangulations(2)) == 2
    assert len(cube_triangulations(3)) == 74


def test_every_triangulation_has_full_volume():
    # unimodular simplices have volume 1/d!; the corner-cut one has 2/d!
    for d in (2, 3):
        for tri in cube_triangulations(d):
            assert all(len(t) == d + 1 for t in tri)
            assert factorial(d) // 2 <= len(tri) <= factorial(d)


def test_diagonals():
    staircase = [t for t in cube_triangulations(3) if len(t) == 6 and len(main_diagonals(3, t)) == 1]
    assert staircase
    five = [t for t in cube_triangulations(3) if len(t) == 5]
    assert len(five) == 2 and all(not main_diagonals(3, t) for t in five)
    assert len(corners(3)) == 8


def test_catalog_limit():
    with pytest.raises(ValueError):
        cube_triangulations(4)
