"""Triangulations of small cubes without new vertices.

Corners of the d-cube are bit tuples.  ``cube_triangulations(d)`` lists every
triangulation for d <= 3 (2 for the square, 74 for the 3-cube), found by an
exact search over full-dimensional simplices: sets filling the whole
volume whose members never cross along an affine circuit.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import factorial


def corners(d: int) -> list:
    return list(product((0, 1), repeat=d))


def _det(rows) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if m[r][i] != 0), None)
        if p is None:
            return Fraction(0)
        if p != i:
            m[i], m[p] = m[p], m[i]
            det = -det
        det *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            for c in range(i, n):
                m[r][c] -= f * m[i][c]
    return det


def _kernel(cols) -> list | None:
    """A nonzero vector in the kernel of the matrix with these columns."""
    rows = len(cols[0])
    k = len(cols)
    m = [[Fraction(cols[j][i]) for j in range(k)] for i in range(rows)]
    pivots = []
    r = 0
    for c in range(k):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(k) if c not in pivots]
    if not free:
        return None
    v = [Fraction(0)] * k
    v[free[0]] = Fraction(1)
    for i, c in enumerate(pivots):
        v[c] = -m[i][free[0]]
    return v


@lru_cache(maxsize=None)
def _circuits(d: int) -> tuple:
    pts = corners(d)
    lifted = [list(p) + [1] for p in pts]
    out = []
    dependent = set()
    for k in range(3, d + 3):
        for S in combinations(range(len(pts)), k):
            if any(frozenset(T) in dependent for T in combinations(S, k - 1)):
                continue
            v = _kernel([lifted[i] for i in S])
            if v is None:
                continue
            dependent.add(frozenset(S))
            pos = frozenset(S[i] for i in range(k) if v[i] > 0)
            neg = frozenset(S[i] for i in range(k) if v[i] < 0)
            out.append((pos, neg))
    return tuple(out)


@lru_cache(maxsize=None)
def cube_triangulations(d: int) -> tuple:
    """All triangulations of the d-cube, each a tuple of corner-index sets."""
    if d > 3:
        raise ValueError("the catalog covers dimensions up to 3")
    pts = corners(d)
    if d == 1:
        return ((frozenset((0, 1)),),)
    simplices = []
    for S in combinations(range(len(pts)), d + 1):
        v = abs(_det([[a - b for a, b in zip(pts[i], pts[S[0]])] for i in S[1:]]))
        if v:
            simplices.append((frozenset(S), int(v)))
    circ = _circuits(d)

    def cross(a, b):
        return any((P <= a and N <= b) or (N <= a and P <= b) for P, N in circ)

    total = factorial(d)
    found = []

    def rec(chosen, vol, start):
        if vol == total:
            found.append(tuple(sorted(chosen, key=sorted)))
            return
        for i in range(start, len(simplices)):
            s, v = simplices[i]
            if vol + v <= total and not any(cross(s, t) for t in chosen):
                rec(chosen + [s], vol + v, i + 1)

    rec([], 0, 0)
    return tuple(found)


def main_diagonals(d: int, tops) -> set:
    """Edges of a triangulation joining opposite corners of the cube."""
    pts = corners(d)
    out = set()
    for t in tops:
        for a, b in combinations(sorted(t), 2):
            if all(x != y for x, y in zip(pts[a], pts[b])):
                out.add(frozenset((a, b)))
    return out
