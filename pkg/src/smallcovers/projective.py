"""Equilibrium triangulations of RP^n with 2^n + n + 1 vertices.

The lifted cube complex over the n-simplex is the boundary of the
(n+1)-cube modulo the antipodal map.  Triangulating the proper cells without
new vertices and then coning every top cube from its fixed point gives a
simplicial complex exactly when no two points g and g + delta end up joined
by two different cells, where delta is the diagonal direction shared by the
cells over a facet set and over its complement.

One global pulling order violates this already for n = 3, so each proper
cell picks its own filling: a cone from one of its corners, or for 3-cells
also the corner-cut filling with five tetrahedra, which has no interior
diagonal.  The fillings are found by a small constraint search.
"""

from __future__ import annotations

from dataclasses import dataclass

from itertools import combinations

from .charfn import standard_simplex_charfn
from .lift import (
    GroupAction,
    LiftedCubicalComplex,
    Zone,
    cell_name,
    cubical_lift,
    equilibrium_labels,
    lift_label,
    translation_action,
)
from .polytope import simplex
from .search import solve_binary_csp
from .cubes import corners, cube_triangulations, main_diagonals
from .simplicial import SimplicialComplex, pull_cell

N_MAX = 6


@dataclass
class RPnBuild:
    n: int
    complex: SimplicialComplex
    zones: list
    equilibrium: list
    apexes: list
    action: GroupAction
    filling: dict  # cell name -> how the cell was triangulated


def rpn_tri(n: int, node_budget: int = 200_000) -> RPnBuild:
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > N_MAX:
        raise ValueError(f"n larger than the configured maximum {N_MAX}")
    P = simplex(n)
    beta = standard_simplex_charfn(n)
    L = cubical_lift(P, beta)
    if L.collisions:
        raise RuntimeError("internal error: lifted cells of the simplex coincide")
    choice = _search_fillings(L, n, node_budget)
    eq = equilibrium_labels(n)
    tri = {}
    for cell in sorted(L.cells.values(), key=lambda c: (c.dim, _key(c))):
        if cell.dim == 0 or cell.dim == 1:
            tri[cell.id] = ([frozenset(cell.vertices)], cell.vertices)
        elif cell.dim < n:
            o = choice[cell.id]
            if o.tops is None:
                tops = pull_cell(cell, tri, eq[o.value[1]])
            else:
                tops = [frozenset(eq[g] for g in t) for t in o.tops]
            tri[cell.id] = (tops, cell.vertices)
    maximal = []
    zones = []
    apexes = []
    for cell in L.top_cells():
        F = cell.id[0]
        apex = lift_label(beta, F, 0)
        apexes.append(apex)
        bd = [t for b in cell.boundary for t in tri[b][0]]
        tops = [t | {apex} for t in bd]
        maximal += tops
        zones.append(Zone(F.key(), frozenset(cell.vertices) | {apex}, frozenset(tops)))
    X = SimplicialComplex(maximal)
    action = translation_action(beta, X.vertices)
    filling = {cell_name(cid, n): _describe(o, eq) for cid, o in choice.items()}
    return RPnBuild(n, X, zones, eq, sorted(apexes), action, filling)


CATALOG, CONE = 0, 1


def _key(cell):
    F, r = cell.id
    return (sorted(F.facet_set), r)


def _elems(cell) -> frozenset:
    """Group elements of the coset underlying a lifted cell."""
    return frozenset(int(lab.split("|")[1], 2) for lab in cell.vertices)


def _gens(beta, cell) -> list:
    return [beta[j] for j in sorted(cell.id[0].facet_set)]


def _diag(beta, cell) -> int:
    """Shift from a corner of a lifted cell to the opposite corner."""
    out = 0
    for b in _gens(beta, cell):
        out ^= b
    return out


def _closure(L, cell) -> list:
    seen = {}
    stack = list(cell.boundary)
    while stack:
        b = stack.pop()
        if b not in seen:
            seen[b] = L.cells[b]
            stack.extend(seen[b].boundary)
    return list(seen.values())


@dataclass(frozen=True)
class _Option:
    value: tuple  # (CATALOG, index) or (CONE, corner)
    tops: tuple | None  # group-element simplices, catalog options only
    diagonals: frozenset  # main diagonals drawn, as pairs of group elements

    def cone_from(self, g, opposite) -> bool:
        if self.tops is None:
            return self.value[1] in (g, opposite)
        return all(g in t for t in self.tops)


def _options(beta, cell) -> list:
    gens = _gens(beta, cell)
    r = min(_elems(cell))
    d = cell.dim
    if d <= 3:
        pts = []
        for e in corners(d):
            x = r
            for ei, b in zip(e, gens):
                if ei:
                    x ^= b
            pts.append(x)
        out = []
        for k, tri in enumerate(cube_triangulations(d)):
            tops = tuple(frozenset(pts[i] for i in t) for t in tri)
            diags = frozenset(frozenset(pts[i] for i in e) for e in main_diagonals(d, tri))
            out.append(_Option((CATALOG, k), tops, diags))
        return out
    shift = _diag(beta, cell)
    return [_Option((CONE, x), None, frozenset({frozenset((x, x ^ shift))})) for x in sorted(_elems(cell))]


def _search_fillings(L: LiftedCubicalComplex, n: int, budget: int) -> dict:
    """Pick a filling for every proper cell of dimension at least 2.

    Squares and 3-cells range over all their triangulations; larger cells are
    cones from a corner, which forces every sub-face through that corner to
    be a cone from it too.  Fillings of a cell and its facets must agree.
    Finally no pair g, g + delta may be a main diagonal of two cells: that is
    the only way the antipodal quotient can fail to be simplicial."""
    beta = L.beta
    cells = [c for c in L.cells.values() if 2 <= c.dim < n]
    opts = {c.id: _options(beta, c) for c in cells}
    domains = {cid: [o.value for o in os] for cid, os in opts.items()}
    nogoods = {}

    def forbid(a, x, b, y):
        nogoods.setdefault((a, x), set()).add((b, y))
        nogoods.setdefault((b, y), set()).add((a, x))

    for c in cells:
        if c.dim <= 3:
            for b in c.boundary:
                d = L.cells[b]
                if d.dim < 2:
                    continue
                E = _elems(d)
                for o in opts[c.id]:
                    restr = {t & E for t in o.tops if len(t & E) == d.dim + 1}
                    for p in opts[b]:
                        if set(p.tops) != restr:
                            forbid(c.id, o.value, b, p.value)
            continue
        subs = [d for d in _closure(L, c) if d.dim >= 2]
        for o in opts[c.id]:
            a = o.value[1]
            for d in subs:
                if a not in _elems(d):
                    continue
                opp = a ^ _diag(beta, d)
                for p in opts[d.id]:
                    if not p.cone_from(a, opp):
                        forbid(c.id, o.value, d.id, p.value)

    drawn = {}
    for c in cells:
        for o in opts[c.id]:
            for e in o.diagonals:
                drawn.setdefault(e, []).append((c.id, o.value))
    for lst in drawn.values():
        for (a, x), (b, y) in combinations(lst, 2):
            if a != b:
                forbid(a, x, b, y)

    values = solve_binary_csp(domains, nogoods, budget,
                              order_key=lambda cid: (len(cid[0].facet_set), _key(L.cells[cid])))
    return {cid: next(o for o in opts[cid] if o.value == v) for cid, v in values.items()}


def _describe(o, eq) -> str:
    if o.tops is None:
        return f"cone {eq[o.value[1]]}"
    return f"{len(o.tops)} simplices " + " ".join("".join(sorted(eq[g][3:] for g in t)) for t in sorted(o.tops, key=sorted))
