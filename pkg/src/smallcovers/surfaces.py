"""Equivariant triangulations of 2-dimensional small covers over m-gons."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property

from .charfn import CharFunction, bits_to_str, coset_rep, validate_charfn
from .lift import (
    GroupAction,
    Projection,
    Zone,
    equilibrium_labels,
    project_check,
)
from .polytope import SimplePolytope, polygon
from .simplicial import SimplicialComplex


@dataclass
class SurfaceBuild:
    complex: SimplicialComplex
    projection: Projection
    kind: str  # "eq2m4" or "eq2m"
    polytope: SimplePolytope
    beta: CharFunction
    zones: list = field(default_factory=list)
    equilibrium: list = field(default_factory=list)
    translate: object = field(default=None, repr=False)  # (label, h) -> label

    @cached_property
    def action(self) -> GroupAction:
        return _action(sorted(self.complex.vertices), self.translate)

    @property
    def m(self) -> int:
        return self.polytope.facet_count


def _check(m: int, beta: CharFunction) -> SimplePolytope:
    if m < 3:
        raise ValueError("m must be at least 3")
    if beta.ambient_dim != 2 or len(beta) != m:
        raise ValueError(f"need {m} vectors in Z_2^2")
    P = polygon(m)
    if not validate_charfn(P, beta):
        raise ValueError(f"{beta!r} is not a characteristic function on the {m}-gon")
    return P


class _EdgeLifts:
    """Labels of the two lifts C_i', C_i'' of each edge midpoint."""

    def __init__(self, beta: CharFunction):
        self.beta = beta

    def label(self, i: int, g: int) -> str:
        return f"F{i}|{bits_to_str(coset_rep(g, {0, self.beta[i]}), 2)}"

    def pair(self, i: int) -> tuple:
        other = min(g for g in range(4) if g not in (0, self.beta[i]))
        return self.label(i, 0), self.label(i, other)


def _action(labels, translate) -> GroupAction:
    gens = []
    for h in (0b10, 0b01):
        gens.append({a: translate(a, h) for a in labels if translate(a, h) != a})
    return GroupAction(2, gens)


def _translate_factory(beta: CharFunction, lifts: _EdgeLifts):
    def translate(label: str, h: int) -> str:
        face, bits = label.split("|")
        g = int(bits, 2) ^ h
        if face == "F∅":
            return f"F∅|{bits_to_str(g, 2)}"
        return lifts.label(int(face[1:]), g)

    return translate


def surface_2m4(m: int, beta: CharFunction) -> SurfaceBuild:
    """Equivariant equilibrium triangulation with 2m + 4 vertices."""
    P = _check(m, beta)
    lifts = _EdgeLifts(beta)
    C = equilibrium_labels(2)

    def idx(i):
        return (i - 1) % m + 1

    tris = []
    zones = []
    folds = {}
    pairs = [None] + [lifts.pair(i) for i in range(1, m + 1)]
    corners = P.vertex_faces()
    for i in range(1, m + 1):
        j = idx(i - 1)
        bi, bj = beta[i], beta[j]
        ci1, ci2 = pairs[i]
        cj1, cj2 = pairs[j]
        zone = [
            (ci1, cj1, cj2),
            (ci2, cj1, cj2),
            (C[0], ci1, cj1),
            (C[bi], ci1, cj2),
            (C[bj], ci2, cj1),
            (C[bi ^ bj], ci2, cj2),
        ]
        tris += zone
        folds[frozenset((cj1, cj2))] = corners[i - 1]
        zf = frozenset(frozenset(t) for t in zone)
        zones.append(Zone(f"V{i}", frozenset().union(*zf), zf))
    X = SimplicialComplex(tris)
    vmap = {lab: P.face(()) for lab in C}
    for i in range(1, m + 1):
        vmap[pairs[i][0]] = vmap[pairs[i][1]] = P.face({i})
    return SurfaceBuild(X, Projection(vmap, folds), "eq2m4", P, beta, zones, C, _translate_factory(beta, lifts))


def hub_facet(beta: CharFunction) -> int | None:
    """A facet whose vector no other facet uses, or None."""
    counts = Counter(beta.vectors)
    for j, v in enumerate(beta.vectors, start=1):
        if counts[v] == 1:
            return j
    return None


def surface_2m(m: int, beta: CharFunction, hub: int | None = None) -> SurfaceBuild:
    """Equivariant triangulation with 2m vertices, none of them fixed points."""
    P = _check(m, beta)
    h = hub_facet(beta) if hub is None else hub
    if h is None or Counter(beta.vectors)[beta[h]] != 1:
        raise ValueError("no vector of Z_2^2 is used by exactly one edge")
    lifts = _EdgeLifts(beta)

    def idx(i):
        return (i - 1) % m + 1

    tris = []
    folds = {}
    for i in range(1, m + 1):
        j = idx(i - 1)
        ci1, ci2 = lifts.pair(i)
        cj1, cj2 = lifts.pair(j)
        tris += [(ci1, ci2, cj1), (ci1, ci2, cj2)]
        folds[frozenset((ci1, ci2))] = P.vertex_faces()[i - 1]
    # Fan from the hub midpoint over the inner polygon, one copy per group element.
    for i in range(1, m + 1):
        a, b = i, idx(i + 1)
        if h in (a, b):
            continue
        for g in range(4):
            tris.append((lifts.label(h, g), lifts.label(a, g), lifts.label(b, g)))
    X = SimplicialComplex(tris)
    vmap = {lab: P.face({int(lab.split("|")[0][1:])}) for lab in X.vertices}
    return SurfaceBuild(X, Projection(vmap, folds), "eq2m", P, beta, translate=_translate_factory(beta, lifts))


@dataclass
class LowerBoundReport:
    ok: bool
    f0: int
    bound: int
    margin: int
    projection_ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def audit_lower_bound(build) -> LowerBoundReport:
    """Check f0 >= 2m and that the orbit images triangulate the polygon."""
    P = build.polytope
    m = P.facet_count
    X = build.complex
    f0 = len(X.vertices)
    proj = project_check(X, build.action, P, build.projection)
    ok = f0 >= 2 * m and proj.ok
    return LowerBoundReport(ok, f0, 2 * m, f0 - 2 * m, proj.ok, proj.reason)
