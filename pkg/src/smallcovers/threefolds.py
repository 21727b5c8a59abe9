"""Small equilibrium triangulations of 3-dimensional small covers.

Everything is assembled from the lifted cube complex.  Extra vertices sit at
lifted points of the cells that host them: a midpoint on a 1-cell, a centre
in a 2-cell or an apex inside a top cube.  Each 2-cell is triangulated as a
polygon (its corners plus any midpoints) or as a fan from its centre.  A
cube with an apex is coned from it, a designated cube gets the five
tetrahedron corner cut, and every other cube is filled by some 3-ball on its
own vertices.  The choices are made together by a SAT solver so that no
simplex is produced by two different cells and the edge count matches the
requested f-vector; the first model that is a closed 3-manifold is kept.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from pysat.card import CardEnc, EncType
from pysat.formula import IDPool
from pysat.solvers import Solver

from .charfn import CharFunction, coset_rep, parse_beta_arg, special_edge_count, special_edges, standard_simplex_charfn, validate_charfn, vector_multiplicities
from .lift import LiftedCubicalComplex, Zone, cell_name, cubical_lift, equilibrium_labels, lift_label
from .polytope import SimplePolytope, prism, simplex
from .search import Option, SearchExhausted, all_faces
from .simplicial import SimplicialComplex, verify_closed_manifold

PRISM_BETAS = {
    "beta1": "100,100,010,001,111",
    "beta2": "001,010,011,100,111",
    "beta3": "100,100,010,001,011",
}

TARGETS = ("rp3-12", "rp3-11", "n1", "n2", "n3")


@dataclass(frozen=True)
class TargetSpec:
    name: str
    polytope: SimplePolytope
    beta: CharFunction
    f0: int
    f_vector: tuple | None = None
    midpoint_facets: tuple = ()  # every lifted 1-cell over these facets gets a midpoint
    centre_edges: tuple = ()  # every lifted 2-cell over these edges (facet pairs) gets a centre
    apex_vertices: tuple = ()  # cubes coned from their fixed point, by vertex label
    five_tet_vertices: tuple = ()  # cubes filled with five tetrahedra
    lower_bound: int | None = None  # proven minimum vertex count, when known


def target_spec(name: str) -> TargetSpec:
    key = name.lower().replace("_", "-")
    if key in ("rp3-12", "rp3-11"):
        P, beta = simplex(3), standard_simplex_charfn(3)
        if key == "rp3-12":
            return TargetSpec("rp3-12", P, beta, 12, apex_vertices=(1, 2, 3, 4))
        return TargetSpec("rp3-11", P, beta, 11, apex_vertices=(1, 3, 4), five_tet_vertices=(2,))
    P = prism()
    if key == "n1":
        return TargetSpec("n1", P, parse_beta_arg(PRISM_BETAS["beta1"]), 17, (17, 106, 178, 89),
                          midpoint_facets=(2,), apex_vertices=(1, 2, 4, 5, 6), five_tet_vertices=(3,),
                          lower_bound=17)
    if key == "n2":
        beta = parse_beta_arg(PRISM_BETAS["beta2"])
        edges = tuple(tuple(sorted(e)) for e in special_edges(P, beta))
        # the apex sits over an end of the special-edge pattern: a vertex on exactly one special edge
        ends = [i for i, V in enumerate(P.vertex_faces(), 1) if sum(set(e) <= V.facet_set for e in edges) == 1]
        return TargetSpec("n2", P, beta, 19, (19, 111, 184, 92), centre_edges=edges, apex_vertices=(ends[0],),
                          lower_bound=19)
    if key == "n3":
        beta = parse_beta_arg(PRISM_BETAS["beta3"])
        edges = tuple(tuple(sorted(e)) for e in special_edges(P, beta))
        return TargetSpec("n3", P, beta, 18, (18, 114, 192, 96), midpoint_facets=(2,), centre_edges=edges,
                          lower_bound=18)
    raise ValueError(f"unknown target {name!r}; expected one of {', '.join(TARGETS)}")


def natural_count(P: SimplePolytope, beta: CharFunction) -> tuple:
    """(closed formula 4·Σs + 2l + k − 20, per-class construction count)."""
    if P.dim != 3:
        raise ValueError("the count is defined for 3-polytopes")
    s = vector_multiplicities(beta)
    l = special_edge_count(P, beta)
    k = len(P.vertex_faces())
    formula = 4 * sum(s.values()) + 2 * l + k - 20
    construction = 8 + k + sum(4 * max(v - 1, 0) for v in s.values()) + 2 * l
    return formula, construction


class CubeAssembly:
    """Lifted cube complex of a 3-polytope together with its extra vertices."""

    def __init__(self, L: LiftedCubicalComplex, spec: TargetSpec):
        if L.polytope.dim != 3:
            raise ValueError("cube assemblies are 3-dimensional")
        self.L = L
        self.spec = spec
        P, beta = L.polytope, L.beta
        self.beta = beta
        self.eq = equilibrium_labels(3)
        self.extra = {}  # cell key -> (label, kind)
        for j in spec.midpoint_facets:
            F = P.face({j})
            for key in self._cells_over(F):
                self.extra[key] = (lift_label(beta, F, key[1]), "edge-midpoint")
        for e in spec.centre_edges:
            F = P.face(set(e))
            for key in self._cells_over(F):
                self.extra[key] = (lift_label(beta, F, key[1]), "quad-interior")
        for v in spec.apex_vertices:
            F = P.vertex_faces()[v - 1]
            self.extra[F, 0] = (lift_label(beta, F, 0), "cube-interior")
        self.cube_of = {v: (P.vertex_faces()[v - 1], 0) for v in range(1, len(P.vertex_faces()) + 1)}
        self.vertex_of = {key: v for v, key in self.cube_of.items()}

    def _cells_over(self, F) -> list:
        return sorted(k for k in self.L.cells if k[0] == F)

    @property
    def extra_vertices(self) -> list:
        return [(lab, cell_name(key, 3), kind) for key, (lab, kind) in sorted(self.extra.items(), key=lambda kv: kv[1][0])]

    def edge_pieces(self, key) -> list:
        """The one or two edges a 1-cell becomes."""
        u, v = sorted(self.L.cells[key].vertices)
        if key in self.extra:
            m = self.extra[key][0]
            return [frozenset((u, m)), frozenset((m, v))]
        return [frozenset((u, v))]

    def cycle(self, key) -> list:
        """Boundary cycle of a 2-cell, midpoints included."""
        F, r = key
        a, b = sorted(F.facet_set)
        ba, bb = self.beta[a], self.beta[b]
        corners = [r, r ^ ba, r ^ ba ^ bb, r ^ bb]
        sides = [a, b, a, b]
        out = []
        P = self.L.polytope
        for x, j in zip(corners, sides):
            out.append(self.eq[x])
            side = (P.face({j}), coset_rep(x, self.beta.subgroup({j})))
            if side in self.extra:
                out.append(self.extra[side][0])
        return out

    def fixed(self) -> dict:
        out = {}
        for key, cell in self.L.cells.items():
            if cell.dim == 0:
                out[key] = [frozenset(cell.vertices)]
            elif cell.dim == 1:
                pieces = self.edge_pieces(key)
                out[key] = pieces + ([frozenset({self.extra[key][0]})] if key in self.extra else [])
        for key, (lab, kind) in self.extra.items():
            if kind != "edge-midpoint":
                out[("vertex", lab)] = [frozenset({lab})]
        return out

    def square_options(self, key) -> list:
        cyc = self.cycle(key)
        rim = set()
        for i in range(len(cyc)):
            rim |= all_faces([frozenset((cyc[i], cyc[(i + 1) % len(cyc)]))])
        if key in self.extra:
            c = self.extra[key][0]
            tops = [frozenset((c, cyc[i], cyc[(i + 1) % len(cyc)])) for i in range(len(cyc))]
            tris = [("fan", tuple(tops))]
        else:
            tris = [("poly", tuple(t)) for t in polygon_triangulations(cyc)]
        out = []
        for tag, tops in tris:
            owned = frozenset(s for s in all_faces(tops) if len(s) > 1) - rim
            out.append(Option((tag, _tops_key(tops)), frozenset(tops), owned, len(tops)))
        return out


def _tops_key(tops) -> tuple:
    return tuple(sorted(tuple(sorted(t)) for t in tops))


def _edges(t):
    a = sorted(t)
    return [frozenset((a[i], a[j])) for i in range(len(a)) for j in range(i + 1, len(a))]


def polygon_triangulations(cycle) -> list:
    """All triangulations of a polygon given by its cyclic vertex list."""
    cycle = list(cycle)

    def rec(i, j):
        # triangulations of the sub-polygon cycle[i..j], closed by the chord i-j
        if j - i < 2:
            return [[]]
        out = []
        for k in range(i + 1, j):
            for left in rec(i, k):
                for right in rec(k, j):
                    out.append(left + right + [frozenset((cycle[i], cycle[k], cycle[j]))])
        return out

    return rec(0, len(cycle) - 1)


DEFAULT_CONFLICTS = 5_000_000
MAX_ROUNDS = 20_000


class _FillingModel:
    """SAT model: one triangulation per 2-cell and a vertex-free filling per cube.

    Tetrahedra of a cube are drawn from the 4-subsets of the cube's vertices
    (subsets through the apex for coned cubes, corner subsets for five-tet
    cubes).  Clauses make every boundary triangle lie in exactly one chosen
    tetrahedron and every other triangle in zero or two, and forbid two cells
    from owning the same simplex.  Link conditions are too bulky to encode, so
    models whose cube fillings are not balls get cut off lazily."""

    def __init__(self, A: CubeAssembly):
        self.A = A
        L = A.L
        self.pool = IDPool()
        self.clauses = []
        self.fixed = set()
        for simplices in A.fixed().values():
            self.fixed.update(simplices)
        self.squares = sorted((k for k, c in L.cells.items() if c.dim == 2), key=lambda k: cell_name(k, 3))
        self.cubes = sorted((k for k, c in L.cells.items() if c.dim == 3), key=lambda k: A.vertex_of[k])
        owners = {}  # simplex -> literals of the cells that would own it
        self.square_vars = {}
        for k in self.squares:
            opts = [o for o in A.square_options(k) if not (o.owned & self.fixed)]
            lits = [self.pool.id(("sq", k, i)) for i in range(len(opts))]
            self.square_vars[k] = list(zip(lits, opts))
            self._exactly_one(lits)
            for v, o in zip(lits, opts):
                for s in _sorted_simplices(o.owned):
                    owners.setdefault(s, []).append(v)
        self.tet_vars = {}
        self.edge_owner_vars = []
        for c in self.cubes:
            self._cube(c, owners)
        tet_owners = {}
        for c in self.cubes:
            for x, v in self.tet_vars[c].items():
                tet_owners.setdefault(x, []).append(v)
        for lits in list(owners.values()) + list(tet_owners.values()):
            self._at_most_one(lits)

    def _exactly_one(self, lits):
        self.clauses.append(list(lits))
        self._at_most_one(lits)

    def _at_most_one(self, lits):
        for a, b in combinations(lits, 2):
            self.clauses.append([-a, -b])

    def _cube(self, c, owners):
        A, cl, pool = self.A, self.clauses, self.pool
        opts = [p for b in sorted(A.L.cells[c].boundary, key=lambda k: cell_name(k, 3)) for p in self.square_vars[b]]
        present = {}
        for v, o in opts:
            for s in _sorted_simplices(all_faces(o.tops)):
                present.setdefault(s, []).append(v)
        verts = sorted(set().union(*(t for _, o in opts for t in o.tops)))
        apex = A.extra[c][0] if c in A.extra else None
        five = A.vertex_of[c] in A.spec.five_tet_vertices
        if apex is not None:
            candidates = [frozenset(x) | {apex} for x in combinations(verts, 3)]
            verts = sorted(verts + [apex])
        elif five:
            candidates = [frozenset(x) for x in combinations(sorted(set(verts) & set(A.eq)), 4)]
        else:
            candidates = [frozenset(x) for x in combinations(verts, 4)]
        tv = {x: pool.id(("tet", c, tuple(sorted(x)))) for x in candidates}
        self.tet_vars[c] = tv
        if five:
            cl.extend(CardEnc.atmost(list(tv.values()), 5, vpool=pool).clauses)
        around = {}
        for x in candidates:
            for k in (2, 3):
                for s in combinations(sorted(x), k):
                    around.setdefault(frozenset(s), []).append(tv[x])
        for tri in combinations(verts, 3):
            tri = frozenset(tri)
            S = around.get(tri, [])
            P = present.get(tri, [])
            if P:
                # b <-> the triangle lies on the chosen boundary
                b = pool.id(("bd", c, tuple(sorted(tri))))
                cl.append([-b] + P)
                cl.extend([b, -p] for p in P)
                cl.append([-b] + S)
                cl.extend([-b, -x, -y] for x, y in combinations(S, 2))
                guard = [b]
            else:
                guard = []
            cl.extend(guard + [-x] + [y for y in S if y != x] for x in S)
            cl.extend(guard + [-x, -y, -z] for x, y, z in combinations(S, 3))
            if S:
                o = pool.id(("own", c, tuple(sorted(tri))))
                cl.extend([-x, o] + P for x in S)
                if tri in self.fixed:
                    cl.append([-o])
                else:
                    owners.setdefault(tri, []).append(o)
        for e in combinations(verts, 2):
            e = frozenset(e)
            S = around.get(e, [])
            if not S:
                continue
            P = present.get(e, [])
            o = pool.id(("own", c, tuple(sorted(e))))
            cl.extend([-x, o] + P for x in S)
            cl.append([-o] + S)
            cl.extend([-o, -p] for p in P)
            if e in self.fixed:
                cl.append([-o])
            else:
                owners.setdefault(e, []).append(o)
                self.edge_owner_vars.append(o)

    def skeleton_edges(self) -> int:
        """Edges of the 2-skeleton; the same for every choice of 2-cell triangulations."""
        n = sum(1 for s in self.fixed if len(s) == 2)
        return n + sum(sum(1 for s in opts[0][1].owned if len(s) == 2) for opts in self.square_vars.values())

    def solve(self, f1=None, budget=DEFAULT_CONFLICTS):
        clauses = list(self.clauses)
        if f1 is not None:
            k = f1 - self.skeleton_edges()
            if k < 0:
                raise SearchExhausted(f"the 2-skeleton alone has more than {f1} edges")
            clauses += CardEnc.equals(self.edge_owner_vars, k, vpool=self.pool, encoding=EncType.kmtotalizer).clauses
        with Solver(name="cadical195", bootstrap_with=clauses) as S:
            for rounds in range(1, MAX_ROUNDS + 1):
                conflicts = S.accum_stats().get("conflicts", 0)
                S.conf_budget(max(budget - conflicts, 1))
                status = S.solve_limited()
                if status is None:
                    raise SearchExhausted(f"conflict budget {budget} exhausted after {rounds} rounds", rounds)
                if not status:
                    raise SearchExhausted("no assembly satisfies the constraints", rounds)
                model = set(v for v in S.get_model() if v > 0)
                cuts = 0
                fill = {}
                for c in self.cubes:
                    fill[c] = sorted((x for x, v in self.tet_vars[c].items() if v in model), key=sorted)
                    for bad in _ball_defects(fill[c]):
                        S.add_clause([-self.tet_vars[c][x] for x in bad])
                        cuts += 1
                if cuts:
                    continue
                squares = {k: next(o for v, o in opts if v in model) for k, opts in self.square_vars.items()}
                X = SimplicialComplex([t for c in self.cubes for t in fill[c]])
                if verify_closed_manifold(X).ok:
                    return squares, fill, X, rounds
                S.add_clause([-self.tet_vars[c][x] for c in self.cubes for x in fill[c]])
        raise SearchExhausted(f"no manifold after {MAX_ROUNDS} rounds", MAX_ROUNDS)


def _sorted_simplices(simplices) -> list:
    return sorted((s for s in simplices if len(s) > 1), key=lambda s: (len(s), sorted(s)))


def _components(nodes, pairs) -> int:
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in pairs:
        parent[find(a)] = find(b)
    return len({find(x) for x in nodes})


def _ball_defects(tets) -> list:
    """Groups of tetrahedra around an edge or vertex whose link is not a
    connected circle/arc or a disc/sphere.  Empty for a 3-ball."""
    out = []
    by_edge = {}
    by_vertex = {}
    for t in tets:
        for e in combinations(sorted(t), 2):
            by_edge.setdefault(frozenset(e), []).append(t)
        for x in t:
            by_vertex.setdefault(x, []).append(t)
    for e, star in by_edge.items():
        pairs = [tuple(sorted(t - e)) for t in star]
        if _components({x for p in pairs for x in p}, pairs) > 1:
            out.append(star)
    for x, star in by_vertex.items():
        tris = [t - {x} for t in star]
        nodes = set().union(*tris)
        edges = {frozenset(e) for t in tris for e in combinations(sorted(t), 2)}
        chi = len(nodes) - len(edges) + len(tris)
        if chi not in (1, 2) or _components(nodes, [tuple(e) for e in edges]) > 1:
            out.append(star)
    return out


@dataclass
class ThreefoldBuild:
    spec: TargetSpec
    complex: SimplicialComplex
    zones: list
    equilibrium: list
    extra_vertices: list
    fillings: dict = field(default_factory=dict)  # cell name -> how it was triangulated
    rounds: int = 0  # solver calls, including ones cut off for non-ball fillings


def build_target(t: TargetSpec | str, budget: int = DEFAULT_CONFLICTS) -> ThreefoldBuild:
    spec = target_spec(t) if isinstance(t, str) else t
    if not validate_charfn(spec.polytope, spec.beta):
        raise ValueError("target characteristic function is not valid")
    if budget < 1:
        raise ValueError("budget must be positive")
    L = cubical_lift(spec.polytope, spec.beta)
    A = CubeAssembly(L, spec)
    model = _FillingModel(A)
    f1 = spec.f_vector[1] if spec.f_vector else None
    squares, fill, X, rounds = model.solve(f1, budget)
    if len(X.vertices) != spec.f0 or (spec.f_vector and X.f_vector() != tuple(spec.f_vector)):
        raise SearchExhausted(f"assembly has f-vector {X.f_vector()}, expected f0={spec.f0}", rounds)
    zones = []
    fillings = {}
    for c in model.cubes:
        ts = frozenset(fill[c])
        zones.append(Zone(f"V{A.vertex_of[c]}", frozenset().union(*ts), ts))
        if c in A.extra:
            fillings[cell_name(c, 3)] = f"cone {A.extra[c][0]}"
        else:
            fillings[cell_name(c, 3)] = f"{len(ts)} tetrahedra"
    for k, o in squares.items():
        fillings[cell_name(k, 3)] = _describe(o.tag)
    return ThreefoldBuild(spec, X, zones, A.eq, A.extra_vertices, fillings, rounds)


def _describe(tag) -> str:
    kind = tag[0]
    if kind in ("poly", "fan"):
        return kind + " " + " ".join("".join(x.split("|")[1] if x.startswith("F∅") else x for x in t) for t in tag[1])
    return " ".join(str(x) for x in tag)


def rp3_tri(variant: int = 12, budget: int = DEFAULT_CONFLICTS) -> ThreefoldBuild:
    if variant not in (11, 12):
        raise ValueError("variant must be 11 or 12")
    return build_target(f"rp3-{variant}", budget)


@dataclass
class MinimalityReport:
    name: str
    f0: int
    bound: int | None
    ok: bool

    def __bool__(self):
        return self.ok


def audit_minimality(t: TargetSpec | str, X) -> MinimalityReport:
    """Compare the vertex count of a built target with its proven minimum."""
    spec = target_spec(t) if isinstance(t, str) else t
    X = getattr(X, "complex", X)
    f0 = len(X.vertices)
    bound = spec.lower_bound
    return MinimalityReport(spec.name, f0, bound, f0 == (bound if bound is not None else spec.f0))


__all__ = [
    "CubeAssembly",
    "MinimalityReport",
    "PRISM_BETAS",
    "SearchExhausted",
    "TARGETS",
    "TargetSpec",
    "ThreefoldBuild",
    "audit_minimality",
    "build_target",
    "natural_count",
    "polygon_triangulations",
    "rp3_tri",
    "target_spec",
]
