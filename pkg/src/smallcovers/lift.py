"""Lifting triangulations and cell structures of Q to the small cover N(Q, beta).

A point of N over the barycentre C_F of a face F is a coset g + G_F.  Such a
lifted vertex is encoded as ``F<facets>|<bits of the minimal coset element>``.
The string order of these labels is the global vertex order used for pulling.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from pathlib import Path

from .charfn import CharFunction, bits_to_str, coset_rep, span, validate_charfn
from .polytope import Face, SimplePolytope
from .simplicial import (
    Cell,
    CellComplex,
    SimplicialComplex,
    betti_mod2,
    boundary_complex,
    is_connected,
    is_pseudomanifold,
    verify_closed_manifold,
)


@dataclass(frozen=True)
class LiftedVertex:
    face: Face
    coset_rep: int

    def label(self, n: int) -> str:
        return f"{self.face.key()}|{bits_to_str(self.coset_rep, n)}"


def lifted_vertex(P: SimplePolytope, beta: CharFunction, face: Face, g: int) -> LiftedVertex:
    return LiftedVertex(face, coset_rep(g, beta.subgroup(face.facet_set)))


def lift_label(beta: CharFunction, face: Face, g: int) -> str:
    return LiftedVertex(face, coset_rep(g, beta.subgroup(face.facet_set))).label(beta.ambient_dim)


def equilibrium_labels(n: int) -> list:
    return [f"F∅|{bits_to_str(g, n)}" for g in range(1 << n)]


# --- group actions -----------------------------------------------------------


@dataclass
class GroupAction:
    """Z_2^n acting on vertex labels through one permutation per generator.

    ``generators[i]`` is the action of the i-th standard basis vector; labels
    missing from a permutation are fixed."""

    n: int
    generators: list

    def __post_init__(self):
        self.generators = [dict(g) for g in self.generators]
        if len(self.generators) != self.n:
            raise ValueError(f"expected {self.n} generators, got {len(self.generators)}")
        for i, g in enumerate(self.generators, start=1):
            for a, b in g.items():
                if g.get(b, b) != a:
                    raise ValueError(f"generator g{i} is not an involution at {a}")
        for g, h in combinations(self.generators, 2):
            for a in set(g) | set(h):
                if g.get(h.get(a, a), h.get(a, a)) != h.get(g.get(a, a), g.get(a, a)):
                    raise ValueError("generators do not commute")

    def apply_generator(self, i: int, label):
        return self.generators[i].get(label, label)

    def act(self, g: int, label):
        """Action of the group element g (bit n-1-i = coordinate i)."""
        for i in range(self.n):
            if g >> (self.n - 1 - i) & 1:
                label = self.apply_generator(i, label)
        return label

    def orbit(self, label) -> frozenset:
        return frozenset(self.act(g, label) for g in range(1 << self.n))

    def labels(self) -> set:
        out = set()
        for g in self.generators:
            out |= set(g) | set(g.values())
        return out


def is_equivariant(X: SimplicialComplex, A: GroupAction) -> bool:
    outside = A.labels() - X.vertices
    if outside:
        raise ValueError(f"action moves labels outside the complex: {sorted(map(str, outside))[:3]}")
    facets = set(X.facets)
    for i in range(A.n):
        for f in X.facets:
            if frozenset(A.apply_generator(i, v) for v in f) not in facets:
                return False
    return True


def format_action(A: GroupAction) -> str:
    lines = []
    for i, g in enumerate(A.generators, start=1):
        pairs = sorted((str(a), str(b)) for a, b in g.items() if a != b)
        lines.append(f"g{i}: " + " ".join(f"{a}->{b}" for a, b in pairs))
    return "\n".join(lines) + "\n"


def parse_action(text: str) -> GroupAction:
    gens = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep or not head.startswith("g") or not head[1:].isdigit():
            raise ValueError(f"line {lineno}: expected 'g<i>: a->b ...'")
        perm = {}
        for tok in rest.split():
            a, arrow, b = tok.partition("->")
            if not arrow or not a or not b:
                raise ValueError(f"line {lineno}: bad mapping {tok!r}")
            perm[a] = b
        gens[int(head[1:])] = perm
    n = len(gens)
    if sorted(gens) != list(range(1, n + 1)):
        raise ValueError("generators must be numbered g1..gn")
    return GroupAction(n, [gens[i] for i in range(1, n + 1)])


def read_action(path) -> GroupAction:
    return parse_action(Path(path).read_text(encoding="utf-8"))


# --- projection ------------------------------------------------------------


@dataclass
class Projection:
    """Orbit map on vertices: label -> face of Q whose barycentre it covers.

    ``folds`` marks edges of the complex whose image is bent: both endpoints
    map to the same point C_F and the edge passes through the fixed point over
    the vertex face recorded as the value."""

    vertex_map: dict
    folds: dict = field(default_factory=dict)  # frozenset edge -> Face (a vertex of Q)

    def __call__(self, label) -> Face:
        return self.vertex_map[label]

    def image_points(self, simplex) -> frozenset:
        pts = {self.vertex_map[v] for v in simplex}
        for e in combinations(sorted(simplex), 2):
            f = self.folds.get(frozenset(e))
            if f is not None:
                pts.add(f)
        return frozenset(pts)


@dataclass
class ProjectReport:
    ok: bool
    triangles: list
    reason: str = ""

    def __bool__(self):
        return self.ok


def project_check(X: SimplicialComplex, A: GroupAction, P: SimplePolytope, projection: Projection) -> ProjectReport:
    """Images of the 2-simplices must form a triangulation of the polygon P."""
    if X.dim != 2 or P.dim != 2:
        raise ValueError("project_check is defined for surfaces over polygons")
    if not is_equivariant(X, A):
        raise ValueError("complex is not equivariant under the action")
    for v in X.vertices:
        if any(projection(v) != projection(w) for w in A.orbit(v)):
            return ProjectReport(False, [], f"projection not constant on the orbit of {v}")
    images = set()
    for f in X.facets:
        pts = projection.image_points(f)
        if len(pts) != 3:
            return ProjectReport(False, [], f"simplex {sorted(f)} has a degenerate image")
        images.add(pts)
    tris = sorted(images, key=lambda t: sorted(x.key() for x in t))
    Y = SimplicialComplex(tris)
    if not is_pseudomanifold(Y, with_boundary=True) or not is_connected(Y):
        return ProjectReport(False, tris, "image triangles do not form a disc")
    if Y.euler_characteristic() != 1:
        return ProjectReport(False, tris, "image is not simply a disc (Euler characteristic)")
    # Boundary must be the polygon boundary V_1 - C_{F_1} - V_2 - ...
    expected = set()
    for E in P.faces_of_dim(1):
        for v in P.vertices_of(E):
            expected.add(frozenset({E, P.face(v)}))
    bd = boundary_complex(Y)
    got = set(bd.facets) if bd else set()
    if got != expected:
        return ProjectReport(False, tris, "image boundary is not the polygon boundary")
    # Interior points must not be used on the boundary and vice versa.
    return ProjectReport(True, tris)


def _face_key_set(key: str) -> frozenset:
    if not key.startswith("F"):
        raise ValueError(f"bad face key {key!r}")
    body = key[1:]
    if body == "∅":
        return frozenset()
    return frozenset(int(t) for t in body.split(","))


def format_projection(projection: Projection) -> str:
    """``label: F<facets>`` per vertex, then ``fold a b: F<facets>`` per bent edge."""
    lines = [f"{lab}: {F.key()}" for lab, F in sorted(projection.vertex_map.items(), key=lambda kv: str(kv[0]))]
    for e, F in sorted(projection.folds.items(), key=lambda kv: sorted(map(str, kv[0]))):
        a, b = sorted(map(str, e))
        lines.append(f"fold {a} {b}: {F.key()}")
    return "\n".join(lines) + "\n"


def parse_projection(text: str, P: SimplePolytope) -> Projection:
    vmap, folds = {}, {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.rpartition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected '<label>: <face key>'")
        try:
            F = P.face(_face_key_set(rest.strip()))
        except (KeyError, ValueError):
            raise ValueError(f"line {lineno}: unknown face {rest.strip()!r}") from None
        parts = head.split()
        if len(parts) == 3 and parts[0] == "fold":
            folds[frozenset(parts[1:])] = F
        elif len(parts) == 1:
            vmap[parts[0]] = F
        else:
            raise ValueError(f"line {lineno}: cannot read {head!r}")
    return Projection(vmap, folds)


# --- zones and equilibrium ---------------------------------------------------


@dataclass(frozen=True)
class Zone:
    """A zone of influence: its vertex set and optionally its top simplices."""

    id: str
    vertices: frozenset
    facets: frozenset | None = None

    def complex(self, X: SimplicialComplex) -> SimplicialComplex:
        if self.facets is not None:
            return SimplicialComplex(self.facets)
        return SimplicialComplex(f for f in X.facets if f <= self.vertices)


@dataclass
class EquilibriumReport:
    ok: bool
    reason: str = ""
    witness: object = None

    def __bool__(self):
        return self.ok


def _is_ball(B: SimplicialComplex) -> tuple:
    d = B.dim
    if not is_pseudomanifold(B, with_boundary=True):
        return False, "not a pseudomanifold with boundary"
    if betti_mod2(B) != [1] + [0] * d:
        return False, "mod-2 homology is not that of a point"
    bd = boundary_complex(B)
    if bd is None:
        return False, "zone has no boundary"
    if d >= 1 and bd.dim != d - 1:
        return False, "boundary has the wrong dimension"
    if d >= 2 and not verify_closed_manifold(bd).ok:
        return False, "boundary is not a closed manifold"
    if d >= 2 and betti_mod2(bd) != [1] + [0] * (d - 2) + [1]:
        return False, "boundary is not a mod-2 homology sphere"
    if d == 1 and len(bd.vertices) != 2:
        return False, "boundary is not two points"
    return True, ""


def equilibrium_check(X: SimplicialComplex, zones, equilibrium, n: int | None = None) -> EquilibriumReport:
    """Check an equilibrium triangulation with respect to the given zones.

    Each zone must be a triangulated ball containing the equilibrium set, the
    zones must split the top simplices of X, and two zones may only meet along
    their boundaries."""
    zones = [z if isinstance(z, Zone) else Zone(str(i), frozenset(z)) for i, z in enumerate(zones)]
    eq = frozenset(equilibrium)
    n = X.dim if n is None else n
    if not eq <= X.vertices:
        return EquilibriumReport(False, "equilibrium vertices missing from the complex", sorted(eq - X.vertices))
    if len(eq) != 2 ** n:
        return EquilibriumReport(False, f"equilibrium set has {len(eq)} vertices, expected {2 ** n}")
    seen = {}
    bds = []
    for z in zones:
        if z.facets is not None:
            stray = [f for f in z.facets if f not in X.facets]
            if stray:
                return EquilibriumReport(False, f"zone {z.id} uses a simplex not in the complex", sorted(stray[0]))
            outside = [f for f in z.facets if not f <= z.vertices]
            if outside:
                return EquilibriumReport(False, f"zone {z.id}: simplex crosses the zone boundary", sorted(outside[0]))
        B = z.complex(X)
        if not eq <= B.vertices:
            return EquilibriumReport(False, f"zone {z.id} does not contain the equilibrium set")
        ok, why = _is_ball(B)
        if not ok:
            return EquilibriumReport(False, f"zone {z.id}: {why}", z.id)
        for f in B.facets:
            if f in seen:
                return EquilibriumReport(False, f"zones {seen[f]} and {z.id} overlap", sorted(f))
            seen[f] = z.id
        bd = boundary_complex(B)
        bds.append(bd.simplex_set if bd else frozenset())
    missing = [f for f in X.facets if f not in seen]
    if missing:
        return EquilibriumReport(False, "simplex outside every zone (crossing simplex)", sorted(missing[0]))
    sets = [z.complex(X).simplex_set for z in zones]
    for i, j in combinations(range(len(zones)), 2):
        common = sets[i] & sets[j]
        if not common <= (bds[i] & bds[j]):
            return EquilibriumReport(False, f"zones {zones[i].id} and {zones[j].id} meet away from their boundaries")
    return EquilibriumReport(True)


def format_zones(zones, X: SimplicialComplex | None = None) -> str:
    """``id: labels ... | facet indices`` where indices point into the sorted
    facet list of the complex file (omitted when no complex is given)."""
    order = {}
    if X is not None:
        order = {frozenset(f): i for i, f in enumerate(sorted(tuple(sorted(map(str, f))) for f in X.facets))}
    lines = []
    for z in zones:
        line = f"{z.id}: " + " ".join(sorted(map(str, z.vertices)))
        if z.facets is not None and order:
            idx = sorted(order[frozenset(map(str, f))] for f in z.facets)
            line += " | " + " ".join(map(str, idx))
        lines.append(line)
    return "\n".join(lines) + "\n"


def parse_zones(text: str, X: SimplicialComplex | None = None) -> list:
    facets = sorted(tuple(sorted(f)) for f in X.facets) if X is not None else None
    zones = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise ValueError(f"line {lineno}: expected '<zone id>: labels'")
        labels_part, bar, idx_part = rest.partition(" | ")
        labels = frozenset(labels_part.split())
        zf = None
        if bar:
            if facets is None:
                raise ValueError("zone facet indices need the complex")
            try:
                zf = frozenset(frozenset(facets[int(t)]) for t in idx_part.split())
            except (ValueError, IndexError):
                raise ValueError(f"line {lineno}: bad facet index") from None
        zones.append(Zone(head.strip(), labels, zf))
    return zones


# --- barycentric lift --------------------------------------------------------


class LiftResult:
    """Barycentric lift of (P, beta).

    Vertex labels are computed up front; the complex, action and projection
    are built on first use, so counting vertices over many characteristic
    functions stays cheap."""

    def __init__(self, polytope: SimplePolytope, beta: CharFunction, rep: dict, groups: dict):
        self.polytope = polytope
        self.beta = beta
        self.rep = rep  # Face -> list, g -> smallest element of g + G_F
        self.groups = groups  # Face -> G_F

    def vertex_count(self) -> int:
        """Distinct lifted vertices, each coset counted at its smallest element."""
        return sum(sum(map(int.__eq__, reps, range(len(reps)))) for reps in self.rep.values())

    @cached_property
    def label(self) -> dict:
        """(Face, g) -> vertex label."""
        n = self.beta.ambient_dim
        names = {}
        out = {}
        for F, reps in self.rep.items():
            for g, r in enumerate(reps):
                key = (F, r)
                if key not in names:
                    names[key] = f"{F.key()}|{bits_to_str(r, n)}"
                out[F, g] = names[key]
        return out

    @cached_property
    def vertices(self) -> frozenset:
        return frozenset(self.label.values())

    @cached_property
    def complex(self) -> SimplicialComplex:
        n = self.beta.ambient_dim
        label = self.label
        return SimplicialComplex(frozenset(label[F, g] for F in flag)
                                 for flag in self.polytope.flags() for g in range(1 << n))

    @cached_property
    def action(self) -> GroupAction:
        n = self.beta.ambient_dim
        gens = []
        for i in range(n):
            h = 1 << (n - 1 - i)
            gens.append({a: b for (F, g), a in self.label.items() if (b := self.label[F, g ^ h]) != a})
        return GroupAction(n, gens)

    @cached_property
    def projection(self) -> Projection:
        return Projection({lab: F for (F, _), lab in self.label.items()})

    def f_vector(self) -> tuple:
        """Simplex counts without building the complex.

        A simplex of the lift is a chain of faces together with a coset of
        the group of its largest face, so f_k sums 2^n / |G_F| over chains
        of k + 1 faces with largest face F."""
        n = self.beta.ambient_dim
        out = [0] * (self.polytope.dim + 1)
        for F, counts in _chains_by_top(self.polytope).items():
            cosets = (1 << n) // len(self.groups[F])
            for k, c in enumerate(counts):
                out[k] += c * cosets
        return tuple(out)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * f for k, f in enumerate(self.f_vector()))

    def zones(self) -> list:
        """Preimages of the cubes of the cubical subdivision: stars of the
        fixed points, one per vertex of Q."""
        out = []
        for v in self.polytope.vertex_faces():
            verts = {lab for (F, _), lab in self.label.items() if F.facet_set <= v.facet_set}
            out.append(Zone(v.key(), frozenset(verts)))
        return out

    def equilibrium(self) -> list:
        return equilibrium_labels(self.beta.ambient_dim)


@lru_cache(maxsize=32)
def _chains_by_top(P: SimplePolytope) -> dict:
    """Face F -> [number of chains with k + 1 faces whose largest face is F]."""
    below = {F: [G for G in P.faces if G.facet_set > F.facet_set] for F in P.faces}
    out = {}
    for F in sorted(P.faces, key=lambda F: -F.codim):  # smaller faces first
        counts = [1] + [0] * P.dim
        for G in below[F]:
            for k, c in enumerate(out[G][:-1]):
                counts[k + 1] += c
        out[F] = counts
    return out


def _require_valid(P, beta):
    if not validate_charfn(P, beta):
        raise ValueError(f"{beta!r} is not a characteristic function on {P.name or 'the polytope'}")


@lru_cache(maxsize=32)
def _face_plan(P: SimplePolytope) -> tuple:
    """(face, index of the face without its largest facet, that facet)."""
    index = {F.facet_set: i for i, F in enumerate(P.faces)}
    plan = []
    for F in P.faces:  # ordered by codimension
        S = F.facet_set
        j = max(S) if S else 0
        plan.append((F, index[S - {j}] if S else -1, j))
    return tuple(plan)


def face_groups(P: SimplePolytope, beta: CharFunction) -> dict:
    """G_F for every face, each built from a face with one facet fewer."""
    vecs = (0,) + beta.vectors
    built = []
    for F, parent, j in _face_plan(P):
        if parent < 0:
            built.append((0,))
        else:
            base, b = built[parent], vecs[j]
            built.append(base + tuple(x ^ b for x in base))
    return {F: G for (F, _, _), G in zip(_face_plan(P), built)}


def barycentric_lift(P: SimplePolytope, beta: CharFunction, check: bool = True) -> LiftResult:
    if check:
        _require_valid(P, beta)
    n = beta.ambient_dim
    groups = face_groups(P, beta)
    rep = {}
    for F in P.faces:
        G = groups[F]
        reps = [-1] * (1 << n)
        for g in range(1 << n):
            if reps[g] < 0:  # g is the smallest element of its coset
                for h in G:
                    reps[g ^ h] = g
        rep[F] = reps
    return LiftResult(P, beta, rep, groups)


def lift_vertex_count(P: SimplePolytope) -> int:
    """2^n + sum_k f_k 2^(n-1-k), with f_k the number of faces of codimension k + 1."""
    n = P.dim
    return 2 ** n + sum(c * 2 ** (n - 1 - k) for k, c in enumerate(P.f_vector()))


# --- lifted cubical complex --------------------------------------------------


@dataclass
class LiftedCubicalComplex:
    polytope: SimplePolytope
    beta: CharFunction
    cells: dict  # (Face, coset rep) -> Cell
    collisions: list  # pairs of cell keys with equal vertex sets, below top dimension

    def collisions_by_dim(self) -> dict:
        out = defaultdict(list)
        for a, b in self.collisions:
            out[self.cells[a].dim].append((a, b))
        return dict(out)

    def cell_complex(self) -> CellComplex:
        C = CellComplex()
        for c in self.cells.values():
            C.add(c)
        return C

    def top_cells(self) -> list:
        return [c for c in self.cells.values() if c.dim == self.polytope.dim]


def cubical_lift(P: SimplePolytope, beta: CharFunction) -> LiftedCubicalComplex:
    _require_valid(P, beta)
    n = beta.ambient_dim
    groups = {F: beta.subgroup(F.facet_set) for F in P.faces}
    cells = {}
    # Faces in decreasing dimension order = increasing codim = cells of increasing dim.
    for F in P.faces:
        G = groups[F]
        reps = sorted({coset_rep(g, G) for g in range(1 << n)})
        for r in reps:
            verts = frozenset(equilibrium_labels(n)[r ^ h] for h in G)
            cells[F, r] = (F, r, verts)
    out = {}
    by_face = defaultdict(list)
    for (F, r), _ in cells.items():
        by_face[F].append(r)
    for (F, r), (_, _, verts) in cells.items():
        boundary = []
        if F.codim > 0:
            # Faces F' ⊋ F of one higher dimension: drop one facet from F's set.
            for j in sorted(F.facet_set):
                Fp = P.face(F.facet_set - {j})
                Gp = groups[Fp]
                for rp in sorted({coset_rep(r ^ h, Gp) for h in groups[F]}):
                    boundary.append((Fp, rp))
        out[F, r] = Cell((F, r), F.codim, verts, tuple(boundary))
    collisions = []
    by_set = defaultdict(list)
    for key, c in out.items():
        if c.dim < n:
            by_set[c.dim, c.vertices].append(key)
    for keys in by_set.values():
        for a, b in combinations(sorted(keys, key=_cell_sort_key), 2):
            collisions.append((a, b))
    collisions.sort(key=lambda ab: (_cell_sort_key(ab[0]), _cell_sort_key(ab[1])))
    return LiftedCubicalComplex(P, beta, out, collisions)


def _cell_sort_key(key):
    F, r = key
    return (F.codim, sorted(F.facet_set), r)


def cell_name(key, n: int) -> str:
    F, r = key
    return f"{F.key()}|{bits_to_str(r, n)}"


def subgroup_of(beta: CharFunction, facets) -> frozenset:
    return span(beta[j] for j in facets)


def parse_lift_label(label: str) -> tuple:
    """``F1,3|010`` -> (frozenset({1, 3}), 0b010)."""
    face, sep, bits = label.partition("|")
    if not sep or not face.startswith("F"):
        raise ValueError(f"not a lifted-vertex label: {label!r}")
    body = face[1:]
    facets = frozenset() if body == "∅" else frozenset(int(t) for t in body.split(","))
    return facets, int(bits, 2)


def translation_action(beta: CharFunction, labels) -> GroupAction:
    """The Z_2^n action h.(F, g+G_F) = (F, g+h+G_F) restricted to ``labels``."""
    n = beta.ambient_dim
    labels = set(labels)
    gens = []
    for i in range(n):
        h = 1 << (n - 1 - i)
        perm = {}
        for lab in labels:
            facets, r = parse_lift_label(lab)
            G = beta.subgroup(facets)
            key = ",".join(map(str, sorted(facets))) or "∅"
            img = f"F{key}|{bits_to_str(coset_rep(r ^ h, G), n)}"
            if img != lab:
                if img not in labels:
                    raise ValueError(f"label set not closed under the action: {img}")
                perm[lab] = img
        gens.append(perm)
    return GroupAction(n, gens)
