"""Combinatorial simple polytopes, their face lattices and cubical subdivisions.

A polytope is stored purely through vertex-facet incidences.  Facets are
numbered 1..m; a face is identified with the set of facets containing it,
so the polytope itself is the empty facet set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import combinations
from pathlib import Path


@dataclass(frozen=True)
class Face:
    """A face of a simple polytope, keyed by the facets that contain it.

    Faces sort by codimension, then by their sorted facet lists."""

    facet_set: frozenset
    dim: int

    def sort_key(self) -> tuple:
        return (len(self.facet_set), sorted(self.facet_set))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other):
        return self.sort_key() > other.sort_key()

    def __ge__(self, other):
        return self.sort_key() >= other.sort_key()

    @property
    def is_polytope(self) -> bool:
        return not self.facet_set

    @property
    def codim(self) -> int:
        return len(self.facet_set)

    def key(self) -> str:
        """Canonical text key, e.g. ``F1,3`` or ``F∅`` for the polytope."""
        if not self.facet_set:
            return "F∅"
        return "F" + ",".join(str(j) for j in sorted(self.facet_set))

    def __repr__(self):
        return f"Face({self.key()}, dim={self.dim})"


@dataclass(frozen=True)
class SimplePolytope:
    dim: int
    facet_count: int
    vertices: tuple  # tuple of frozensets of facet indices
    name: str = field(default="", compare=False)

    def __post_init__(self):
        n, m = self.dim, self.facet_count
        if n < 1:
            raise ValueError("polytope dimension must be at least 1")
        verts = tuple(frozenset(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(set(verts)) != len(verts):
            raise ValueError("distinct vertices must have distinct facet sets")
        used = set()
        for v in verts:
            if len(v) != n:
                raise ValueError(f"vertex {sorted(v)} is not in exactly {n} facets")
            if not all(1 <= j <= m for j in v):
                raise ValueError(f"vertex {sorted(v)} references a facet outside 1..{m}")
            used |= v
        if used != set(range(1, m + 1)):
            missing = sorted(set(range(1, m + 1)) - used)
            raise ValueError(f"facets {missing} contain no vertex")
        self._check_graded()

    def _check_graded(self):
        # In a simple polytope every facet subset of a vertex is a face, and a
        # face of codimension k is contained in exactly k facets.
        for face in self.faces:
            if face.facet_set and face.dim != self.dim - len(face.facet_set):
                raise ValueError(f"face lattice is not graded at {face.key()}")

    @cached_property
    def faces(self) -> tuple:
        """All nonempty faces, the polytope first, then by increasing codimension."""
        found = {frozenset()}
        for v in self.vertices:
            for k in range(1, self.dim + 1):
                for sub in combinations(sorted(v), k):
                    found.add(frozenset(sub))
        # A facet set is a face only if it is the full intersection pattern of
        # the vertices it contains (closure).
        out = []
        for s in found:
            if s:
                verts = [v for v in self.vertices if s <= v]
                closure = frozenset.intersection(*verts)
                if closure != s:
                    continue
            out.append(Face(s, self.dim - len(s)))
        out.sort(key=lambda f: (len(f.facet_set), sorted(f.facet_set)))
        return tuple(out)

    @cached_property
    def _face_index(self) -> dict:
        return {f.facet_set: f for f in self.faces}

    def face(self, facets) -> Face:
        s = frozenset(facets)
        try:
            return self._face_index[s]
        except KeyError:
            raise KeyError(f"no face with facet set {sorted(s)}") from None

    def vertex_faces(self) -> list:
        return [self.face(v) for v in self.vertices]

    def faces_of_dim(self, k: int) -> list:
        return [f for f in self.faces if f.dim == k]

    def vertices_of(self, face: Face) -> list:
        return [v for v in self.vertices if face.facet_set <= v]

    def f_vector(self) -> tuple:
        """Numbers of faces by codimension 1..n, i.e. (facets, ..., vertices)."""
        return tuple(sum(1 for f in self.faces if f.codim == k) for k in range(1, self.dim + 1))

    def flags(self) -> list:
        """Complete flags F_0 ⊂ F_1 ⊂ ... ⊂ F_n = Q, F_0 a vertex."""
        out = []

        def extend(chain):
            top = chain[-1]
            if top.is_polytope:
                out.append(tuple(chain))
                return
            for g in self.faces:
                if g.dim == top.dim + 1 and g.facet_set < top.facet_set:
                    extend(chain + [g])

        for v in self.vertex_faces():
            extend([v])
        return out


@lru_cache(maxsize=None)
def polygon(m: int) -> SimplePolytope:
    """m-gon with edges F_1..F_m and vertices V_i = F_{i-1} ∩ F_i (indices mod m)."""
    if m < 3:
        raise ValueError("a polygon needs at least 3 edges")
    verts = [frozenset({(i - 2) % m + 1, i}) for i in range(1, m + 1)]
    return SimplePolytope(2, m, tuple(verts), name=f"polygon({m})")


@lru_cache(maxsize=None)
def simplex(n: int) -> SimplePolytope:
    """n-simplex; vertex i (1-based) lies on every facet except F_i."""
    if n < 1:
        raise ValueError("simplex dimension must be at least 1")
    facets = set(range(1, n + 2))
    verts = [frozenset(facets - {i}) for i in range(1, n + 2)]
    return SimplePolytope(n, n + 1, tuple(verts), name=f"simplex({n})")


# Triangular prism with vertices 1..6, 4/5/6 above 1/2/3.  Facet order:
# F1 = 123, F2 = 456, F3 = 1245, F4 = 2356, F5 = 1346.
PRISM_VERTEX_NAMES = (1, 2, 3, 4, 5, 6)
PRISM_FACET_NAMES = ("123", "456", "1245", "2356", "1346")


@lru_cache(maxsize=None)
def prism() -> SimplePolytope:
    members = [set(map(int, name)) for name in PRISM_FACET_NAMES]
    verts = [frozenset(j + 1 for j, mem in enumerate(members) if v in mem) for v in PRISM_VERTEX_NAMES]
    return SimplePolytope(3, 5, tuple(verts), name="prism")


def make_polytope(kind: str, arg: int | None = None) -> SimplePolytope:
    if kind == "polygon":
        return polygon(arg)
    if kind == "simplex":
        return simplex(arg)
    if kind == "prism":
        return prism()
    raise ValueError(f"unknown polytope kind {kind!r}")


def prism_vertex(label: int) -> Face:
    """Vertex face of the built-in prism by its conventional number 1..6."""
    P = prism()
    return P.vertex_faces()[PRISM_VERTEX_NAMES.index(label)]


def prism_edge(a: int, b: int) -> Face:
    P = prism()
    fa, fb = prism_vertex(a).facet_set, prism_vertex(b).facet_set
    return P.face(fa & fb)


# --- cubical subdivision -------------------------------------------------


@dataclass(frozen=True)
class CubicalSubdivision:
    polytope: SimplePolytope
    cubes: tuple  # cubes[i] = frozenset of Faces: {F : V_i in F} ∪ {Q}

    @property
    def vertex_faces(self) -> list:
        """Faces whose barycentres are the vertices of the subdivision."""
        return list(self.polytope.faces)


def cubical_subdivision(P: SimplePolytope) -> CubicalSubdivision:
    cubes = []
    for v in P.vertices:
        cubes.append(frozenset(f for f in P.faces if f.facet_set <= v))
    return CubicalSubdivision(P, tuple(cubes))


# --- file format ----------------------------------------------------------


def parse_polytope(text: str) -> SimplePolytope:
    """Parse ``dim n facets m`` followed by one line of facet indices per vertex."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty polytope file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "dim" or head[2] != "facets":
        raise ValueError("first line must read 'dim <n> facets <m>'")
    n, m = int(head[1]), int(head[3])
    verts = [frozenset(int(tok) for tok in line.split()) for line in lines[1:]]
    return SimplePolytope(n, m, tuple(verts))


def read_polytope(path) -> SimplePolytope:
    return parse_polytope(Path(path).read_text())


def format_polytope(P: SimplePolytope) -> str:
    out = [f"dim {P.dim} facets {P.facet_count}"]
    for v in P.vertices:
        out.append(" ".join(str(j) for j in sorted(v)))
    return "\n".join(out) + "\n"
