"""Finite abstract simplicial complexes and the checks run on them.

Everything here is exact: F_2 linear algebra uses Python ints as bit rows and
the integral homology uses arbitrary-precision integers.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path

from .linalg import f2_rank_of_columns, smith_invariants


class SimplicialComplex:
    """A complex given by its maximal simplices.

    Simplices are frozensets of vertex labels.  Labels must be mutually
    comparable so that output can be ordered canonically.
    """

    def __init__(self, maximal):
        simplices = {frozenset(s) for s in maximal}
        simplices.discard(frozenset())
        if not simplices:
            raise ValueError("a complex needs at least one nonempty simplex")
        self.facets = _prune(simplices)
        self.vertices = frozenset().union(*self.facets)
        self.dim = max(len(s) for s in self.facets) - 1

    def __repr__(self):
        return f"SimplicialComplex(dim={self.dim}, f={self.f_vector()})"

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and set(self.facets) == set(other.facets)

    def __hash__(self):
        return hash(frozenset(self.facets))

    def __contains__(self, simplex):
        s = frozenset(simplex)
        return s in self.simplex_set

    @cached_property
    def faces_by_dim(self) -> list:
        """faces_by_dim[k] = sorted list of k-simplices (as sorted tuples)."""
        out = [set() for _ in range(self.dim + 1)]
        for facet in self.facets:
            verts = sorted(facet)
            for k in range(1, len(verts) + 1):
                out[k - 1].update(combinations(verts, k))
        return [sorted(layer) for layer in out]

    @cached_property
    def simplex_set(self) -> frozenset:
        return frozenset(frozenset(s) for layer in self.faces_by_dim for s in layer)

    def faces(self, k: int) -> list:
        if k < 0 or k > self.dim:
            return []
        return self.faces_by_dim[k]

    def f_vector(self) -> tuple:
        if "faces_by_dim" in self.__dict__:
            return tuple(len(layer) for layer in self.faces_by_dim)
        return self._counts

    @cached_property
    def _counts(self) -> tuple:
        out = [set() for _ in range(self.dim + 1)]
        for facet in self.facets:
            verts = sorted(facet)
            for k in range(1, len(verts) + 1):
                out[k - 1].update(combinations(verts, k))
        return tuple(len(layer) for layer in out)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * f for k, f in enumerate(self.f_vector()))

    def sorted_facets(self) -> list:
        return sorted(tuple(sorted(f)) for f in self.facets)

    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)

    def full_subcomplex(self, labels) -> "SimplicialComplex":
        keep = frozenset(labels)
        simplices = [frozenset(s) for layer in self.faces_by_dim for s in layer if keep.issuperset(s)]
        return SimplicialComplex(simplices)


def _prune(simplices) -> tuple:
    """Drop simplices contained in other simplices."""
    by_size = sorted(simplices, key=len, reverse=True)
    if len(by_size[0]) == len(by_size[-1]):
        return tuple(sorted(by_size, key=sorted))
    kept = []
    index = defaultdict(list)  # vertex -> kept simplices containing it
    for s in by_size:
        v = next(iter(s))
        if any(s <= t for t in index[v]):
            continue
        kept.append(s)
        for x in s:
            index[x].append(s)
    kept.sort(key=lambda f: sorted(f))
    return tuple(kept)


def build_complex(maximal) -> SimplicialComplex:
    maximal = list(maximal)
    if not maximal:
        raise ValueError("empty list of simplices")
    return SimplicialComplex(maximal)


def f_vector(X: SimplicialComplex) -> tuple:
    return X.f_vector()


def euler_characteristic(X: SimplicialComplex) -> int:
    return X.euler_characteristic()


def link(X: SimplicialComplex, v) -> SimplicialComplex | None:
    """Link of a vertex; ``None`` when the link is empty (isolated vertex)."""
    if v not in X.vertices:
        raise KeyError(f"unknown vertex {v!r}")
    parts = [f - {v} for f in X.facets if v in f]
    parts = [p for p in parts if p]
    if not parts:
        return None
    return SimplicialComplex(parts)


def cone(apex, base: SimplicialComplex) -> SimplicialComplex:
    if base is None:
        raise ValueError("cannot cone over an empty complex")
    if apex in base.vertices:
        raise ValueError(f"apex {apex!r} already a vertex of the base")
    return SimplicialComplex(f | {apex} for f in base.facets)


def star_facets(X: SimplicialComplex, v) -> list:
    return [f for f in X.facets if v in f]


# --- connectivity ----------------------------------------------------------


def is_connected(X: SimplicialComplex) -> bool:
    adj = defaultdict(set)
    for f in X.facets:
        for a in f:
            adj[a] |= f
    start = next(iter(X.vertices))
    seen = {start}
    todo = [start]
    while todo:
        a = todo.pop()
        for b in adj[a] - seen:
            seen.add(b)
            todo.append(b)
    return seen == set(X.vertices)


def ridge_map(X: SimplicialComplex) -> dict:
    """Ridge -> list of facets containing it (pure complexes)."""
    out = defaultdict(list)
    for f in X.facets:
        for v in f:
            out[f - {v}].append(f)
    return out


def is_pseudomanifold(X: SimplicialComplex, with_boundary: bool = False) -> bool:
    if not X.is_pure():
        return False
    counts = {len(fs) for fs in ridge_map(X).values()}
    allowed = {1, 2} if with_boundary else {2}
    return counts <= allowed


def strongly_connected(X: SimplicialComplex) -> bool:
    rm = ridge_map(X)
    adj = defaultdict(set)
    for fs in rm.values():
        for a in fs:
            adj[a].update(fs)
    facets = list(X.facets)
    seen = {facets[0]}
    todo = [facets[0]]
    while todo:
        a = todo.pop()
        for b in adj[a] - seen:
            seen.add(b)
            todo.append(b)
    return len(seen) == len(facets)


def boundary_complex(X: SimplicialComplex) -> SimplicialComplex | None:
    """Ridges lying in exactly one facet, or None for a closed complex."""
    ridges = [r for r, fs in ridge_map(X).items() if len(fs) == 1 and r]
    if not ridges:
        return None
    return SimplicialComplex(ridges)


# --- manifold verification --------------------------------------------------


@dataclass
class ManifoldReport:
    ok: bool
    dim: int
    certificate: str = "full"  # "full" or "weak"
    reason: str = ""
    witness: object = None

    def __bool__(self):
        return self.ok


def _is_cycle(L: SimplicialComplex) -> bool:
    if L.dim != 1 or not L.is_pure():
        return False
    deg = defaultdict(int)
    for e in L.facets:
        for a in e:
            deg[a] += 1
    return all(d == 2 for d in deg.values()) and is_connected(L)


def verify_closed_manifold(X: SimplicialComplex) -> ManifoldReport:
    d = X.dim
    if d == 0:
        return ManifoldReport(len(X.vertices) == 2, 0, reason="0-sphere needs exactly two points")
    if d == 1:
        for v in sorted(X.vertices):
            L = link(X, v)
            if L is None or L.dim != 0 or len(L.vertices) != 2:
                return ManifoldReport(False, 1, reason="vertex link is not two points", witness=v)
        return ManifoldReport(True, 1)
    if d == 2:
        for v in sorted(X.vertices):
            L = link(X, v)
            if L is None or not _is_cycle(L):
                return ManifoldReport(False, 2, reason="vertex link is not a single cycle", witness=v)
        return ManifoldReport(True, 2)
    if d == 3:
        if not X.is_pure():
            return ManifoldReport(False, 3, reason="complex is not pure")
        for v in sorted(X.vertices):
            L = link(X, v)
            if L is None or L.dim != 2 or not verify_closed_manifold(L).ok:
                return ManifoldReport(False, 3, reason="vertex link is not a closed surface", witness=v)
            if not is_connected(L) or L.euler_characteristic() != 2:
                return ManifoldReport(False, 3, reason="vertex link is not a 2-sphere", witness=v)
        return ManifoldReport(True, 3)
    # d >= 4: weak certificate only.
    if not is_pseudomanifold(X):
        return ManifoldReport(False, d, "weak", reason="some ridge is not in exactly two facets")
    if not strongly_connected(X) and not _components_strongly_connected(X):
        return ManifoldReport(False, d, "weak", reason="not strongly connected")
    sphere = [1] + [0] * (d - 2) + [1]
    for v in sorted(X.vertices):
        L = link(X, v)
        sub = verify_closed_manifold(L)
        if not sub.ok:
            return ManifoldReport(False, d, "weak", reason=f"vertex link fails: {sub.reason}", witness=v)
        if betti_mod2(L) != sphere:
            return ManifoldReport(False, d, "weak", reason="vertex link is not a mod-2 homology sphere", witness=v)
    return ManifoldReport(True, d, "weak")


def _components_strongly_connected(X: SimplicialComplex) -> bool:
    # Each connected component must be strongly connected on its own.
    comps = _components(X)
    return all(strongly_connected(SimplicialComplex(c)) for c in comps)


def _components(X: SimplicialComplex) -> list:
    parent = {}

    def find(a):
        while parent.setdefault(a, a) != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for f in X.facets:
        it = iter(f)
        a = find(next(it))
        for b in it:
            parent[find(b)] = a
    groups = defaultdict(list)
    for f in X.facets:
        groups[find(next(iter(f)))].append(f)
    return list(groups.values())


# --- homology --------------------------------------------------------------


def _index(X: SimplicialComplex) -> list:
    return [{s: i for i, s in enumerate(layer)} for layer in X.faces_by_dim]


def boundary_columns_mod2(X: SimplicialComplex, k: int) -> list:
    """Columns of the F_2 boundary map C_k -> C_{k-1} as int bit rows."""
    if k <= 0 or k > X.dim:
        return []
    idx = _index(X)[k - 1]
    cols = []
    for s in X.faces(k):
        bits = 0
        for i in range(len(s)):
            bits |= 1 << idx[s[:i] + s[i + 1:]]
        cols.append(bits)
    return cols


def betti_mod2(X: SimplicialComplex) -> list:
    f = X.f_vector()
    ranks = [0] * (X.dim + 2)
    for k in range(1, X.dim + 1):
        ranks[k] = f2_rank_of_columns(boundary_columns_mod2(X, k))
    return [f[k] - ranks[k] - ranks[k + 1] for k in range(X.dim + 1)]


def boundary_matrix_int(X: SimplicialComplex, k: int) -> dict:
    """Sparse integer boundary map C_k -> C_{k-1}: {col: {row: ±1}}.

    Orientation of each simplex is induced by the sorted vertex order."""
    if k <= 0 or k > X.dim:
        return {}
    idx = _index(X)[k - 1]
    out = {}
    for j, s in enumerate(X.faces(k)):
        out[j] = {idx[s[:i] + s[i + 1:]]: (-1) ** i for i in range(len(s))}
    return out


@dataclass
class HomologyProfile:
    betti_mod2: list
    integral: list  # per degree: (free rank, [torsion coefficients])

    def h(self, k: int) -> tuple:
        return self.integral[k]

    def describe(self, k: int) -> str:
        free, tors = self.integral[k]
        parts = (["Z^%d" % free if free > 1 else "Z"] if free else []) + [f"Z/{t}" for t in tors]
        return " + ".join(parts) if parts else "0"


def integral_homology(X: SimplicialComplex) -> HomologyProfile:
    f = X.f_vector()
    d = X.dim
    ranks = [0] * (d + 2)
    torsion = [[] for _ in range(d + 2)]
    for k in range(1, d + 1):
        inv = smith_invariants(boundary_matrix_int(X, k), f[k - 1], f[k])
        ranks[k] = len(inv)
        torsion[k - 1] = [t for t in inv if t > 1]
    integral = [(f[k] - ranks[k] - ranks[k + 1], torsion[k]) for k in range(d + 1)]
    return HomologyProfile(betti_mod2(X), integral)


def mod2_from_integral(profile: HomologyProfile) -> list:
    """Universal coefficients: b_k(F_2) = free_k + t2_k + t2_{k-1}."""
    out = []
    prev = 0
    for free, tors in profile.integral:
        t2 = sum(1 for t in tors if t % 2 == 0)
        out.append(free + t2 + prev)
        prev = t2
    return out


# --- orientability ----------------------------------------------------------


def orientable(X: SimplicialComplex) -> bool:
    if not is_pseudomanifold(X, with_boundary=True):
        raise ValueError("orientability is only defined here for pseudomanifolds")
    facets = [tuple(sorted(f)) for f in X.facets]
    ridges = defaultdict(list)  # ridge -> [(facet index, sign of induced orientation)]
    for i, f in enumerate(facets):
        for pos in range(len(f)):
            ridges[f[:pos] + f[pos + 1:]].append((i, (-1) ** pos))
    sign = [0] * len(facets)
    for start in range(len(facets)):
        if sign[start]:
            continue
        sign[start] = 1
        todo = deque([start])
        while todo:
            i = todo.popleft()
            f = facets[i]
            for pos in range(len(f)):
                r = f[:pos] + f[pos + 1:]
                for j, sj in ridges[r]:
                    if j == i:
                        continue
                    si = (-1) ** pos
                    want = -sign[i] * si * sj
                    if sign[j] == 0:
                        sign[j] = want
                        todo.append(j)
                    elif sign[j] != want:
                        return False
    return True


# --- cell complexes and pulling ---------------------------------------------


@dataclass(frozen=True)
class Cell:
    id: object
    dim: int
    vertices: frozenset
    boundary: tuple = ()


class CollisionError(ValueError):
    """Two distinct cells produced the same simplex."""

    def __init__(self, first, second, simplex):
        self.cells = (first, second)
        self.simplex = simplex
        super().__init__(f"COLLISION: cells {first!r} and {second!r} both emit simplex {sorted(simplex)}")


@dataclass
class CellComplex:
    cells: dict = field(default_factory=dict)  # id -> Cell

    def add(self, cell: Cell):
        if cell.id in self.cells:
            raise ValueError(f"duplicate cell id {cell.id!r}")
        self.cells[cell.id] = cell

    def by_dim(self, k: int) -> list:
        return [c for c in self.cells.values() if c.dim == k]

    @property
    def dim(self) -> int:
        return max(c.dim for c in self.cells.values())

    def vertex_labels(self) -> frozenset:
        return frozenset().union(*(c.vertices for c in self.cells.values()))


def pull_cell(cell: Cell, tri_of: dict, apex) -> list:
    """Cone ``apex`` over the triangulations of the boundary cells avoiding it."""
    out = []
    for b in cell.boundary:
        if apex in tri_of[b][1]:
            continue
        out.extend(s | {apex} for s in tri_of[b][0])
    return out


def pull_triangulate(C: CellComplex, order=None, apexes: dict | None = None, cells=None) -> SimplicialComplex:
    """Triangulate a cell complex without new vertices by recursive pulling.

    Each cell is coned from its smallest vertex under ``order`` (a key
    function or a sequence ranking the labels) over the triangulated boundary
    cells not containing that vertex.  ``apexes`` may override the cone vertex
    per cell id.  Raises CollisionError when two distinct cells emit the
    same top-dimensional simplex."""
    tris = pulled_triangulations(C, order, apexes)
    pick = C.cells.values() if cells is None else [C.cells[i] for i in cells]
    maximal = []
    for cell in pick:
        maximal.extend(tris[cell.id][0])
    return SimplicialComplex(maximal)


def _order_key(order):
    if order is None:
        return lambda v: v
    if callable(order):
        return order
    rank = {v: i for i, v in enumerate(order)}
    return lambda v: rank[v]


def pulled_triangulations(C: CellComplex, order=None, apexes: dict | None = None) -> dict:
    """id -> (list of top simplices of that cell, vertex set)."""
    key = _order_key(order)
    apexes = apexes or {}
    tri = {}
    owner = {}
    for cell in sorted(C.cells.values(), key=lambda c: c.dim):
        if cell.dim == 0:
            simplices = [frozenset(cell.vertices)]
        else:
            apex = apexes.get(cell.id)
            if apex is None:
                apex = min(cell.vertices, key=key)
            simplices = pull_cell(cell, tri, apex)
        for s in simplices:
            prev = owner.get(s)
            if prev is not None and prev != cell.id:
                raise CollisionError(prev, cell.id, s)
            owner[s] = cell.id
        tri[cell.id] = (simplices, cell.vertices)
    return tri


def cube_cell_complex(d: int) -> CellComplex:
    """The standard d-cube with vertices labelled by 0/1 strings."""
    C = CellComplex()
    # A face is fixed coordinates (pattern of '0','1','*').
    from itertools import product

    for pattern in product("01*", repeat=d):
        k = pattern.count("*")
        free = [i for i, c in enumerate(pattern) if c == "*"]
        verts = []
        for bits in product("01", repeat=k):
            p = list(pattern)
            for i, b in zip(free, bits):
                p[i] = b
            verts.append("".join(p))
        boundary = []
        for i in free:
            for b in "01":
                q = list(pattern)
                q[i] = b
                boundary.append("".join(q))
        C.add(Cell("".join(pattern), k, frozenset(verts), tuple(boundary)))
    return C


# --- .cplx file format --------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line else message)


def format_cplx(X: SimplicialComplex) -> str:
    lines = [f"dim {X.dim} vertices {len(X.vertices)}"]
    lines += [" ".join(str(v) for v in f) for f in sorted(tuple(sorted(map(str, f))) for f in X.facets)]
    return "\n".join(lines) + "\n"


def parse_cplx(text: str) -> SimplicialComplex:
    header = None
    rows = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 4 or parts[0] != "dim" or parts[2] != "vertices":
                raise ParseError("header must read 'dim <d> vertices <k>'", lineno)
            try:
                header = (int(parts[1]), int(parts[3]))
            except ValueError:
                raise ParseError("non-integer header field", lineno) from None
            continue
        labels = line.split()
        s = frozenset(labels)
        if len(s) != len(labels):
            raise ParseError("repeated label inside a simplex", lineno)
        if s in seen:
            raise ParseError("duplicate maximal simplex", lineno)
        seen.add(s)
        rows.append((lineno, s))
    if header is None:
        raise ParseError("empty complex file")
    if not rows:
        raise ParseError("no simplices listed")
    X = SimplicialComplex(s for _, s in rows)
    if len(X.facets) != len(rows):
        contained = next(ln for ln, s in rows if s not in X.facets)
        raise ParseError("simplex contained in another listed simplex", contained)
    d, k = header
    if X.dim != d:
        raise ParseError(f"header says dim {d}, simplices give {X.dim}", 1)
    if len(X.vertices) != k:
        raise ParseError(f"header says {k} vertices, simplices use {len(X.vertices)}", 1)
    return X


def read_cplx(path) -> SimplicialComplex:
    return parse_cplx(Path(path).read_text(encoding="utf-8"))


def write_cplx(X: SimplicialComplex, path) -> None:
    Path(path).write_text(format_cplx(X), encoding="utf-8")
