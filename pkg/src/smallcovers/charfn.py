"""Z_2-characteristic functions on simple polytopes.

Elements of Z_2^n are stored as ints; bit ``n-1-i`` holds coordinate ``i`` so
that ``bits_to_str`` prints them in the natural left-to-right order.  Addition
in the group is XOR.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .polytope import SimplePolytope


def vec(bits, n: int | None = None) -> int:
    """Build a group element from a tuple/list/string of 0/1 coordinates."""
    if isinstance(bits, int):
        return bits
    if isinstance(bits, str):
        bits = [int(c) for c in bits if c in "01"]
    out = 0
    for b in bits:
        out = (out << 1) | (int(b) & 1)
    return out


def bits_to_str(x: int, n: int) -> str:
    return format(x, f"0{n}b") if n else ""


def f2_rank(vectors) -> int:
    basis = []
    for v in vectors:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


def span(vectors) -> frozenset:
    """The subgroup generated by ``vectors``."""
    out = {0}
    for v in vectors:
        out |= {x ^ v for x in out}
    return frozenset(out)


def coset_rep(g: int, subgroup: frozenset) -> int:
    """Minimal element of the coset g + subgroup."""
    return min(g ^ h for h in subgroup)


@dataclass(frozen=True)
class CharFunction:
    ambient_dim: int
    vectors: tuple  # vectors[j-1] = beta(F_j) as int

    def __post_init__(self):
        vs = tuple(vec(v) for v in self.vectors)
        object.__setattr__(self, "vectors", vs)
        limit = 1 << self.ambient_dim
        for j, v in enumerate(vs, start=1):
            if v == 0:
                raise ValueError(f"beta(F{j}) is the zero vector")
            if v >= limit:
                raise ValueError(f"beta(F{j}) does not fit in Z_2^{self.ambient_dim}")

    @classmethod
    def from_bits(cls, rows, n: int | None = None) -> "CharFunction":
        rows = list(rows)
        if n is None:
            first = rows[0]
            n = len(first) if not isinstance(first, int) else None
            if n is None:
                raise ValueError("ambient dimension required for integer vectors")
        return cls(n, tuple(vec(r) for r in rows))

    def __getitem__(self, j: int) -> int:
        """beta(F_j), 1-based."""
        return self.vectors[j - 1]

    def __len__(self):
        return len(self.vectors)

    def subgroup(self, facet_set) -> frozenset:
        """G_F for the face with the given facets."""
        return span(self[j] for j in facet_set)

    def as_rows(self) -> list:
        return [bits_to_str(v, self.ambient_dim) for v in self.vectors]

    def __repr__(self):
        return f"CharFunction({', '.join(self.as_rows())})"


def _check_shapes(P: SimplePolytope, beta: CharFunction):
    if beta.ambient_dim != P.dim:
        raise ValueError(f"characteristic vectors live in Z_2^{beta.ambient_dim}, polytope has dim {P.dim}")
    if len(beta) != P.facet_count:
        raise ValueError(f"{len(beta)} vectors given for {P.facet_count} facets")


def validate_charfn(P: SimplePolytope, beta: CharFunction) -> bool:
    _check_shapes(P, beta)
    return all(f2_rank(beta[j] for j in v) == P.dim for v in P.vertices)


def validate_all_faces(P: SimplePolytope, beta: CharFunction) -> bool:
    """Unoptimised definition: rank condition at every face."""
    _check_shapes(P, beta)
    return all(f2_rank(beta[j] for j in F.facet_set) == F.codim for F in P.faces)


def enumerate_charfns(P: SimplePolytope, cutoff: int = 2_000_000) -> list:
    """All characteristic functions on P, lexicographic in the vector lists."""
    n, m = P.dim, P.facet_count
    space = ((1 << n) - 1) ** m
    if space > cutoff:
        raise ValueError(f"search space {space} exceeds cutoff {cutoff}")
    # Depth-first over facets.  beta(F_j) must avoid the span of the other
    # facets of every face whose largest facet is j; all subsets of a
    # vertex's facets are faces of a simple polytope.
    order = list(range(1, m + 1))
    partners = {j: set() for j in order}
    for v in P.vertices:
        for k in range(1, len(v)):
            for sub in combinations(sorted(v), k + 1):
                partners[sub[-1]].add(sub[:-1])
    out = []
    assign = [0] * (m + 1)

    def rec(j):
        if j > m:
            out.append(CharFunction(n, tuple(assign[1:])))
            return
        banned = {0}
        for rest in partners[j]:
            banned |= span(assign[i] for i in rest)
        for x in range(1, 1 << n):
            if x not in banned:
                assign[j] = x
                rec(j + 1)
        assign[j] = 0

    rec(1)
    return out


def vector_multiplicities(beta: CharFunction) -> dict:
    """s(a) for every nonzero a, zero counts included."""
    counts = Counter(beta.vectors)
    return {a: counts.get(a, 0) for a in range(1, 1 << beta.ambient_dim)}


def qualifying_edges(P: SimplePolytope, beta: CharFunction) -> list:
    """Edges F_a ∩ F_b whose endpoint-completing facets F_c, F_d satisfy
    beta_c + beta_d ∈ {beta_a, beta_b}.  Returned as edge facet sets."""
    if P.dim != 3:
        raise ValueError("the edge condition is defined for 3-polytopes")
    _check_shapes(P, beta)
    out = []
    for E in P.faces_of_dim(1):
        ends = P.vertices_of(E)
        (c,) = ends[0] - E.facet_set
        (d,) = ends[1] - E.facet_set
        a, b = sorted(E.facet_set)
        if beta[c] ^ beta[d] in (beta[a], beta[b]):
            out.append(E.facet_set)
    return out


def special_edges(P: SimplePolytope, beta: CharFunction) -> list:
    """Edges F_a ∩ F_b whose square diagonals beta_a + beta_b coincide with
    some facet vector, so a diagonal of each lifted square doubles a lifted
    edge and the square needs an interior vertex instead."""
    if P.dim != 3:
        raise ValueError("the edge condition is defined for 3-polytopes")
    _check_shapes(P, beta)
    used = set(beta.vectors)
    out = []
    for E in P.faces_of_dim(1):
        a, b = sorted(E.facet_set)
        if beta[a] ^ beta[b] in used:
            out.append(E.facet_set)
    return out


def special_edge_count(P: SimplePolytope, beta: CharFunction) -> int:
    """The count l of edges needing two extra vertices."""
    return len(special_edges(P, beta))


# --- file format ----------------------------------------------------------


def parse_charfn(text: str) -> CharFunction:
    """Parse lines ``F<j>: b1 b2 ... bn``."""
    rows = {}
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(":")
        head = head.strip()
        if not head.startswith("F") or not head[1:].isdigit():
            raise ValueError(f"line {lineno}: expected 'F<j>: bits'")
        bits = rest.split()
        if not bits or any(b not in ("0", "1") for b in bits):
            raise ValueError(f"line {lineno}: bits must be 0/1")
        if n is None:
            n = len(bits)
        elif len(bits) != n:
            raise ValueError(f"line {lineno}: expected {n} bits")
        rows[int(head[1:])] = vec(bits)
    if not rows:
        raise ValueError("empty characteristic function file")
    m = max(rows)
    if sorted(rows) != list(range(1, m + 1)):
        raise ValueError("facets must be numbered 1..m without gaps")
    return CharFunction(n, tuple(rows[j] for j in range(1, m + 1)))


def format_charfn(beta: CharFunction) -> str:
    n = beta.ambient_dim
    return "".join(f"F{j}: {' '.join(bits_to_str(v, n))}\n" for j, v in enumerate(beta.vectors, start=1))


def read_charfn(path) -> CharFunction:
    return parse_charfn(Path(path).read_text())


def parse_beta_arg(spec: str) -> CharFunction:
    """Comma-separated bit strings, e.g. ``10,01,11``."""
    rows = [s.strip() for s in spec.split(",") if s.strip()]
    if not rows or any(set(r) - {"0", "1"} for r in rows):
        raise ValueError(f"bad characteristic function {spec!r}")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise ValueError("all vectors must have the same length")
    return CharFunction(n, tuple(vec(r) for r in rows))


def standard_simplex_charfn(n: int) -> CharFunction:
    """(e_1, ..., e_n, e_1 + ... + e_n) on the n-simplex."""
    es = [1 << (n - 1 - i) for i in range(n)]
    return CharFunction(n, tuple(es + [(1 << n) - 1]))

