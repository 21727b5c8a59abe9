"""Shared pieces for gluing cell triangulations together.

Every cell owns the simplices of its triangulation that do not lie in the
triangulations of its boundary cells.  Gluing cells gives a simplicial
complex exactly when no simplex is owned twice.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from itertools import combinations


def all_faces(tops) -> set:
    out = set()
    for t in tops:
        items = sorted(t)
        for k in range(1, len(items) + 1):
            out.update(frozenset(c) for c in combinations(items, k))
    return out


class SearchExhausted(RuntimeError):
    """Backtracking found no assembly meeting the constraints."""

    def __init__(self, message, nodes=0, tightest=None):
        self.nodes = nodes
        self.tightest = tightest
        super().__init__(message)


@dataclass(frozen=True)
class Option:
    tag: object  # what was chosen, e.g. the pulling vertex
    tops: frozenset  # maximal simplices of the cell's triangulation
    owned: frozenset  # simplices not on the cell's boundary
    weight: int = 0  # e.g. number of top simplices, for global counting constraints


def solve_binary_csp(domains: dict, nogoods: dict, budget: int = 1_000_000, order_key=None) -> dict:
    """Assign one value per variable avoiding forbidden value pairs.

    ``nogoods[(var, val)]`` is the set of ``(var2, val2)`` incompatible with
    it.  Most-constrained variable first, forward checking, values tried in
    sorted order so the first solution found is deterministic."""
    order_key = order_key or (lambda v: str(v))
    live = {v: set(vals) for v, vals in domains.items()}
    chosen = {}
    nodes = 0
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 3 * len(domains) + 200))

    def rec():
        nonlocal nodes
        if len(chosen) == len(domains):
            return True
        var = min((v for v in live if v not in chosen), key=lambda v: (len(live[v]), order_key(v)))
        for val in sorted(live[var]):
            nodes += 1
            if nodes > budget:
                raise SearchExhausted(f"node budget {budget} exhausted", nodes, var)
            removed = []
            wiped = False
            for var2, val2 in nogoods.get((var, val), ()):
                if var2 not in chosen and val2 in live[var2]:
                    live[var2].discard(val2)
                    removed.append((var2, val2))
                    if not live[var2]:
                        wiped = True
            if not wiped:
                chosen[var] = val
                if rec():
                    return True
                del chosen[var]
            for var2, val2 in removed:
                live[var2].add(val2)
        return False

    if not rec():
        raise SearchExhausted("constraints cannot all be met", nodes)
    return dict(chosen)
