"""Exact linear algebra over F_2 and Z for boundary matrices."""

from __future__ import annotations

from math import gcd


def f2_rank_of_columns(columns) -> int:
    """Rank over F_2 of columns given as int bitmasks."""
    pivots = {}  # leading bit -> reduced column
    rank = 0
    for col in columns:
        while col:
            top = col.bit_length() - 1
            p = pivots.get(top)
            if p is None:
                pivots[top] = col
                rank += 1
                break
            col ^= p
    return rank


def smith_invariants(columns: dict, nrows: int, ncols: int) -> list:
    """Nonzero invariant factors of an integer matrix given as {col: {row: val}}.

    Unit pivots are eliminated sparsely first (they contribute factors 1); the
    remainder, usually tiny for boundary matrices, gets a dense Smith form.
    """
    cols = {j: {i: v for i, v in c.items() if v} for j, c in columns.items()}
    cols = {j: c for j, c in cols.items() if c}
    rows = {}
    for j, c in cols.items():
        for i in c:
            rows.setdefault(i, set()).add(j)
    ones = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda j: len(cols[j])):
            c = cols.get(j)
            if not c:
                continue
            # Prefer a unit entry whose row is short (less fill-in).
            best = None
            for i, v in c.items():
                if v in (1, -1) and (best is None or len(rows[i]) < len(rows[best])):
                    best = i
            if best is None:
                continue
            r, pv = best, c[best]
            for k in list(rows[r]):
                if k == j:
                    continue
                ck = cols[k]
                factor = ck[r] * pv  # pv = ±1, so dividing equals multiplying
                for i, v in c.items():
                    nv = ck.get(i, 0) - factor * v
                    if nv:
                        if i not in ck:
                            rows[i].add(k)
                        ck[i] = nv
                    elif i in ck:
                        del ck[i]
                        rows[i].discard(k)
                if not ck:
                    del cols[k]
            for i in c:
                rows[i].discard(j)
            del cols[j]
            del rows[r]
            ones += 1
            progress = True
    rest = _dense_smith(cols)
    return [1] * ones + rest


def _dense_smith(cols: dict) -> list:
    if not cols:
        return []
    row_ids = sorted({i for c in cols.values() for i in c})
    rindex = {r: k for k, r in enumerate(row_ids)}
    col_ids = sorted(cols)
    A = [[0] * len(col_ids) for _ in row_ids]
    for jj, j in enumerate(col_ids):
        for i, v in cols[j].items():
            A[rindex[i]][jj] = v
    return smith_diagonal(A)


def smith_diagonal(A) -> list:
    """Nonzero diagonal of the Smith normal form of a dense integer matrix."""
    A = [list(row) for row in A]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < m and t < n:
        # Pick the smallest nonzero entry in the remaining block.
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        A[t], A[i] = A[i], A[t]
        for row in A:
            row[t], row[j] = row[j], row[t]
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // p
                    for row in A:
                        row[j] -= q * row[t]
                    if A[t][j]:
                        done = False
            if not done:
                # Move the smallest remaining entry of row/col t to the pivot.
                cands = [(abs(A[i][t]), i, t) for i in range(t, m) if A[i][t]]
                cands += [(abs(A[t][j]), t, j) for j in range(t, n) if A[t][j]]
                _, i, j = min(cands)
                A[t], A[i] = A[i], A[t]
                for row in A:
                    row[t], row[j] = row[j], row[t]
                continue
            # Pivot must divide the whole remaining block.
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
        diag.append(abs(A[t][t]))
        t += 1
    # Normalise to divisibility chain.
    out = [d for d in diag if d]
    changed = True
    while changed:
        changed = False
        for k in range(len(out) - 1):
            a, b = out[k], out[k + 1]
            if b % a:
                g = gcd(a, b)
                out[k], out[k + 1] = g, a * b // g
                changed = True
    return sorted(out)
