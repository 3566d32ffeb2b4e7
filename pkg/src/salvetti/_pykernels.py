"""Pure-Python exact integer elimination.

Boundary matrices of simplicial complexes are sparse with unit entries, so
both routines first strip unit pivots from a sparse row representation and
only fall back to dense arithmetic on whatever is left.  All arithmetic is on
Python ints and never overflows.
"""

from collections import defaultdict
from math import gcd


def _sparse_rows(rows):
    out = []
    for r in rows:
        items = r.items() if isinstance(r, dict) else enumerate(r)
        d = {c: int(v) for c, v in items if v}
        if d:
            out.append(d)
    return out


def _strip_unit_pivots(rows):
    """Eliminate every unit pivot; return (number eliminated, leftover rows)."""
    col_rows = defaultdict(set)
    for i, r in enumerate(rows):
        for c in r:
            col_rows[c].add(i)
    alive = set(range(len(rows)))
    units = 0
    changed = True
    while changed:
        changed = False
        for i in sorted(alive):
            if i not in alive:
                continue
            r = rows[i]
            best = None
            for c, v in r.items():
                if v == 1 or v == -1:
                    # fewest entries in the pivot column keeps fill-in low
                    key = (len(col_rows[c]), c)
                    if best is None or key < best[0]:
                        best = (key, c)
            if best is None:
                continue
            c = best[1]
            pv = r[c]
            for j in sorted(col_rows[c] - {i}):
                rj = rows[j]
                factor = rj[c] * pv
                for cc, val in r.items():
                    new = rj.get(cc, 0) - factor * val
                    if new:
                        if cc not in rj:
                            col_rows[cc].add(j)
                        rj[cc] = new
                    elif cc in rj:
                        del rj[cc]
                        col_rows[cc].discard(j)
                if not rj:
                    alive.discard(j)
            for cc in r:
                col_rows[cc].discard(i)
            alive.discard(i)
            units += 1
            changed = True
    return units, [rows[i] for i in sorted(alive) if rows[i]]


def _densify(rows):
    cols = sorted({c for r in rows for c in r})
    pos = {c: k for k, c in enumerate(cols)}
    dense = []
    for r in rows:
        row = [0] * len(cols)
        for c, v in r.items():
            row[pos[c]] = v
        dense.append(row)
    return dense, len(cols)


def _dense_rank(a, ncols):
    rank = 0
    m = len(a)
    for c in range(ncols):
        piv = None
        for i in range(rank, m):
            if a[i][c] and (piv is None or abs(a[i][c]) < abs(a[piv][c])):
                piv = i
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        prow = a[rank]
        p = prow[c]
        for i in range(rank + 1, m):
            x = a[i][c]
            if not x:
                continue
            g = gcd(p, x)
            mp, mx = p // g, x // g
            row = a[i]
            for j in range(c, ncols):
                row[j] = mp * row[j] - mx * prow[j]
            content = 0
            for v in row:
                content = gcd(content, v)
            if content > 1:
                a[i] = [v // content for v in row]
        rank += 1
        if rank == m:
            break
    return rank


def rank_mod(rows, ncols, p):
    """Rank over Z/p of an integer matrix given by rows (p prime)."""
    a = []
    for r in rows:
        items = r.items() if isinstance(r, dict) else enumerate(r)
        row = [0] * ncols
        for c, v in items:
            row[c] = v % p
        a.append(row)
    rank, m = 0, len(a)
    for c in range(ncols):
        piv = next((i for i in range(rank, m) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        inv = pow(a[rank][c], p - 2, p)
        prow = a[rank] = [v * inv % p for v in a[rank]]
        for i in range(rank + 1, m):
            x = a[i][c]
            if x:
                row = a[i]
                for j in range(c, ncols):
                    row[j] = (row[j] - x * prow[j]) % p
        rank += 1
        if rank == m:
            break
    return rank


def _dense_smith(a, ncols):
    m, n = len(a), ncols
    diag = []
    t = 0
    while t < m and t < n:
        piv = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (piv is None or abs(v) < piv[0]):
                    piv = (abs(v), i, j)
                    if piv[0] == 1:
                        break
            if piv is not None and piv[0] == 1:
                break
        if piv is None:
            break
        _, i0, j0 = piv
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            p = a[t][t]
            clean = True
            for i in range(t + 1, m):
                x = a[i][t]
                if x:
                    q = x // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, n):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        clean = False
            for j in range(t + 1, n):
                x = a[t][j]
                if x:
                    q = x // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if a[t][j]:
                        clean = False
            if not clean:
                best = (abs(p), t, t)
                for i in range(t + 1, m):
                    if a[i][t] and abs(a[i][t]) < best[0]:
                        best = (abs(a[i][t]), i, t)
                for j in range(t + 1, n):
                    if a[t][j] and abs(a[t][j]) < best[0]:
                        best = (abs(a[t][j]), t, j)
                _, bi, bj = best
                a[t], a[bi] = a[bi], a[t]
                for row in a:
                    row[t], row[bj] = row[bj], row[t]
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            rt, rb = a[t], a[bad]
            for j in range(t, n):
                rt[j] += rb[j]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def integer_rank(rows, ncols):
    """Rank over the rationals of an integer matrix given by rows."""
    units, rest = _strip_unit_pivots(_sparse_rows(rows))
    if not rest:
        return units
    dense, n = _densify(rest)
    return units + _dense_rank(dense, n)


def smith_invariants(rows, ncols):
    """Nonzero invariant factors of an integer matrix, in divisibility order."""
    units, rest = _strip_unit_pivots(_sparse_rows(rows))
    diag = [1] * units
    if rest:
        dense, n = _densify(rest)
        diag.extend(_dense_smith(dense, n))
    return sorted(diag)
