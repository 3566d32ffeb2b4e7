"""Exact feasibility of mixed equality / strict-inequality rational systems.

A row is a list of ``dim + 1`` Fractions ``[c_1, ..., c_d, c_0]`` standing for
the affine form ``c . x + c_0``.  Equalities ask the form to vanish, strict rows
ask it to be positive.  Equalities are eliminated by substitution, strict rows
by Fourier-Motzkin (strictness survives positive combinations), and a witness
point is rebuilt by back-substitution.
"""

from __future__ import annotations

from fractions import Fraction


def _normalize(row):
    # positive rescaling keeps strict inequalities equivalent
    scale = max((abs(v) for v in row[:-1]), default=0)
    if scale:
        row = [v / scale for v in row]
    return tuple(row)


def _eliminate_equalities(equalities, strict, dim):
    pivots = []
    eqs = [list(r) for r in equalities]
    strict = [list(r) for r in strict]
    while eqs:
        e = eqs.pop()
        j = next((k for k in range(dim) if e[k]), None)
        if j is None:
            if e[dim]:
                return None
            continue
        for group in (eqs, strict):
            for r in group:
                if r[j]:
                    f = r[j] / e[j]
                    for k in range(dim + 1):
                        r[k] -= f * e[k]
        pivots.append((j, e))
    return pivots, strict


def find_point(equalities, strict, dim):
    """Return a rational point satisfying the system, or None if infeasible.

    ``equalities`` rows must vanish and ``strict`` rows must be positive at
    the returned point.
    """
    reduced = _eliminate_equalities(equalities, strict, dim)
    if reduced is None:
        return None
    pivots, rows = reduced
    eliminated = {j for j, _ in pivots}
    free = [k for k in range(dim) if k not in eliminated]

    rows = list(dict.fromkeys(_normalize(r) for r in rows))
    stages = []
    for j in reversed(free):
        stages.append((j, rows))
        pos = [r for r in rows if r[j] > 0]
        neg = [r for r in rows if r[j] < 0]
        nxt = [r for r in rows if r[j] == 0]
        for p in pos:
            for q in neg:
                a, b = -q[j], p[j]
                nxt.append(_normalize([a * p[k] + b * q[k] for k in range(dim + 1)]))
        rows = list(dict.fromkeys(nxt))
    for r in rows:
        if r[dim] <= 0:
            return None

    x = [Fraction(0)] * dim
    for j, stage in reversed(stages):
        lo = hi = None
        for r in stage:
            if not r[j]:
                continue
            rest = r[dim] + sum(r[k] * x[k] for k in range(dim) if k != j)
            bound = -rest / r[j]
            if r[j] > 0:
                lo = bound if lo is None else max(lo, bound)
            else:
                hi = bound if hi is None else min(hi, bound)
        if lo is not None and hi is not None:
            x[j] = (lo + hi) / 2
        elif lo is not None:
            x[j] = lo + 1
        elif hi is not None:
            x[j] = hi - 1
        else:
            x[j] = Fraction(0)
    for j, e in reversed(pivots):
        rest = e[dim] + sum(e[k] * x[k] for k in range(dim) if k != j)
        x[j] = -rest / e[j]
    return tuple(x)


def is_feasible(equalities, strict, dim):
    return find_point(equalities, strict, dim) is not None
