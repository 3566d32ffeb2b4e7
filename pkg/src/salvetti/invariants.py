"""Euler characteristic, Betti numbers, H1 torsion and fundamental-group presentations."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass

from . import kernels


def euler_characteristic(k):
    return sum((-1) ** d * n for d, n in enumerate(k.f_vector))


def boundary_matrix(k, d):
    """Rows of the boundary map from d-simplices to (d-1)-simplices, as {column: sign}."""
    if d <= 0 or d > k.dimension:
        return [], len(k.faces[d - 1]) if 0 < d <= k.dimension + 1 else 0
    lower = {s: i for i, s in enumerate(k.faces[d - 1])}
    rows = []
    for s in k.faces[d]:
        row = {}
        for j in range(len(s)):
            row[lower[s[:j] + s[j + 1 :]]] = -1 if j % 2 else 1
        rows.append(row)
    return rows, len(lower)


def boundary_ranks(k):
    """rank of the boundary map out of dimension d, for d = 0 .. dim + 1."""
    ranks = [0]
    for d in range(1, k.dimension + 1):
        rows, ncols = boundary_matrix(k, d)
        ranks.append(kernels.integer_rank(rows, ncols))
    ranks.append(0)
    return ranks


def betti_numbers(k):
    """Rational Betti numbers b_0 .. b_dim."""
    f = k.f_vector
    r = boundary_ranks(k)
    return [f[d] - r[d] - r[d + 1] for d in range(len(f))]


def h1_torsion(k):
    """Torsion coefficients of integral H1: invariant factors of d2 greater than 1."""
    if k.dimension < 2:
        return []
    rows, ncols = boundary_matrix(k, 2)
    return [x for x in kernels.smith_invariants(rows, ncols) if x > 1]


@dataclass
class HomologySummary:
    betti: list
    h1_factors: list

    def to_dict(self):
        return {"betti": list(self.betti), "h1_factors": list(self.h1_factors)}

    def to_json(self):
        return json.dumps(self.to_dict())


def homology(k):
    return HomologySummary(betti_numbers(k), h1_torsion(k))


def _reduce(word):
    out = []
    for letter in word:
        if out and out[-1][0] == letter[0] and out[-1][1] == -letter[1]:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


@dataclass
class GroupPresentation:
    generators: list
    relators: list

    def __post_init__(self):
        known = set(self.generators)
        for r in self.relators:
            for g, x in r:
                if g not in known or x not in (1, -1):
                    raise ValueError(f"bad relator letter {(g, x)}")
            if _reduce(r) != tuple(r):
                raise ValueError("relators must be freely reduced")

    def to_text(self):
        lines = ["gens: " + " ".join(self.generators)]
        for r in self.relators:
            lines.append("rel: " + " ".join(g if x == 1 else f"{g}^-1" for g, x in r))
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {
            "generators": list(self.generators),
            "relators": [[[g, x] for g, x in r] for r in self.relators],
        }


def spanning_forest(graph):
    """Tree edges of a BFS forest, rooted at the least vertex of each component.

    Edges are treated as undirected and scanned in index order.
    """
    adj = [[] for _ in graph.vertices]
    for k, (s, t) in enumerate(graph.edges):
        adj[s].append((k, t))
        adj[t].append((k, s))
    seen = [False] * len(graph.vertices)
    tree = set()
    for root in range(len(graph.vertices)):
        if seen[root]:
            continue
        seen[root] = True
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for k, w in sorted(adj[u]):
                if not seen[w]:
                    seen[w] = True
                    tree.add(k)
                    queue.append(w)
    return tree


def pi1_presentation(cover, cells):
    """Generators: non-tree cover edges.  Relators: one per 2-cell boundary pair.

    Each relator is the first boundary path followed by the inverse of the
    second, with tree edges dropped and the word freely reduced; relators
    that reduce to the empty word are omitted.
    """
    g = cover.graph
    zero = sorted(c.vertex for c in cells if c.dim == 0)
    one = sorted(c.edge for c in cells if c.dim == 1)
    if zero != list(range(len(g.vertices))) or one != list(range(len(g.edges))):
        raise ValueError("cells are inconsistent with the cover graph")
    tree = spanning_forest(g)
    gens = [f"e{k}" for k in range(len(g.edges)) if k not in tree]
    relators = []
    for c in cells:
        if c.dim != 2:
            continue
        first, second = c.boundary
        loop = g.concat(first, g.inverse(second))
        word = _reduce(tuple((f"e{k}", x) for k, x in loop.steps if k not in tree))
        if word:
            relators.append(word)
    return GroupPresentation(gens, relators)


@dataclass
class Abelianization:
    free_rank: int
    torsion: list

    def to_dict(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def abelianization(presentation):
    """Free rank and torsion factors from the Smith form of the exponent-sum matrix."""
    col = {g: i for i, g in enumerate(presentation.generators)}
    rows = []
    for r in presentation.relators:
        row = {}
        for g, x in r:
            row[col[g]] = row.get(col[g], 0) + x
        rows.append({j: v for j, v in row.items() if v})
    factors = kernels.smith_invariants(rows, len(col))
    return Abelianization(len(col) - len(factors), [x for x in factors if x > 1])


def parse_presentation(text):
    gens, rels = None, []
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        letters = rest.split()
        if key == "gens":
            gens = letters
        elif key == "rel":
            rels.append(tuple((t[:-3], -1) if t.endswith("^-1") else (t, 1) for t in letters))
        else:
            raise ValueError(f"unexpected line {line!r}")
    if gens is None:
        raise ValueError("missing gens line")
    return GroupPresentation(gens, rels)


__all__ = [
    "Abelianization",
    "GroupPresentation",
    "HomologySummary",
    "abelianization",
    "betti_numbers",
    "boundary_matrix",
    "boundary_ranks",
    "euler_characteristic",
    "h1_torsion",
    "homology",
    "parse_presentation",
    "pi1_presentation",
    "spanning_forest",
]
