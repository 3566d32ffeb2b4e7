"""Covers of the oriented system built from permutation deck labelings.

A labeling assigns to every directed edge of the chamber graph a permutation
of the sheets ``0..m-1``.  When the two boundary arcs of every codimension-2
cell act identically, lifting is compatible with path equivalence and the
labeling defines a cover.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations

from .arrangement import ArrangementError
from .oriented_system import OrientedGraph, Path


class DeckError(ValueError):
    pass


class LiftError(LookupError):
    """A lift leaves a partially materialized cover."""


def _invert(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


@dataclass(frozen=True)
class DeckLabeling:
    degree: int
    labels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.degree < 1:
            raise DeckError("degree must be positive")
        for k, p in enumerate(self.labels):
            if sorted(p) != list(range(self.degree)):
                raise DeckError(f"label of edge {k} is not a permutation of 0..{self.degree - 1}")

    @property
    def inverses(self):
        return tuple(_invert(p) for p in self.labels)

    def path_perm(self, graph, path):
        """Sheet permutation along a path: ``result[s]`` is the end sheet from s."""
        graph.walk(path)
        inv = None
        out = []
        for s in range(self.degree):
            for e, x in path.steps:
                if x == 1:
                    s = self.labels[e][s]
                else:
                    if inv is None:
                        inv = self.inverses
                    s = inv[e][s]
            out.append(s)
        return tuple(out)


def winding_labeling(system, k):
    """Every directed edge acts as the shift ``s -> s + 1 mod k``."""
    if k < 1:
        raise DeckError("k must be positive")
    shift = tuple((s + 1) % k for s in range(k))
    return DeckLabeling(k, tuple(shift for _ in system.graph.edges))


def crossing_labeling(system, k):
    """Crossing hyperplane i adds the i-th unit vector in (Z/k)^n.

    Sheets are the points of (Z/k)^n written in base k, digit i for
    hyperplane i.
    """
    if k < 1:
        raise DeckError("k must be positive")
    n = system.poset.n
    m = k**n
    labels = []
    for h in system.crossing:
        step = k**h
        perm = []
        for s in range(m):
            digit = (s // step) % k
            perm.append(s - digit * step + ((digit + 1) % k) * step)
        labels.append(tuple(perm))
    return DeckLabeling(m, tuple(labels))


def parse_deck_spec(spec, system, read_file=None):
    """``winding:k``, ``crossing:k`` or a path to a deck-labeling file."""
    kind, _, arg = spec.partition(":")
    if kind in ("winding", "crossing") and arg:
        try:
            k = int(arg)
        except ValueError:
            raise DeckError(f"malformed deck spec {spec!r}") from None
        maker = winding_labeling if kind == "winding" else crossing_labeling
        return maker(system, k)
    if read_file is None:
        raise DeckError(f"malformed deck spec {spec!r}")
    return parse_deck(read_file(spec), system)


def parse_deck(text, system):
    degree = None
    labels = {}
    g = system.graph
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if degree is None:
            if parts[0] != "deck" or len(parts) != 2:
                raise DeckError(f"line {lineno}: expected 'deck <m>' header")
            degree = int(parts[1])
            continue
        if parts[0] != "edge" or len(parts) < 4 or parts[3] != "perm":
            raise DeckError(f"line {lineno}: expected 'edge <src> <tgt> perm ...'")
        try:
            a = system.vertex(parts[1])
            b = system.vertex(parts[2])
        except ArrangementError as exc:
            raise DeckError(f"line {lineno}: {exc}") from None
        e = next((k for k in g.out_edges[a] if g.target(k) == b), None)
        if e is None:
            raise DeckError(f"line {lineno}: no edge {parts[1]} -> {parts[2]}")
        perm = tuple(int(p) for p in parts[4:])
        if len(perm) != degree:
            raise DeckError(f"line {lineno}: expected {degree} images")
        labels[e] = perm
    if degree is None:
        raise DeckError("missing deck header")
    missing = [k for k in range(len(g.edges)) if k not in labels]
    if missing:
        s, t = g.edges[missing[0]]
        raise DeckError(f"missing label for edge {g.vertices[s]} -> {g.vertices[t]}")
    return DeckLabeling(degree, tuple(labels[k] for k in range(len(g.edges))))


def format_deck(labeling, system):
    g = system.graph
    lines = [f"deck {labeling.degree}"]
    for k, (s, t) in enumerate(g.edges):
        perm = " ".join(str(p) for p in labeling.labels[k])
        lines.append(f"edge {g.vertices[s]} {g.vertices[t]} perm {perm}")
    return "\n".join(lines) + "\n"


@dataclass
class Violation:
    first: Path
    second: Path
    first_perm: tuple
    second_perm: tuple


@dataclass
class DeckReport:
    ok: bool
    checked: int
    violations: list = field(default_factory=list)

    def to_dict(self, system):
        return {
            "ok": self.ok,
            "checked": self.checked,
            "violations": [
                {
                    "first": system.format_path(v.first),
                    "second": system.format_path(v.second),
                    "first_perm": list(v.first_perm),
                    "second_perm": list(v.second_perm),
                }
                for v in self.violations
            ],
        }


def validate_deck(system, labeling, exhaustive=False):
    """Check that equivalent paths act identically on sheets.

    The boundary arcs of codimension-2 cells generate the relation, so they
    suffice; ``exhaustive`` additionally compares every pair of positive
    minimal paths with equal endpoints.
    """
    g = system.graph
    if len(labeling.labels) != len(g.edges):
        raise DeckError(f"expected {len(g.edges)} edge labels, got {len(labeling.labels)}")
    pairs = list(system.relation_generators())
    if exhaustive:
        nv = len(g.vertices)
        for a in range(nv):
            for b in range(nv):
                paths = system.positive_paths(a, b, len(system.separating(a, b)))
                pairs.extend(combinations(paths, 2))
    report = DeckReport(True, 0)
    for p, q in pairs:
        pp, qp = labeling.path_perm(g, p), labeling.path_perm(g, q)
        report.checked += 1
        if pp != qp:
            report.ok = False
            report.violations.append(Violation(p, q, pp, qp))
    return report


class CoverGraph:
    """A (possibly partial) cover of the chamber graph.

    ``proj[v]`` is the chamber under cover vertex v and every cover edge
    remembers the base edge it lies over.  Partial covers (balls in the
    universal cover) raise :class:`LiftError` when a lift leaves them.
    """

    def __init__(self, base, labels, proj, edges, degree=None, complete=True, exact=True):
        self.base = base
        self.proj = list(proj)
        self.graph = OrientedGraph(labels, [(s, t) for s, t, _ in edges])
        self.edge_base = [e for _, _, e in edges]
        self.degree = degree
        self.complete = complete
        self.exact = exact
        self._out = {}
        self._in = {}
        for k, (s, t, e) in enumerate(edges):
            if self.proj[s] != base.graph.source(e) or self.proj[t] != base.graph.target(e):
                raise DeckError(f"cover edge {k} does not lie over base edge {e}")
            if (s, e) in self._out or (t, e) in self._in:
                raise DeckError(f"path lifting is not unique at cover edge {k}")
            self._out[(s, e)] = k
            self._in[(t, e)] = k

    def __repr__(self):
        return f"CoverGraph({len(self.proj)} vertices, {len(self.edge_base)} edges)"

    @property
    def vertices(self):
        return self.graph.vertices

    def __len__(self):
        return len(self.proj)

    def step(self, v, e, x):
        """Cover edge over base edge e traversed with exponent x from v."""
        k = (self._out if x == 1 else self._in).get((v, e))
        if k is None:
            raise LiftError(f"no lift of step {(e, x)} at cover vertex {v}")
        return k

    def lift_path(self, v, path):
        if self.proj[v] != path.start:
            raise DeckError("basepoint mismatch: cover vertex does not lie over the path start")
        steps = []
        cur = v
        for e, x in path.steps:
            k = self.step(cur, e, x)
            steps.append((k, x))
            s, t = self.graph.edges[k]
            cur = t if x == 1 else s
        return Path(v, tuple(steps))

    def project_path(self, path):
        return Path(self.proj[path.start], tuple((self.edge_base[k], x) for k, x in path.steps))

    def lift_endpoint(self, v, chamber):
        """End of the lift at v of the minimal positive path rho(v) -> chamber."""
        c = self.base.vertex(chamber)
        return self.graph.end(self.lift_path(v, self.base.minimal_positive_path(self.proj[v], c)))

    def v_of(self, chamber, w):
        """The vertex over ``chamber`` whose minimal-path lift ends at w."""
        c = self.base.vertex(chamber)
        path = self.base.minimal_positive_path(c, self.proj[w])
        back = self.base.graph.inverse(path)
        return self.graph.end(self.lift_path(w, back))

    def fiber(self, chamber):
        c = self.base.vertex(chamber)
        return [v for v, p in enumerate(self.proj) if p == c]

    @property
    def components(self):
        """Connected components as sorted vertex lists, ordered by least vertex."""
        seen = [-1] * len(self.proj)
        comps = []
        nbrs = [[] for _ in self.proj]
        for s, t in self.graph.edges:
            nbrs[s].append(t)
            nbrs[t].append(s)
        for v in range(len(self.proj)):
            if seen[v] >= 0:
                continue
            comp = []
            seen[v] = len(comps)
            queue = deque([v])
            while queue:
                u = queue.popleft()
                comp.append(u)
                for w in nbrs[u]:
                    if seen[w] < 0:
                        seen[w] = len(comps)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def component_fibers(self):
        """Per component, the number of its vertices over each base chamber."""
        out = []
        for comp in self.components:
            counts = defaultdict(int)
            for v in comp:
                counts[self.proj[v]] += 1
            out.append(dict(sorted(counts.items())))
        return out

    def summary(self):
        return {
            "vertices": len(self.proj),
            "edges": len(self.edge_base),
            "degree": self.degree,
            "components": len(self.components),
            "fibers": [sorted(set(c.values())) for c in self.component_fibers()],
            "complete": self.complete,
            "exact": self.exact,
        }


def build_cover(system, labeling):
    report = validate_deck(system, labeling)
    if not report.ok:
        raise DeckError(
            f"deck labeling violates {len(report.violations)} relation(s); refusing to build a cover"
        )
    m = labeling.degree
    g = system.graph
    labels = [(g.vertices[c], s) for c in range(len(g.vertices)) for s in range(m)]
    proj = [c for c in range(len(g.vertices)) for _ in range(m)]
    edges = []
    for e, (a, b) in enumerate(g.edges):
        perm = labeling.labels[e]
        for s in range(m):
            edges.append((a * m + s, b * m + perm[s], e))
    return CoverGraph(system, labels, proj, edges, degree=m)


def identity_cover(system):
    return build_cover(system, winding_labeling(system, 1))


def _word_str(g, word):
    if not word:
        return "1"
    return " ".join(f"e{e}" if x == 1 else f"e{e}^-1" for e, x in word)


def universal_cover_ball(system, radius, base=0):
    """Ball of the given radius in the universal cover, around ``base``.

    Vertices are freely reduced words.  Without codimension-2 faces the
    relation is generated by free reduction alone and the ball is exact.
    Otherwise words are additionally identified through the boundary-arc
    relations wherever both lifts stay in the ball, and the result is
    flagged as not exact.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    g = system.graph
    b = system.vertex(base)
    words = {(): b}
    frontier = [()]
    for _ in range(radius):
        nxt = []
        for w in frontier:
            u = words[w]
            moves = [(e, 1) for e in g.out_edges[u]] + [(e, -1) for e in g.in_edges[u]]
            for e, x in sorted(moves):
                if w and w[-1] == (e, -x):
                    continue
                t = g.target(e) if x == 1 else g.source(e)
                nw = w + ((e, x),)
                words[nw] = t
                nxt.append(nw)
        frontier = nxt
    order = sorted(words, key=lambda w: (len(w), w))
    pos = {w: i for i, w in enumerate(order)}
    raw_edges = []
    for w in order:
        u = words[w]
        for e in g.out_edges[u]:
            nw = w[:-1] if w and w[-1] == (e, -1) else w + ((e, 1),)
            if nw in pos:
                raw_edges.append((pos[w], pos[nw], e))
    proj = [words[w] for w in order]
    has_codim2 = any(f.codim == 2 for f in system.poset.faces)
    if not has_codim2:
        labels = [(g.vertices[words[w]], _word_str(g, w)) for w in order]
        return CoverGraph(system, labels, proj, raw_edges, complete=False, exact=True)

    parent = list(range(len(order)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x, y):
        x, y = find(x), find(y)
        if x == y:
            return False
        if y < x:
            x, y = y, x
        parent[y] = x
        return True

    gens = defaultdict(list)
    for p, q in system.relation_generators():
        gens[p.start].append((p, q))

    def walk(v, path, out, inn):
        for e, x in path.steps:
            v = (out if x == 1 else inn).get((v, e))
            if v is None:
                return None
        return v

    changed = True
    while changed:
        changed = False
        out, inn = {}, {}
        for s, t, e in raw_edges:
            s, t = find(s), find(t)
            if (s, e) in out and find(out[(s, e)]) != t:
                changed |= union(out[(s, e)], t)
            out.setdefault((s, e), t)
            if (t, e) in inn and find(inn[(t, e)]) != s:
                changed |= union(inn[(t, e)], s)
            inn.setdefault((t, e), s)
        if changed:
            continue
        for v in sorted({find(i) for i in range(len(order))}):
            for p, q in gens[proj[v]]:
                a, c = walk(v, p, out, inn), walk(v, q, out, inn)
                if a is not None and c is not None:
                    changed |= union(a, c)
    reps = sorted({find(i) for i in range(len(order))})
    new = {r: i for i, r in enumerate(reps)}
    edges = sorted({(new[find(s)], new[find(t)], e) for s, t, e in raw_edges}, key=lambda x: (x[2], x[0]))
    labels = [(g.vertices[proj[r]], _word_str(g, order[r])) for r in reps]
    return CoverGraph(system, labels, [proj[r] for r in reps], edges, complete=False, exact=False)
