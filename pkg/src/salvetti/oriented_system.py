"""Chamber graphs, positive minimal paths and the generators of path equivalence."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product

from .arrangement import ArrangementError, signs_to_str
from .poset import bits


class PathError(ValueError):
    pass


@dataclass(frozen=True)
class Path:
    """A path in an oriented graph: a start vertex and signed edge steps."""

    start: int
    steps: tuple[tuple[int, int], ...] = ()

    def __len__(self):
        return len(self.steps)

    @property
    def is_positive(self):
        return all(e == 1 for _, e in self.steps)


class OrientedGraph:
    def __init__(self, vertices, edges):
        self.vertices = list(vertices)
        self.edges = [tuple(e) for e in edges]
        self.out_edges = [[] for _ in self.vertices]
        self.in_edges = [[] for _ in self.vertices]
        pair = {}
        for k, (s, t) in enumerate(self.edges):
            self.out_edges[s].append(k)
            self.in_edges[t].append(k)
            pair.setdefault((s, t), k)
        self.opposite = [pair.get((t, s)) for s, t in self.edges]

    def __repr__(self):
        return f"OrientedGraph({len(self.vertices)} vertices, {len(self.edges)} edges)"

    def source(self, e):
        return self.edges[e][0]

    def target(self, e):
        return self.edges[e][1]

    def walk(self, path):
        """Vertex sequence of a path; raises PathError if steps do not chain."""
        verts = [path.start]
        cur = path.start
        for e, x in path.steps:
            s, t = self.edges[e]
            if x == 1 and s == cur:
                cur = t
            elif x == -1 and t == cur:
                cur = s
            else:
                raise PathError(f"step {(e, x)} does not start at vertex {cur}")
            verts.append(cur)
        return verts

    def end(self, path):
        return self.walk(path)[-1]

    def inverse(self, path):
        return Path(self.end(path), tuple((e, -x) for e, x in reversed(path.steps)))

    def concat(self, p, q):
        if self.end(p) != q.start:
            raise PathError("paths do not chain")
        return Path(p.start, p.steps + q.steps)

    def reduce(self, path):
        """Free reduction: cancel adjacent ``e e^-1`` pairs."""
        out = []
        for step in path.steps:
            if out and out[-1][0] == step[0] and out[-1][1] == -step[1]:
                out.pop()
            else:
                out.append(step)
        return Path(path.start, tuple(out))

    def positive_path(self, vertices):
        """The positive path visiting the given vertex sequence."""
        steps = []
        for a, b in zip(vertices, vertices[1:]):
            e = next((k for k in self.out_edges[a] if self.edges[k][1] == b), None)
            if e is None:
                raise PathError(f"no edge {a} -> {b}")
            steps.append((e, 1))
        return Path(vertices[0], tuple(steps))

    def to_dot(self, label=str, name="G"):
        lines = [f"digraph {name} {{"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{label(v)}"];')
        for s, t in self.edges:
            lines.append(f"  v{s} -> v{t};")
        lines.append("}")
        return "\n".join(lines)


class OrientedSystem:
    """The oriented system of an arrangement.

    Vertices are chambers (in face-poset order), with a pair of opposite
    edges between adjacent chambers.  Path equivalence identifies positive
    paths of minimal length with equal endpoints; it is kept intensionally
    through :meth:`relation_generators`.
    """

    relation_kind = "arrangement-minimal"

    def __init__(self, poset):
        self.poset = poset
        self.chamber_faces = list(poset.chamber_indices)
        self.vertex_of = {f: v for v, f in enumerate(self.chamber_faces)}
        signs = [poset.faces[f].signs for f in self.chamber_faces]
        self.signs = signs
        edges, crossing = [], []
        for a, b in product(range(len(signs)), repeat=2):
            diff = [i for i, (x, y) in enumerate(zip(signs[a], signs[b])) if x != y]
            if len(diff) == 1:
                edges.append((a, b))
                crossing.append(diff[0])
        self.graph = OrientedGraph([signs_to_str(s) for s in signs], edges)
        self.crossing = crossing
        self._paths = {}

    def __repr__(self):
        return f"OrientedSystem({self.graph!r})"

    def vertex(self, chamber):
        """Graph vertex of a chamber given as vertex index, Face or sign string."""
        if isinstance(chamber, int):
            return chamber
        f = self.poset.idx(chamber)
        if f not in self.vertex_of:
            raise ArrangementError(f"{self.poset.faces[f]} is not a chamber")
        return self.vertex_of[f]

    def face_index(self, v):
        return self.chamber_faces[v]

    def separating(self, a, b):
        return frozenset(i for i, (x, y) in enumerate(zip(self.signs[a], self.signs[b])) if x != y)

    def minimal_positive_path(self, c1, c2):
        """Canonical positive minimal path: BFS inside the gallery interval.

        Only chambers D with S(c1, D) contained in S(c1, c2) are visited and
        ties go to the smallest chamber index.
        """
        a, b = self.vertex(c1), self.vertex(c2)
        key = (a, b)
        if key not in self._paths:
            self._paths[key] = self._bfs_path(a, b)
        return self._paths[key]

    def _bfs_path(self, a, b):
        target = self.separating(a, b)
        parent = {a: None}
        queue = deque([a])
        while queue and b not in parent:
            u = queue.popleft()
            for e in sorted(self.graph.out_edges[u], key=self.graph.target):
                w = self.graph.target(e)
                if w not in parent and self.separating(a, w) <= target:
                    parent[w] = e
                    queue.append(w)
        steps = []
        cur = b
        while parent[cur] is not None:
            e = parent[cur]
            steps.append((e, 1))
            cur = self.graph.source(e)
        return Path(a, tuple(reversed(steps)))

    def is_positive_minimal(self, path):
        verts = self.graph.walk(path)
        return path.is_positive and len(path) == len(self.separating(verts[0], verts[-1]))

    def opposite(self, face, v):
        return self.vertex(self.poset.opposite_chamber(face, self.chamber_faces[v]))

    def boundary_arcs(self, face, c):
        """The two positive minimal paths from c to its opposite around ``face``.

        Both stay among chambers below the codimension-2 face; the first one
        leaves c through its smaller-index neighbour.
        """
        f = self.poset.idx(face)
        a = self.vertex(c)
        local = {self.vertex_of[i] for i in bits(self.poset.order.down[f] & self.poset.chamber_mask)}
        if a not in local:
            raise ArrangementError("chamber is not below the face")
        goal = self.opposite(f, a)
        arcs = []
        for first in sorted(self.graph.target(e) for e in self.graph.out_edges[a]):
            if first not in local:
                continue
            verts = [a, first]
            while verts[-1] != goal:
                nxt = [
                    self.graph.target(e)
                    for e in self.graph.out_edges[verts[-1]]
                    if self.graph.target(e) in local and self.graph.target(e) != verts[-2]
                ]
                verts.append(min(nxt))
            arcs.append(self.graph.positive_path(verts))
        return tuple(arcs)

    def relation_generators(self):
        """Pairs of boundary arcs, one pair per (codim-2 face, chamber below it)."""
        out = []
        for f, face in enumerate(self.poset.faces):
            if face.codim != 2:
                continue
            for ci in self.poset.chambers_below(f):
                out.append(self.boundary_arcs(f, self.vertex_of[ci]))
        return out

    def factor_via_chamber(self, c1, c2, face):
        """Split the minimal path c1 -> c2 at ``face o c1`` (requires c2 <= face)."""
        a, b = self.vertex(c1), self.vertex(c2)
        f = self.poset.idx(face)
        if not self.poset.order.geq(f, self.chamber_faces[b]):
            raise ArrangementError("target chamber is not below the face")
        mid = self.vertex_of[self.poset.compose_idx(f, self.chamber_faces[a])]
        return self.minimal_positive_path(a, mid), self.minimal_positive_path(mid, b)

    def substitution_classes(self, a, b):
        """Classes of positive minimal paths a -> b under generator substitution.

        Two paths are adjacent when one arises from the other by replacing a
        contiguous boundary arc with its partner arc.
        """
        a, b = self.vertex(a), self.vertex(b)
        paths = [tuple(e for e, _ in p.steps) for p in self.positive_paths(a, b, len(self.separating(a, b)))]
        arcs = []
        for p, q in self.relation_generators():
            x, y = tuple(e for e, _ in p.steps), tuple(e for e, _ in q.steps)
            arcs.extend([(x, y), (y, x)])
        known = set(paths)
        parent = {p: p for p in paths}

        def find(p):
            while parent[p] != p:
                parent[p] = parent[parent[p]]
                p = parent[p]
            return p

        for p in paths:
            for x, y in arcs:
                k = len(x)
                for i in range(len(p) - k + 1):
                    if p[i : i + k] == x:
                        q = p[:i] + y + p[i + k :]
                        if q in known:
                            parent[find(q)] = find(p)
        classes = {}
        for p in paths:
            classes.setdefault(find(p), []).append(Path(a, tuple((e, 1) for e in p)))
        return sorted(classes.values(), key=lambda c: c[0].steps)

    def format_path(self, path):
        return " ".join(self.graph.vertices[v] for v in self.graph.walk(path))

    def positive_paths(self, a, b, length):
        """All positive paths of exactly ``length`` steps from a to b (brute force)."""
        out = []

        def walk(cur, steps):
            if len(steps) == length:
                if cur == b:
                    out.append(Path(a, tuple(steps)))
                return
            for e in self.graph.out_edges[cur]:
                steps.append((e, 1))
                walk(self.graph.target(e), steps)
                steps.pop()

        walk(a, [])
        return out


def gamma_of(poset):
    return OrientedSystem(poset)
