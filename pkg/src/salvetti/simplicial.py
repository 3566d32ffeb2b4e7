"""Finite abstract simplicial complexes and simplicial maps."""

from __future__ import annotations

import json
from collections import defaultdict
from functools import cached_property
from itertools import combinations


class ComplexError(ValueError):
    pass


def _maximal_only(simplices):
    simplices = {tuple(sorted(s)) for s in simplices}
    proper = set()
    for s in simplices:
        for k in range(1, len(s)):
            proper.update(combinations(s, k))
    return sorted(s for s in simplices if s not in proper)


class SimplicialComplex:
    """Vertices plus maximal simplices given as sorted vertex-index tuples."""

    def __init__(self, vertices, maximal_simplices):
        self.vertices = list(vertices)
        self.maximal_simplices = _maximal_only(maximal_simplices)
        self._index = {v: i for i, v in enumerate(self.vertices)}
        used = {v for s in self.maximal_simplices for v in s}
        if used != set(range(len(self.vertices))):
            raise ComplexError("every vertex must lie in some simplex")

    def __repr__(self):
        return f"SimplicialComplex({len(self.vertices)} vertices, f={self.f_vector})"

    def index(self, label):
        return self._index[label]

    @cached_property
    def dimension(self):
        return max((len(s) - 1 for s in self.maximal_simplices), default=-1)

    @cached_property
    def faces(self):
        """All simplices, grouped by dimension, each list sorted."""
        by_dim = defaultdict(set)
        for s in self.maximal_simplices:
            for k in range(1, len(s) + 1):
                by_dim[k - 1].update(combinations(s, k))
        return [sorted(by_dim[d]) for d in range(self.dimension + 1)]

    @cached_property
    def simplex_set(self):
        return {s for layer in self.faces for s in layer}

    @property
    def f_vector(self):
        return [len(layer) for layer in self.faces]

    def star(self, v):
        """Maximal simplices of the closed star of vertex v."""
        return self._stars[v]

    @cached_property
    def _stars(self):
        stars = [[] for _ in self.vertices]
        for s in self.maximal_simplices:
            for v in s:
                stars[v].append(s)
        return stars

    @cached_property
    def components(self):
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for s in self.maximal_simplices:
            r = find(s[0])
            for v in s[1:]:
                parent[find(v)] = r
        groups = defaultdict(list)
        for v in range(len(self.vertices)):
            groups[find(v)].append(v)
        return sorted(groups.values())

    def induced(self, vertex_indices):
        """Subcomplex of all simplices with vertices in the given set."""
        keep = sorted(set(vertex_indices))
        pos = {v: i for i, v in enumerate(keep)}
        simplices = []
        for s in self.maximal_simplices:
            t = tuple(pos[v] for v in s if v in pos)
            if t:
                simplices.append(t)
        return SimplicialComplex([self.vertices[v] for v in keep], simplices)

    def without(self, simplex):
        """Copy with one maximal simplex removed (its faces may stay)."""
        simplex = tuple(sorted(simplex))
        rest = [s for s in self.maximal_simplices if s != simplex]
        if len(rest) == len(self.maximal_simplices):
            raise ComplexError("not a maximal simplex")
        faces = set(rest)
        for k in range(1, len(simplex)):
            faces.update(combinations(simplex, k))
        used = {v for s in faces for v in s}
        return SimplicialComplex(self.vertices, list(faces) + [(v,) for v in range(len(self.vertices)) if v not in used])

    def to_dict(self, label=str):
        return {
            "vertices": [label(v) for v in self.vertices],
            "maximal_simplices": [list(s) for s in self.maximal_simplices],
        }

    def to_json(self, label=str):
        return json.dumps(self.to_dict(label))


class SimplicialMap:
    def __init__(self, source, target, vertex_map):
        self.source = source
        self.target = target
        self.vertex_map = tuple(vertex_map)
        if len(self.vertex_map) != len(source.vertices):
            raise ComplexError("vertex map must be total on the source")

    def image(self, simplex):
        return tuple(sorted({self.vertex_map[v] for v in simplex}))

    def non_simplicial_witness(self):
        """A source simplex whose image is not a target simplex, or None."""
        for s in self.source.maximal_simplices:
            if self.image(s) not in self.target.simplex_set:
                return s
        return None

    def is_simplicial(self):
        return self.non_simplicial_witness() is None

    def to_dict(self, label=str):
        return {
            "source_vertices": [label(v) for v in self.source.vertices],
            "target_vertices": [label(v) for v in self.target.vertices],
            "vertex_map": list(self.vertex_map),
        }
