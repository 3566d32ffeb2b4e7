"""Simplicial models of arrangement complements and of their covers.

``W`` is the order complex of Plim D_id, ``W_rho`` that of Plim D_rho, and
``Lambda`` forgets the sheet of every vertex.  The Salvetti complex is also
built directly from chains of faces as an independent check.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field

from .covers import CoverGraph, identity_cover
from .diagrams import diagram_id, diagram_rho, order_complex, plim
from .oriented_system import OrientedSystem, Path
from .poset import bits
from .simplicial import ComplexError, SimplicialComplex, SimplicialMap


def salvetti_direct(poset):
    """Simplices Delta(phi, C): one per maximal face chain phi and chamber C below its top.

    Vertex i of Delta(phi, C) is (F_i, F_i o C), labeled by sign strings.
    """
    labels = {}
    simplices = []
    faces = poset.faces
    for chain in poset.order.maximal_chains():
        top = chain[0]
        for c in poset.chambers_below(top):
            simplex = []
            for f in chain:
                key = (str(faces[f]), str(faces[poset.compose_idx(f, c)]))
                simplex.append(labels.setdefault(key, len(labels)))
            simplices.append(simplex)
    # canonical vertex order: by face index, then chamber string
    order = sorted(labels, key=lambda k: (poset.idx(k[0]), k[1]))
    pos = {labels[k]: i for i, k in enumerate(order)}
    return SimplicialComplex(order, [[pos[v] for v in s] for s in simplices])


def iso_check(k1, k2, bijection=None):
    """Does the vertex bijection carry simplices of k1 exactly onto simplices of k2?

    ``bijection`` maps vertex labels of k1 to vertex labels of k2 and
    defaults to equality of labels.  Returns ``(ok, witness)`` where the
    witness is a maximal simplex (as labels) present on one side only.
    """
    if bijection is None:
        bijection = {v: v for v in k1.vertices}
    missing = [v for v in k1.vertices if v not in bijection]
    if missing:
        raise ValueError(f"bijection is not total: no image for {missing[0]!r}")
    images = [bijection[v] for v in k1.vertices]
    if len(set(images)) != len(images) or set(images) != set(k2.vertices):
        raise ValueError("vertex map is not a bijection onto the target vertices")
    vmap = [k2.index(b) for b in images]
    mapped = {tuple(sorted(vmap[v] for v in s)) for s in k1.maximal_simplices}
    target = set(k2.maximal_simplices)
    for s in k1.maximal_simplices:
        if tuple(sorted(vmap[v] for v in s)) not in target:
            return False, ("source", [k1.vertices[v] for v in s])
    for s in k2.maximal_simplices:
        if s not in mapped:
            return False, ("target", [k2.vertices[v] for v in s])
    return True, None


@dataclass
class CoveringMap:
    map: SimplicialMap
    fiber_size: list
    component_count: int
    stars_checked: int
    ok: bool
    witness: object = None

    def to_dict(self):
        fiber = self.fiber_size[0] if len(set(self.fiber_size)) == 1 else self.fiber_size
        return {
            "fiber": fiber,
            "components": self.component_count,
            "stars_checked": self.stars_checked,
            "ok": self.ok,
            "witness": self.witness,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), default=str)


def _labels(k, simplex):
    return [k.vertices[v] for v in simplex]


def verify_covering(lam):
    """Combinatorial covering test for a simplicial map.

    Checks surjectivity on vertices and maximal simplices, that the closed
    star of every source vertex maps isomorphically onto the closed star of
    its image, and that fibers have constant size over each target
    component.  Raises ComplexError if the map is not simplicial.
    """
    src, dst = lam.source, lam.target
    bad = lam.non_simplicial_witness()
    if bad is not None:
        raise ComplexError(f"map is not simplicial on {_labels(src, bad)}")
    vmap = lam.vertex_map
    ncomp = len(src.components)

    def result(ok, witness, checked, fibers=()):
        return CoveringMap(lam, list(fibers), ncomp, checked, ok, witness)

    hit = set(vmap)
    for y in range(len(dst.vertices)):
        if y not in hit:
            return result(False, {"reason": "vertex not covered", "vertex": dst.vertices[y]}, 0)
    images = {lam.image(s) for s in src.maximal_simplices}
    for s in dst.maximal_simplices:
        if s not in images:
            return result(False, {"reason": "simplex not covered", "simplex": _labels(dst, s)}, 0)
    checked = 0
    for x in range(len(src.vertices)):
        star = src.star(x)
        verts = {v for s in star for v in s}
        checked += 1
        if len({vmap[v] for v in verts}) != len(verts):
            return result(
                False,
                {
                    "reason": "star not injective",
                    "vertex": src.vertices[x],
                    "star": [_labels(src, s) for s in star],
                },
                checked,
            )
        if {lam.image(s) for s in star} != set(dst.star(vmap[x])):
            return result(
                False,
                {
                    "reason": "star image differs from target star",
                    "vertex": src.vertices[x],
                    "star": [_labels(src, s) for s in star],
                    "target_star": [_labels(dst, s) for s in dst.star(vmap[x])],
                },
                checked,
            )
    count = defaultdict(int)
    for y in vmap:
        count[y] += 1
    fibers = []
    for comp in dst.components:
        sizes = {count[y] for y in comp}
        if len(sizes) != 1:
            y = min(comp, key=lambda t: (count[t], t))
            return result(
                False,
                {"reason": "fiber size varies", "vertex": dst.vertices[y], "sizes": sorted(sizes)},
                checked,
            )
        fibers.append(sizes.pop())
    return result(True, None, checked, fibers)


@dataclass
class Model:
    poset: object
    cover: CoverGraph
    diagram: object
    plim: object
    w_rho: SimplicialComplex
    w: SimplicialComplex
    lam: SimplicialMap
    vertex_quotient: bool | None = None
    _cells: list | None = field(default=None, repr=False)

    @property
    def system(self):
        return self.cover.base

    def cells(self):
        if self._cells is None:
            self._cells = cw_cells(self)
        return self._cells


def _vertex_quotient(poset, cover, diagram):
    """(F, v) ~ (F, lift of v to F o rho(v)) has one class per element of Q_F."""
    system = cover.base
    for f in range(len(poset)):
        parent = list(range(len(cover)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v in range(len(cover)):
            c = poset.compose_idx(f, system.face_index(cover.proj[v]))
            w = cover.lift_endpoint(v, system.vertex_of[c])
            parent[find(v)] = find(w)
        reps = {}
        for v in range(len(cover)):
            if poset.order.geq(f, system.face_index(cover.proj[v])):
                r = find(v)
                if r in reps:
                    return False
                reps[r] = v
        if len(reps) != len({find(v) for v in range(len(cover))}):
            return False
        if sorted(cover.vertices[v] for v in reps.values()) != sorted(diagram.spaces[f].elements):
            return False
    return True


def build_model(poset, cover=None):
    """W_rho, W and the projection Lambda for a cover (identity cover by default)."""
    if cover is None:
        cover = identity_cover(OrientedSystem(poset))
    d = diagram_rho(poset, cover)
    lim = plim(d)
    w_rho = order_complex(lim)
    w = order_complex(plim(diagram_id(poset)))
    names = cover.base.graph.vertices
    vmap = [w.index((f, names[cover.proj[_vertex_index(cover, v)]])) for f, v in w_rho.vertices]
    lam = SimplicialMap(w_rho, w, vmap)
    quotient = _vertex_quotient(poset, cover, d) if cover.complete else None
    return Model(poset, cover, d, lim, w_rho, w, lam, quotient)


@dataclass
class CWCell:
    """The cell [F, v]: its subcomplex is the order complex below (F, v) in Plim D_rho."""

    face: object
    face_index: int
    vertex: int
    dim: int
    element: int
    subcomplex: SimplicialComplex
    edge: int | None = None
    boundary: tuple | None = None

    def label(self, cover):
        return (str(self.face), cover.vertices[self.vertex])


def _cell_edge(model, f, v):
    """Cover edge of the 1-cell [F, v]: leaves v across the hyperplane of F."""
    cover, system = model.cover, model.system
    (zero,) = model.poset.faces[f].zero_set
    c = cover.proj[v]
    for e in system.graph.out_edges[c]:
        if system.crossing[e] == zero:
            return cover.step(v, e, 1)
    raise ValueError("no edge crosses the hyperplane of a codimension-1 face")


def cell_boundary(model, cell):
    """The two positive boundary paths of a 2-cell, from its source to its sink.

    The first path leaves the source through its smaller-index neighbour.
    """
    if cell.dim != 2:
        raise ValueError("only 2-cells have a pair of boundary paths")
    poset, cover = model.poset, model.cover
    g = cover.graph
    d = model.diagram
    edges = []
    for gface in bits(poset.order.down[cell.face_index]):
        if poset.faces[gface].codim != 1:
            continue
        x = d.map(cell.face_index, gface)[d.spaces[cell.face_index].index(cover.vertices[cell.vertex])]
        w = _vertex_index(cover, d.spaces[gface].elements[x])
        edges.append(_cell_edge(model, gface, w))
    out = defaultdict(list)
    indeg = defaultdict(int)
    nodes = set()
    for k in edges:
        s, t = g.edges[k]
        out[s].append(k)
        indeg[t] += 1
        nodes.update((s, t))
    sources = [u for u in nodes if indeg[u] == 0]
    sinks = [u for u in nodes if not out[u]]
    if len(sources) != 1 or len(sinks) != 1:
        raise ValueError(f"2-cell boundary has {len(sources)} sources and {len(sinks)} sinks")
    src, sink = sources[0], sinks[0]
    paths = []
    for first in sorted(out[src], key=g.target):
        steps = [(first, 1)]
        cur = g.target(first)
        while cur != sink:
            (k,) = out[cur]
            steps.append((k, 1))
            cur = g.target(k)
        paths.append(Path(src, tuple(steps)))
    if len(paths) != 2:
        raise ValueError("2-cell source does not have exactly two outgoing boundary edges")
    return tuple(paths)


def _vertex_index(cover, label):
    idx = getattr(cover, "_label_index", None)
    if idx is None:
        idx = {v: i for i, v in enumerate(cover.vertices)}
        cover._label_index = idx
    return idx[label]


def cw_cells(model):
    """One cell per element (F, v) of Plim D_rho, of dimension codim F."""
    lim = model.plim
    poset = model.poset
    cells = []
    for i, (fstr, vlabel) in enumerate(lim.elements):
        f = poset.idx(fstr)
        face = poset.faces[f]
        v = _vertex_index(model.cover, vlabel)
        sub = order_complex(lim.subposet(list(bits(lim.down[i]))))
        cell = CWCell(face, f, v, face.codim, i, sub)
        if face.codim == 1:
            cell.edge = _cell_edge(model, f, v)
        cells.append(cell)
    for cell in cells:
        if cell.dim == 2:
            cell.boundary = cell_boundary(model, cell)
    return cells


def cell_counts(cells):
    counts = defaultdict(int)
    for c in cells:
        counts[c.dim] += 1
    return [counts[d] for d in range(max(counts, default=-1) + 1)]


__all__ = [
    "CWCell",
    "ComplexError",
    "CoveringMap",
    "Model",
    "SimplicialComplex",
    "SimplicialMap",
    "build_model",
    "cell_boundary",
    "cell_counts",
    "cw_cells",
    "iso_check",
    "salvetti_direct",
    "verify_covering",
]
