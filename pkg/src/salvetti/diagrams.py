"""Diagrams of finite posets over the face poset and their poset limits."""

from __future__ import annotations

from .covers import LiftError
from .poset import FinitePoset, PosetError, bits
from .simplicial import SimplicialComplex


class DiagramError(ValueError):
    pass


class PosetDiagram:
    """Index poset, one finite poset per index element, monotone maps.

    ``maps[(p, q)]`` is defined for every strict relation ``p > q`` of the
    index poset and lists, for each element of ``spaces[p]``, its image in
    ``spaces[q]``.
    """

    def __init__(self, index, spaces, maps, check=True):
        self.index = index
        self.spaces = list(spaces)
        self.maps = dict(maps)
        if len(self.spaces) != len(index):
            raise DiagramError("one space per index element required")
        for p in range(len(index)):
            for q in bits(index.down[p] & ~(1 << p)):
                if (p, q) not in self.maps:
                    raise DiagramError(f"missing map for {index.elements[p]} > {index.elements[q]}")
        if check:
            self.check()

    def __repr__(self):
        return f"PosetDiagram(index={len(self.index)}, total={sum(len(s) for s in self.spaces)})"

    def map(self, p, q):
        if p == q:
            return tuple(range(len(self.spaces[p])))
        return self.maps[(p, q)]

    def check(self):
        """Monotonicity of every map and functoriality on every chain p > q > r."""
        idx = self.index
        for (p, q), f in self.maps.items():
            src, dst = self.spaces[p], self.spaces[q]
            if len(f) != len(src):
                raise DiagramError(f"map {p}>{q} is not total")
            for a in range(len(src)):
                for b in bits(src.down[a]):
                    if not dst.leq(f[b], f[a]):
                        raise DiagramError(f"map {p}>{q} is not monotone")
        for p in range(len(idx)):
            for q in bits(idx.down[p] & ~(1 << p)):
                fpq = self.maps[(p, q)]
                for r in bits(idx.down[q] & ~(1 << q)):
                    fqr, fpr = self.maps[(q, r)], self.maps[(p, r)]
                    for x in range(len(self.spaces[p])):
                        if fpr[x] != fqr[fpq[x]]:
                            raise DiagramError(
                                "functoriality fails at "
                                f"{idx.elements[p]} > {idx.elements[q]} > {idx.elements[r]}"
                            )

    @classmethod
    def from_function(cls, index, spaces, image, check=True):
        """Maps from ``image(p, q, x) -> y`` on element indices."""
        maps = {}
        for p in range(len(index)):
            for q in bits(index.down[p] & ~(1 << p)):
                maps[(p, q)] = tuple(image(p, q, x) for x in range(len(spaces[p])))
        return cls(index, spaces, maps, check=check)

    def restrict(self, indices):
        """Diagram induced on a subset of the index poset."""
        indices = list(indices)
        pos = {old: new for new, old in enumerate(indices)}
        sub = self.index.subposet(indices)
        maps = {(pos[p], pos[q]): f for (p, q), f in self.maps.items() if p in pos and q in pos}
        return PosetDiagram(sub, [self.spaces[i] for i in indices], maps, check=False)


def plim(diagram):
    """Poset limit: pairs (p, q) with (p1,q1) >= (p2,q2) iff p1 >= p2 and f(q1) >= q2."""
    idx = diagram.index
    offsets = []
    elements = []
    for p, space in enumerate(diagram.spaces):
        offsets.append(len(elements))
        elements.extend((idx.elements[p], q) for q in space.elements)
    down = []
    for p1, space in enumerate(diagram.spaces):
        for q1 in range(len(space)):
            m = 0
            for p2 in bits(idx.down[p1]):
                target = diagram.map(p1, p2)[q1]
                m |= diagram.spaces[p2].down[target] << offsets[p2]
            down.append(m)
    return FinitePoset(elements, down, check=False)


def order_complex(poset):
    """Simplices are the chains of the poset."""
    return SimplicialComplex(poset.elements, [tuple(sorted(c)) for c in poset.maximal_chains()])


def diagram_id(poset):
    """Chambers below each face, mapped by composition with the smaller face."""
    order = poset.order
    members = [poset.chambers_below(f) for f in range(len(poset))]
    spaces = [FinitePoset.antichain([str(poset.faces[c]) for c in m]) for m in members]
    where = [{c: k for k, c in enumerate(m)} for m in members]

    def image(p, q, x):
        return where[q][poset.compose_idx(q, members[p][x])]

    return PosetDiagram.from_function(order, spaces, image)


def diagram_rho(poset, cover):
    """Cover vertices over chambers below each face, mapped by lifted minimal paths.

    For partial covers only vertices whose whole cell lies in the cover are
    kept.
    """
    system = cover.base
    n = len(poset)
    chamber_of = [system.face_index(c) for c in cover.proj]

    def lift_or_none(v, chamber_face):
        try:
            return cover.lift_endpoint(v, system.vertex_of[chamber_face])
        except LiftError:
            return None

    members = []
    for f in range(n):
        below = poset.order.down[f]
        members.append([v for v in range(len(cover)) if below >> chamber_of[v] & 1])
    images = {}
    for f in range(n):
        for q in bits(poset.order.down[f] & ~(1 << f)):
            for v in members[f]:
                images[(f, q, v)] = lift_or_none(v, poset.compose_idx(q, chamber_of[v]))
    # drop elements whose images fall outside a partial cover, until stable
    changed = True
    while changed:
        changed = False
        alive = [set(m) for m in members]
        for f in range(n):
            keep = []
            for v in members[f]:
                ok = all(
                    images[(f, q, v)] in alive[q] for q in bits(poset.order.down[f] & ~(1 << f))
                )
                if ok:
                    keep.append(v)
                else:
                    changed = True
            members[f] = keep
    spaces = [FinitePoset.antichain([cover.vertices[v] for v in m]) for m in members]
    where = [{v: k for k, v in enumerate(m)} for m in members]

    def image(p, q, x):
        return where[q][images[(p, q, members[p][x])]]

    try:
        return PosetDiagram.from_function(poset.order, spaces, image)
    except DiagramError as exc:
        raise DiagramError(f"invalid cover: {exc}") from None


def mu_star(diagram):
    """Pull back along the map sending each chain of the index to its minimum."""
    idx = diagram.index
    chains = idx.chains()
    sets = [frozenset(c) for c in chains]
    labels = [tuple(idx.elements[i] for i in c) for c in chains]
    down = []
    for s in sets:
        m = 0
        for j, t in enumerate(sets):
            # sigma >= tau iff sigma is contained in tau
            if s <= t:
                m |= 1 << j
        down.append(m)
    sigma = FinitePoset(labels, down, check=False)
    minima = [c[-1] for c in chains]
    spaces = [diagram.spaces[m] for m in minima]

    def image(p, q, x):
        return diagram.map(minima[p], minima[q])[x]

    return PosetDiagram.from_function(sigma, spaces, image)


def diagram_falk(poset):
    """Over the opposite face poset: E(F) is Plim of D_id restricted below F.

    Maps are the inclusions E(F1) -> E(F2) for F1 <= F2.
    """
    did = diagram_id(poset)
    order = poset.order
    spaces = [plim(did.restrict(order.ideal(f))) for f in range(len(poset))]
    index = order.dual()

    def image(p, q, x):
        return spaces[q].index(spaces[p].elements[x])

    return PosetDiagram.from_function(index, spaces, image)


__all__ = [
    "DiagramError",
    "PosetDiagram",
    "PosetError",
    "diagram_falk",
    "diagram_id",
    "diagram_rho",
    "mu_star",
    "order_complex",
    "plim",
]
