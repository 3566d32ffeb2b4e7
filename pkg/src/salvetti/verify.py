"""Property suite over one arrangement and, optionally, one deck labeling.

Every check returns a :class:`Check` with a serialisable witness on
failure.  The geometric oracle for order and composition moves a sample
point of F1 a short exact step towards a sample point of F2 and reads off
the signs.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import enumerate_faces_bruteforce, intersection_poset
from .covers import build_cover, identity_cover, validate_deck
from .diagrams import diagram_falk, diagram_id, mu_star, order_complex, plim
from .invariants import (
    abelianization,
    betti_numbers,
    euler_characteristic,
    homology,
    pi1_presentation,
)
from .model import build_model, cell_counts, iso_check, salvetti_direct, verify_covering
from .oriented_system import OrientedSystem
from .poset import bits


@dataclass
class Check:
    name: str
    ok: bool
    witness: object = None

    def line(self):
        if self.ok:
            return f"PASS {self.name}"
        return f"FAIL {self.name}: {self.witness}"


def step_towards(arrangement, p, q):
    """A point on the open segment from p towards q, past no hyperplane that misses p."""
    eps = Fraction(1)
    for h in arrangement.hyperplanes:
        a, b = h.value(p), h.value(q)
        if a != 0 and a * b < 0:
            eps = min(eps, abs(a) / (abs(a) + abs(b)))
    eps /= 2
    return tuple(x + eps * (y - x) for x, y in zip(p, q))


def _first(items):
    return next(iter(items), None)


def arrangement_checks(poset, exhaustive=False):
    A = poset.arrangement
    faces = poset.faces
    n = len(faces)
    out = []
    try:
        poset.order.validate()
        out.append(Check("faces.partial_order", True))
    except Exception as exc:
        out.append(Check("faces.partial_order", False, str(exc)))
    bad = _first(str(f) for f, x in zip(faces, poset.points) if A.signs_at(x) != f.signs)
    out.append(Check("faces.sample_points_realize", bad is None, bad))
    minimal = {poset.order.elements[i] for i in poset.order.minimal}
    chambers = {str(f) for f in faces if f.is_chamber}
    out.append(Check("faces.chambers_are_minimal", minimal == chambers, sorted(minimal ^ chambers)))
    bad = None
    for i in range(n):
        for j in range(n):
            moved = A.signs_at(step_towards(A, poset.points[i], poset.points[j]))
            geometric = moved == faces[j].signs
            if geometric != poset.order.geq(i, j) or moved != poset.compose(i, j).signs:
                bad = (str(faces[i]), str(faces[j]))
                break
        if bad:
            break
    out.append(Check("faces.order_and_compose_match_geometry", bad is None, bad))
    bad1 = bad2 = bad3 = badop = None
    chambers_idx = poset.chamber_indices
    for i in range(n):
        for j in bits(poset.order.down[i]):
            if bad1 is None and poset.compose_idx(i, j) != j:
                bad1 = (str(faces[i]), str(faces[j]))
            for c in chambers_idx:
                if bad3 is None and poset.compose_idx(j, poset.compose_idx(i, c)) != poset.compose_idx(j, c):
                    bad3 = (str(faces[i]), str(faces[j]), str(faces[c]))
        for c in chambers_idx:
            if bad2 is None and not faces[poset.compose_idx(i, c)].is_chamber:
                bad2 = (str(faces[i]), str(faces[c]))
        for c in poset.chambers_below(i):
            opp = poset.opposite_chamber(i, c)
            if badop is None and (poset.opposite_chamber(i, opp) != faces[c] or not poset.geq(i, opp)):
                badop = (str(faces[i]), str(faces[c]))
    out.append(Check("compose.law1", bad1 is None, bad1))
    out.append(Check("compose.law2", bad2 is None, bad2))
    out.append(Check("compose.law3", bad3 is None, bad3))
    out.append(Check("opposite.involution", badop is None, badop))
    if exhaustive:
        brute = enumerate_faces_bruteforce(A)
        same = brute == [f.signs for f in faces]
        out.append(Check("faces.bruteforce_oracle", same, None if same else "face lists differ"))
    return out


def path_checks(system, exhaustive=False):
    out = []
    nv = len(system.graph.vertices)
    bad = None
    for a in range(nv):
        for b in range(nv):
            if not system.is_positive_minimal(system.minimal_positive_path(a, b)):
                bad = (system.graph.vertices[a], system.graph.vertices[b])
    out.append(Check("paths.minimal_are_positive_minimal", bad is None, bad))
    bad = None
    for p, q in system.relation_generators():
        g = system.graph
        ok = (
            p.start == q.start
            and g.end(p) == g.end(q)
            and system.is_positive_minimal(p)
            and system.is_positive_minimal(q)
            and p != q
        )
        if not ok:
            bad = (system.format_path(p), system.format_path(q))
    out.append(Check("paths.generator_pairs", bad is None, bad))
    bad = None
    poset = system.poset
    for a in range(nv):
        for b in range(nv):
            fb = system.face_index(b)
            for f in range(len(poset)):
                if not poset.order.geq(f, fb):
                    continue
                x, y = system.factor_via_chamber(a, b, f)
                if len(x) + len(y) != len(system.separating(a, b)):
                    bad = (system.graph.vertices[a], system.graph.vertices[b], str(poset.faces[f]))
    out.append(Check("paths.factor_additivity", bad is None, bad))
    if exhaustive or poset.n <= 3:
        bad = None
        for a in range(nv):
            for b in range(nv):
                classes = system.substitution_classes(a, b)
                if len(classes) != 1:
                    bad = [[system.format_path(p) for p in c] for c in classes]
        out.append(Check("paths.substitution_connected", bad is None, bad))
    return out


def cover_checks(system, labeling, exhaustive=False):
    out = []
    report = validate_deck(system, labeling, exhaustive=exhaustive)
    out.append(Check("deck.valid", report.ok, None if report.ok else report.to_dict(system)["violations"][:1]))
    if not report.ok:
        return out, None
    cover = build_cover(system, labeling)
    g = system.graph
    bad = None
    for v in range(len(cover)):
        for c in range(len(g.vertices)):
            path = system.minimal_positive_path(cover.proj[v], c)
            lift = cover.lift_path(v, path)
            if cover.project_path(lift) != path:
                bad = ("projection", cover.vertices[v])
            w = cover.graph.end(lift)
            if cover.v_of(cover.proj[v], w) != v:
                bad = ("v_of round trip", cover.vertices[v])
        for p, q in system.relation_generators():
            if p.start == cover.proj[v]:
                if cover.graph.end(cover.lift_path(v, p)) != cover.graph.end(cover.lift_path(v, q)):
                    bad = ("generator lifts differ", cover.vertices[v])
    out.append(Check("cover.lifting", bad is None, bad))
    bad = None
    for comp, fib in zip(cover.components, cover.component_fibers()):
        if len(fib) != len(g.vertices) or len(set(fib.values())) != 1:
            bad = fib
    out.append(Check("cover.constant_fibers", bad is None, bad))
    return out, cover


def diagram_checks(poset, heavy=True):
    out = []
    did = diagram_id(poset)
    lim = plim(did)
    try:
        lim.validate()
        out.append(Check("plim.valid_poset", True))
    except Exception as exc:
        out.append(Check("plim.valid_poset", False, str(exc)))
    bad = None
    for chain in lim.maximal_chains():
        top_face, top_chamber = lim.elements[chain[0]]
        for i in chain:
            face, chamber = lim.elements[i]
            if str(poset.compose(face, top_chamber)) != chamber:
                bad = [lim.elements[i] for i in chain]
    out.append(Check("plim.chain_chambers", bad is None, bad))
    w = order_complex(lim)
    ok, witness = iso_check(w, salvetti_direct(poset))
    out.append(Check("model.iso_salvetti_direct", ok, witness))
    if heavy:
        b = betti_numbers(w)
        bf = betti_numbers(order_complex(plim(diagram_falk(poset))))
        out.append(Check("diagrams.falk_betti", bf == b, {"falk": bf, "id": b}))
        bm = betti_numbers(order_complex(plim(mu_star(did))))
        out.append(Check("diagrams.mu_star_betti", bm == b, {"mu_star": bm, "id": b}))
    return out


def model_checks(poset, cover):
    out = []
    m = build_model(poset, cover)
    rep = verify_covering(m.lam)
    out.append(Check("model.covering", rep.ok, rep.witness))
    out.append(Check("model.vertex_quotient", m.vertex_quotient is True, m.vertex_quotient))
    cells = m.cells()
    counts = cell_counts(cells)
    chi_cells = sum((-1) ** d * c for d, c in enumerate(counts))
    chi = euler_characteristic(m.w_rho)
    out.append(Check("model.cell_euler", chi_cells == chi, {"cells": counts, "chi": chi}))
    edges = sorted(c.edge for c in cells if c.dim == 1)
    out.append(Check("model.one_cells_are_edges", edges == list(range(len(cover.graph.edges))), None))
    bad = None
    for c in cells:
        b = betti_numbers(c.subcomplex)
        if b != [1] + [0] * (len(b) - 1):
            bad = (c.label(cover), b)
            break
        if c.dim >= 1:
            top = c.subcomplex.index(m.plim.elements[c.element])
            rim = [v for v in range(len(c.subcomplex.vertices)) if v != top]
            sphere = betti_numbers(c.subcomplex.induced(rim))
            want = [2] if c.dim == 1 else [1] + [0] * (c.dim - 2) + [1]
            if sphere != want:
                bad = (c.label(cover), "boundary", sphere)
                break
    out.append(Check("model.cells_are_balls", bad is None, bad))
    if rep.ok:
        base_chi = euler_characteristic(m.w)
        bad = None
        for comp, k in zip(m.w_rho.components, _component_fibers(m)):
            sub = m.w_rho.induced(comp)
            if euler_characteristic(sub) != k * base_chi:
                bad = {"component_size": len(comp), "fiber": k}
        out.append(Check("model.euler_multiplicative", bad is None, bad))
    h = homology(m.w_rho)
    ab = abelianization(pi1_presentation(cover, cells))
    want = {"free_rank": h.betti[1] if len(h.betti) > 1 else 0, "torsion": h.h1_factors}
    out.append(Check("invariants.pi1_abelianization_is_h1", ab.to_dict() == want, {"pi1": ab.to_dict(), "h1": want}))
    return out


def _component_fibers(m):
    """Sheets per component of W_rho, read off over one base vertex."""
    out = []
    vmap = m.lam.vertex_map
    for comp in m.w_rho.components:
        y = vmap[comp[0]]
        out.append(sum(1 for v in comp if vmap[v] == y))
    return out


def invariant_checks(poset, w):
    out = []
    h = homology(w)
    chi = euler_characteristic(w)
    alt = sum((-1) ** d * b for d, b in enumerate(h.betti))
    out.append(Check("invariants.euler_from_betti", alt == chi, {"betti": h.betti, "chi": chi}))
    whitney = intersection_poset(poset.arrangement).whitney_numbers()
    out.append(Check("invariants.whitney_oracle", h.betti == whitney, {"betti": h.betti, "whitney": whitney}))
    return out


def run_checks(poset, labeling=None, exhaustive=False, heavy=True):
    system = OrientedSystem(poset)
    checks = arrangement_checks(poset, exhaustive)
    checks += path_checks(system, exhaustive)
    checks += diagram_checks(poset, heavy)
    if labeling is None:
        cover = identity_cover(system)
    else:
        more, cover = cover_checks(system, labeling, exhaustive)
        checks += more
    if cover is not None:
        checks += model_checks(poset, cover)
    checks += invariant_checks(poset, salvetti_direct(poset))
    return checks


__all__ = ["Check", "run_checks", "step_towards"]
