"""Command-line front end.

Exit status: 0 success, 1 a verification failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arrangement import ArrangementError, enumerate_faces, load_arrangement
from .covers import DeckError, build_cover, parse_deck_spec, universal_cover_ball, validate_deck
from .diagrams import diagram_falk, diagram_id, order_complex, plim
from .invariants import abelianization, euler_characteristic, homology, pi1_presentation
from .model import build_model, cell_counts, iso_check, salvetti_direct, verify_covering
from .oriented_system import OrientedSystem
from .verify import run_checks

COMMANDS = ("faces", "salvetti", "cover", "model", "universal", "falk", "verify", "invariants")


class InputError(Exception):
    pass


class VerificationFailure(Exception):
    pass


def fmt(x):
    """Stable text form of a (possibly nested) label."""
    if isinstance(x, tuple):
        return "(" + ", ".join(fmt(y) for y in x) + ")"
    return str(x)


def _dump(obj):
    return json.dumps(obj, indent=2, default=fmt) + "\n"


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _complex_summary(k):
    return f"{len(k.vertices)} vertices, f-vector {k.f_vector}, chi {euler_characteristic(k)}"


def _cover(args, system):
    if args.deck is None:
        return None
    try:
        return parse_deck_spec(args.deck, system, read_file=_read)
    except DeckError as exc:
        raise InputError(str(exc)) from None


def cmd_faces(args, poset):
    if args.format == "json":
        return _dump(poset.to_dict()), 0
    if args.format == "dot":
        return poset.order.to_dot() + "\n", 0
    lines = [f"{len(poset)} faces, {len(poset.chamber_indices)} chambers"]
    for f in poset.faces:
        lines.append(f"face {str(f) or '()'} codim {f.codim}")
    for hi, lo in poset.order.covers:
        lines.append(f"cover {poset.faces[hi]} > {poset.faces[lo]}")
    return "\n".join(lines) + "\n", 0


def cmd_salvetti(args, poset):
    direct = salvetti_direct(poset)
    lim = plim(diagram_id(poset))
    model = order_complex(lim)
    ok, witness = iso_check(model, direct)
    status = 0 if ok else 1
    if args.format == "json":
        return _dump(
            {
                "salvetti": direct.to_dict(fmt),
                "plim_complex": model.to_dict(fmt),
                "iso_check": ok,
                "witness": witness,
            }
        ), status
    if args.format == "dot":
        return lim.to_dot(fmt) + "\n", status
    lines = [
        f"salvetti: {_complex_summary(direct)}",
        f"plim D_id: {_complex_summary(model)}",
        f"iso_check: {'true' if ok else 'false'}",
    ]
    if witness:
        lines.append(f"witness: {fmt(tuple(witness[1]))} only in {witness[0]}")
    return "\n".join(lines) + "\n", status


def cmd_cover(args, poset):
    system = OrientedSystem(poset)
    labeling = _cover(args, system)
    if labeling is None:
        raise InputError("cover needs --deck")
    report = validate_deck(system, labeling, exhaustive=args.exhaustive)
    if not report.ok:
        out = report.to_dict(system)
        if args.format == "json":
            return _dump({"deck": out}), 1
        v = out["violations"][0]
        return (
            f"deck labeling invalid: {len(out['violations'])} violation(s)\n"
            f"witness: [{v['first']}] -> {v['first_perm']} vs [{v['second']}] -> {v['second_perm']}\n"
        ), 1
    cover = build_cover(system, labeling)
    if args.format == "dot":
        return cover.graph.to_dot(fmt, "Theta") + "\n", 0
    summary = cover.summary()
    if args.format == "json":
        summary["deck"] = report.to_dict(system)
        return _dump(summary), 0
    lines = [
        f"cover: {summary['vertices']} vertices, {summary['edges']} edges, degree {summary['degree']}",
        f"components: {summary['components']}",
        f"fibers: {summary['fibers']}",
        f"relations checked: {report.checked}",
    ]
    return "\n".join(lines) + "\n", 0


def _model(args, poset):
    system = OrientedSystem(poset)
    labeling = _cover(args, system)
    if labeling is None:
        return build_model(poset)
    report = validate_deck(system, labeling)
    if not report.ok:
        v = report.to_dict(system)["violations"][0]
        raise VerificationFailure(f"deck labeling invalid: [{v['first']}] and [{v['second']}] act differently")
    return build_model(poset, build_cover(system, labeling))


def cmd_model(args, poset):
    if args.format == "dot":
        raise InputError("model has no dot output")
    m = _model(args, poset)
    rep = verify_covering(m.lam)
    status = 0 if rep.ok and m.vertex_quotient else 1
    if args.format == "json":
        return _dump(
            {
                "w_rho": m.w_rho.to_dict(fmt),
                "lambda": m.lam.to_dict(fmt),
                "covering": rep.to_dict(),
                "vertex_quotient": m.vertex_quotient,
            }
        ), status
    d = rep.to_dict()
    lines = [
        f"W_rho: {_complex_summary(m.w_rho)}",
        f"W: {_complex_summary(m.w)}",
        f"covering: {'ok' if rep.ok else 'FAILED'}, fiber {d['fiber']}, components {d['components']}, "
        f"stars checked {d['stars_checked']}",
        f"vertex quotient: {'ok' if m.vertex_quotient else 'FAILED'}",
    ]
    if rep.witness:
        lines.append(f"witness: {json.dumps(rep.witness, default=fmt)}")
    return "\n".join(lines) + "\n", status


def cmd_universal(args, poset):
    system = OrientedSystem(poset)
    if args.radius is None or args.radius < 0:
        raise InputError("universal needs --radius >= 0")
    ball = universal_cover_ball(system, args.radius)
    if args.format == "dot":
        return ball.graph.to_dot(fmt, "Ball") + "\n", 0
    m = build_model(poset, ball)
    lim = m.plim
    if args.format == "json":
        return _dump(
            {
                "exact": ball.exact,
                "vertices": [fmt(v) for v in ball.vertices],
                "edges": [[s, t] for s, t in ball.graph.edges],
                "plim": lim.to_dict(fmt),
                "betti": homology(m.w_rho).betti,
            }
        ), 0
    lines = [
        f"ball radius {args.radius}: {len(ball)} vertices, {len(ball.graph.edges)} edges, "
        f"exact {'true' if ball.exact else 'false'}",
    ]
    for s, t in ball.graph.edges:
        lines.append(f"edge {fmt(ball.vertices[s])} -> {fmt(ball.vertices[t])}")
    lines.append(f"plim D_rho: {len(lim)} elements, betti {homology(m.w_rho).betti}")
    for hi, lo in lim.covers:
        lines.append(f"cover {fmt(lim.elements[hi])} > {fmt(lim.elements[lo])}")
    return "\n".join(lines) + "\n", 0


def cmd_falk(args, poset):
    lim = plim(diagram_falk(poset))
    if args.format == "dot":
        return lim.to_dot(fmt) + "\n", 0
    b_falk = homology(order_complex(lim)).betti
    b_id = homology(order_complex(plim(diagram_id(poset)))).betti
    status = 0 if b_falk == b_id else 1
    if args.format == "json":
        return _dump({"plim": lim.to_dict(fmt), "betti_falk": b_falk, "betti_id": b_id, "equal": not status}), status
    lines = [
        f"plim E: {len(lim)} elements",
        f"betti E: {b_falk}",
        f"betti D_id: {b_id}",
        f"equal: {'true' if not status else 'false'}",
    ]
    return "\n".join(lines) + "\n", status


def cmd_verify(args, poset):
    if args.format == "dot":
        raise InputError("verify has no dot output")
    labeling = _cover(args, OrientedSystem(poset))
    checks = run_checks(poset, labeling, exhaustive=args.exhaustive)
    status = 0 if all(c.ok for c in checks) else 1
    if args.format == "json":
        return _dump([{"name": c.name, "ok": c.ok, "witness": c.witness} for c in checks]), status
    lines = [c.line() for c in checks]
    lines.append(f"{sum(c.ok for c in checks)}/{len(checks)} checks passed")
    return "\n".join(lines) + "\n", status


def cmd_invariants(args, poset):
    if args.format == "dot":
        raise InputError("invariants has no dot output")
    m = _model(args, poset)
    h = homology(m.w_rho)
    pres = pi1_presentation(m.cover, m.cells())
    ab = abelianization(pres)
    if args.format == "json":
        return _dump(
            {
                "euler": euler_characteristic(m.w_rho),
                "homology": h.to_dict(),
                "cells": cell_counts(m.cells()),
                "presentation": pres.to_dict(),
                "abelianization": ab.to_dict(),
            }
        ), 0
    lines = [
        f"euler: {euler_characteristic(m.w_rho)}",
        f"betti: {h.betti}",
        f"h1 torsion: {h.h1_factors}",
        f"cells: {cell_counts(m.cells())}",
        pres.to_text().rstrip("\n"),
        f"abelianization: free rank {ab.free_rank}, torsion {ab.torsion}",
    ]
    return "\n".join(lines) + "\n", 0


HANDLERS = {name: globals()[f"cmd_{name}"] for name in COMMANDS}


def build_parser():
    p = argparse.ArgumentParser(prog="salvetti", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", help="arrangement file")
    p.add_argument("--deck", help="winding:<k>, crossing:<k> or a deck-labeling file")
    p.add_argument("--radius", type=int, help="ball radius for the universal command")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.add_argument("--exhaustive", action="store_true", help="also run brute-force oracles")
    return p


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        if args.deck is not None and args.command not in ("cover", "model", "verify", "invariants"):
            raise InputError(f"--deck is not used by {args.command}")
        if args.radius is not None and args.command != "universal":
            raise InputError("--radius is only used by universal")
        arrangement = load_arrangement(args.input)
        poset = enumerate_faces(arrangement)
        text, status = HANDLERS[args.command](args, poset)
    except VerificationFailure as exc:
        stdout.write(f"{exc}\n")
        return 1
    except (InputError, ArrangementError, DeckError) as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        stderr.write(f"error: cannot read {args.input}: {exc.strerror}\n")
        return 2
    stdout.write(text)
    return status


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
