from pathlib import Path

import pytest

from salvetti.arrangement import enumerate_faces, load_arrangement, parse_arrangement
from salvetti.oriented_system import OrientedSystem

CORPUS_DIR = Path(__file__).resolve().parents[1] / "corpus"
CORPUS = {
    "a": "a_empty.arr",
    "b": "b_point.arr",
    "c": "c_two_points.arr",
    "d": "d_two_lines.arr",
    "e": "e_three_concurrent.arr",
    "f": "f_three_generic.arr",
    "g": "g_coordinate_planes.arr",
}


def corpus_poset(key):
    return enumerate_faces(load_arrangement(CORPUS_DIR / CORPUS[key]))


def poset_of(text):
    return enumerate_faces(parse_arrangement(text))


def orbit_sizes(system, labeling):
    """Orbits of the loop group at chamber 0 acting on sheets, by closing walks."""
    g = system.graph
    m = labeling.degree
    # sheet permutation accumulated along a spanning tree from chamber 0
    tree = {0: tuple(range(m))}
    todo = [0]
    while todo:
        u = todo.pop()
        for e in g.out_edges[u]:
            v = g.target(e)
            if v not in tree:
                tree[v] = tuple(labeling.labels[e][tree[u][s]] for s in range(m))
                todo.append(v)
    inv = {v: {p[s]: s for s in range(m)} for v, p in tree.items()}
    loops = []
    for e, (u, v) in enumerate(g.edges):
        loops.append(tuple(inv[v][labeling.labels[e][tree[u][s]]] for s in range(m)))
    seen, sizes = set(), []
    for s in range(m):
        if s in seen:
            continue
        orbit, todo = {s}, [s]
        while todo:
            x = todo.pop()
            for p in loops:
                if p[x] not in orbit:
                    orbit.add(p[x])
                    todo.append(p[x])
        seen |= orbit
        sizes.append(len(orbit))
    return sorted(sizes)


@pytest.fixture
def point():
    p = corpus_poset("b")
    return p, OrientedSystem(p)


@pytest.fixture
def two_lines():
    p = corpus_poset("d")
    return p, OrientedSystem(p)


@pytest.fixture
def two_points():
    p = corpus_poset("c")
    return p, OrientedSystem(p)
