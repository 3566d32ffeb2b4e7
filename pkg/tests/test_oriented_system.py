import pytest

from salvetti.arrangement import ArrangementError
from salvetti.oriented_system import OrientedSystem, Path, PathError, gamma_of

from conftest import CORPUS, corpus_poset


def names(system, path):
    return system.format_path(path).split()


def test_point_graph():
    s = gamma_of(corpus_poset("b"))
    assert s.graph.vertices == ["-", "+"]
    assert sorted(s.graph.edges) == [(0, 1), (1, 0)]
    assert s.relation_kind == "arrangement-minimal"


def test_empty_graph():
    s = gamma_of(corpus_poset("a"))
    assert len(s.graph.vertices) == 1 and s.graph.edges == []


def test_two_points_graph():
    s = gamma_of(corpus_poset("c"))
    assert len(s.graph.vertices) == 3 and len(s.graph.edges) == 4


def test_minimal_paths(point, two_lines):
    _, s = point
    p = s.minimal_positive_path("-", "+")
    assert len(p) == 1 and s.is_positive_minimal(p)
    assert len(s.minimal_positive_path("-", "-")) == 0
    _, s2 = two_lines
    p = s2.minimal_positive_path("++", "--")
    assert names(s2, p) == ["++", "-+", "--"]
    alt = s2.graph.positive_path([s2.vertex("++"), s2.vertex("+-"), s2.vertex("--")])
    assert s2.is_positive_minimal(alt)


def test_minimal_path_rejects_faces(two_lines):
    _, s = two_lines
    with pytest.raises(ArrangementError):
        s.minimal_positive_path("0+", "++")


def test_is_positive_minimal_rejects_back_and_forth(point):
    _, s = point
    p = s.graph.positive_path([0, 1, 0])
    assert not s.is_positive_minimal(p)


def test_relation_generators(point, two_lines):
    assert point[1].relation_generators() == []
    _, s = two_lines
    gens = s.relation_generators()
    assert len(gens) == 4
    first = {tuple(names(s, p)) for p in gens[[names(s, p)[0] for p, _ in gens].index("++")]}
    assert first == {("++", "-+", "--"), ("++", "+-", "--")}


def test_concurrent_lines_generators():
    s = OrientedSystem(corpus_poset("e"))
    gens = s.relation_generators()
    assert len(gens) == 6
    assert all(len(p) == 3 and len(q) == 3 for p, q in gens)


def test_factor_via_chamber(two_lines, two_points):
    _, s = two_lines
    a, b = s.factor_via_chamber("++", "--", "00")
    assert len(a) == 0 and len(b) == 2
    a, b = s.factor_via_chamber("+-", "+-", "00")
    assert len(a) == 0 and len(b) == 0
    _, t = two_points
    # chambers of x=0, x=1: "--" (A), "+-" (B), "++" (C); p1 has sign "+0"
    a, b = t.factor_via_chamber("--", "++", "+0")
    assert names(t, a) == ["--", "+-"] and names(t, b) == ["+-", "++"]
    with pytest.raises(ArrangementError):
        t.factor_via_chamber("--", "--", "+0")


def test_path_algebra(two_lines):
    _, s = two_lines
    g = s.graph
    p = s.minimal_positive_path("++", "--")
    inv = g.inverse(p)
    loop = g.concat(p, inv)
    assert g.end(loop) == p.start
    assert g.reduce(loop) == Path(p.start)
    with pytest.raises(PathError):
        g.concat(p, p)
    with pytest.raises(PathError):
        g.walk(Path(0, ((g.in_edges[0][0], 1),)))


@pytest.mark.parametrize("key", sorted(CORPUS))
def test_minimal_paths_cross_each_separating_hyperplane_once(key):
    s = OrientedSystem(corpus_poset(key))
    n = len(s.graph.vertices)
    for a in range(n):
        for b in range(n):
            p = s.minimal_positive_path(a, b)
            crossed = [s.crossing[e] for e, _ in p.steps]
            assert sorted(crossed) == sorted(s.separating(a, b))
            assert s.graph.walk(p)[-1] == b


@pytest.mark.parametrize("key", sorted(CORPUS))
def test_generator_pairs_are_distinct_positive_minimal(key):
    s = OrientedSystem(corpus_poset(key))
    for p, q in s.relation_generators():
        assert p != q and p.start == q.start and s.graph.end(p) == s.graph.end(q)
        assert s.is_positive_minimal(p) and s.is_positive_minimal(q)


@pytest.mark.parametrize("key", "bcdef")
def test_all_minimal_paths_are_substitution_connected(key):
    s = OrientedSystem(corpus_poset(key))
    n = len(s.graph.vertices)
    for a in range(n):
        for b in range(n):
            classes = s.substitution_classes(a, b)
            assert len(classes) == 1


def test_dot_export(point):
    dot = point[1].graph.to_dot()
    assert dot.startswith("digraph") and "v0 -> v1" in dot
