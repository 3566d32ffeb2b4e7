import pytest

from salvetti.covers import build_cover, identity_cover, universal_cover_ball, winding_labeling
from salvetti.diagrams import (
    DiagramError,
    PosetDiagram,
    diagram_falk,
    diagram_id,
    diagram_rho,
    mu_star,
    order_complex,
    plim,
)
from salvetti.invariants import betti_numbers, euler_characteristic
from salvetti.poset import FinitePoset

from conftest import corpus_poset


def chain2():
    return FinitePoset.from_relation(["p", "q"], [(0, 1)])


def images(d, p, q):
    src, dst = d.spaces[d.index.index(p)], d.spaces[d.index.index(q)]
    f = d.map(d.index.index(p), d.index.index(q))
    return {src.elements[x]: dst.elements[y] for x, y in enumerate(f)}


def test_diagram_id_on_point(point):
    d = diagram_id(point[0])
    assert d.spaces[d.index.index("0")].elements == ["-", "+"]
    assert images(d, "0", "-") == {"-": "-", "+": "-"}
    assert images(d, "0", "+") == {"-": "+", "+": "+"}
    for c in "-+":
        assert d.spaces[d.index.index(c)].elements == [c]


def test_diagram_id_on_two_lines(two_lines):
    d = diagram_id(two_lines[0])
    assert len(d.spaces[d.index.index("00")]) == 4
    assert images(d, "00", "0+") == {"++": "++", "+-": "++", "-+": "-+", "--": "-+"}


def test_functoriality_failure_is_raised():
    idx = FinitePoset.from_relation(["p", "q", "r"], [(0, 1), (1, 2)])
    two = FinitePoset.antichain(["x", "y"])
    maps = {(0, 1): (0, 1), (1, 2): (1, 0), (0, 2): (0, 1)}
    with pytest.raises(DiagramError):
        PosetDiagram(idx, [two, two, two], maps)
    with pytest.raises(DiagramError):
        PosetDiagram(idx, [two, two, two], {(0, 1): (0, 1)})


def test_monotonicity_failure_is_raised():
    idx = chain2()
    up = FinitePoset.from_relation(["a", "b"], [(0, 1)])
    with pytest.raises(DiagramError):
        PosetDiagram(idx, [up, up], {(0, 1): (1, 0)})


def test_plim_of_point_is_a_crown(point):
    lim = plim(diagram_id(point[0]))
    assert sorted(lim.elements) == [("+", "+"), ("-", "-"), ("0", "+"), ("0", "-")]
    for hi in ("0", "-"), ("0", "+"):
        for lo in ("-", "-"), ("+", "+"):
            assert lim.geq(lim.index(hi), lim.index(lo))
    k = order_complex(lim)
    assert k.f_vector == [4, 4] and betti_numbers(k) == [1, 1]


def test_plim_single_index_is_the_space():
    idx = FinitePoset.antichain(["p"])
    q = FinitePoset.from_relation(["a", "b", "c"], [(0, 1), (0, 2)])
    lim = plim(PosetDiagram(idx, [q], {}))
    assert [x for _, x in lim.elements] == q.elements
    assert lim.down == q.down


def test_order_complex_of_chain():
    k = order_complex(chain2())
    assert k.f_vector == [2, 1]


def test_plim_two_lines(two_lines):
    k = order_complex(plim(diagram_id(two_lines[0])))
    assert len(k.vertices) == 16 and euler_characteristic(k) == 0


def test_winding_three_plim(point):
    # 6 elements over P and 3 over each chamber; the order complex is a 12-gon
    poset, s = point
    d = diagram_rho(poset, build_cover(s, winding_labeling(s, 3)))
    assert images(d, "0", "-") == {
        ("-", 0): ("-", 0),
        ("-", 1): ("-", 1),
        ("-", 2): ("-", 2),
        ("+", 0): ("-", 1),
        ("+", 1): ("-", 2),
        ("+", 2): ("-", 0),
    }
    lim = plim(d)
    assert len(lim) == 12
    k = order_complex(lim)
    assert k.f_vector == [12, 12] and len(k.components) == 1 and euler_characteristic(k) == 0


def test_identity_cover_gives_diagram_id(two_lines):
    poset, s = two_lines
    d = diagram_rho(poset, identity_cover(s))
    e = diagram_id(poset)
    assert d.maps == e.maps
    assert [[c for c, _ in sp.elements] for sp in d.spaces] == [sp.elements for sp in e.spaces]


def test_universal_ball_map_shifts_index(point):
    poset, s = point
    ball = universal_cover_ball(s, 2)
    d = diagram_rho(poset, ball)
    f = images(d, "0", "-")
    for (c, w), (c2, w2) in f.items():
        assert c2 == "-"
        if c == "-":
            assert w2 == w
    assert f[("+", "e0")] == ("-", "e0 e1")


def test_mu_star_chain():
    d = PosetDiagram(chain2(), [FinitePoset.antichain(["x"])] * 2, {(0, 1): (0,)})
    m = mu_star(d)
    assert sorted(m.index.elements) == [("p",), ("p", "q"), ("q",)]
    pq = m.index.index(("p", "q"))
    assert m.index.minimal == [pq]
    for single in ("p",), ("q",):
        assert m.index.geq(m.index.index(single), pq)
    assert m.spaces[pq] is d.spaces[1]


@pytest.mark.parametrize("key,betti", [("b", [1, 1]), ("d", [1, 2, 1])])
def test_mu_star_betti(key, betti):
    d = diagram_id(corpus_poset(key))
    assert betti_numbers(order_complex(plim(mu_star(d)))) == betti
    assert betti_numbers(order_complex(plim(d))) == betti


def test_falk_on_point(point):
    e = diagram_falk(point[0])
    assert len(e.spaces[e.index.index("-")]) == 1
    assert len(e.spaces[e.index.index("0")]) == 4
    lim = plim(e)
    assert len(lim) == 6
    assert betti_numbers(order_complex(lim)) == [1, 1]


def test_falk_on_empty():
    e = diagram_falk(corpus_poset("a"))
    assert len(e.spaces) == 1 and len(plim(e)) == 1


@pytest.mark.parametrize("key", "abcdef")
def test_falk_and_mu_star_keep_betti(key):
    poset = corpus_poset(key)
    d = diagram_id(poset)
    b = betti_numbers(order_complex(plim(d)))
    assert betti_numbers(order_complex(plim(diagram_falk(poset)))) == b
    assert betti_numbers(order_complex(plim(mu_star(d)))) == b


@pytest.mark.parametrize("key", "abcdefg")
def test_plim_chain_chambers(key):
    poset = corpus_poset(key)
    lim = plim(diagram_id(poset))
    lim.validate()
    for chain in lim.maximal_chains():
        top = lim.elements[chain[0]][1]
        for i in chain:
            face, chamber = lim.elements[i]
            assert str(poset.compose(face, top)) == chamber
