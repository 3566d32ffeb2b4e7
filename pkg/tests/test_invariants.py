import pytest
import sympy
from sympy.matrices.normalforms import smith_normal_form
from hypothesis import given, strategies as st

from salvetti.arrangement import intersection_poset
from salvetti.covers import build_cover, winding_labeling
from salvetti.invariants import (
    GroupPresentation,
    abelianization,
    betti_numbers,
    boundary_matrix,
    euler_characteristic,
    h1_torsion,
    homology,
    parse_presentation,
    pi1_presentation,
    spanning_forest,
)
from salvetti.model import build_model, salvetti_direct
from salvetti.oriented_system import OrientedSystem
from salvetti.simplicial import SimplicialComplex

from conftest import corpus_poset

EXPECTED = {
    "a": ([1], 1),
    "b": ([1, 1], 0),
    "c": ([1, 2], -1),
    "d": ([1, 2, 1], 0),
    "e": ([1, 3, 2], 0),
    "f": ([1, 3, 3], 1),
    "g": ([1, 3, 3, 1], 0),
}


@pytest.mark.parametrize("key", sorted(EXPECTED))
def test_betti_and_euler(key):
    poset = corpus_poset(key)
    k = salvetti_direct(poset)
    betti, chi = EXPECTED[key]
    assert betti_numbers(k) == betti
    assert euler_characteristic(k) == chi
    assert intersection_poset(poset.arrangement).whitney_numbers() == betti
    assert h1_torsion(k) == []


def dense(rows, ncols):
    return sympy.Matrix([[r.get(j, 0) for j in range(ncols)] for r in rows])


@pytest.mark.parametrize("key", "bcdf")
def test_boundary_matrices_against_sympy(key):
    k = salvetti_direct(corpus_poset(key))
    ranks = [0]
    for d in range(1, k.dimension + 1):
        rows, ncols = boundary_matrix(k, d)
        ranks.append(dense(rows, ncols).rank())
    ranks.append(0)
    f = k.f_vector
    assert betti_numbers(k) == [f[d] - ranks[d] - ranks[d + 1] for d in range(len(f))]
    if k.dimension >= 2:
        # boundary of a boundary is zero
        r2, n2 = boundary_matrix(k, 2)
        r1, n1 = boundary_matrix(k, 1)
        assert (dense(r2, n2) * dense(r1, n1)).is_zero_matrix


def test_projective_plane_torsion():
    # six-vertex triangulation of RP^2
    faces = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1), (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    k = SimplicialComplex(range(6), [tuple(sorted(f)) for f in faces])
    assert betti_numbers(k) == [1, 0, 0]
    assert homology(k).to_dict() == {"betti": [1, 0, 0], "h1_factors": [2]}


def test_homology_json(point):
    assert homology(salvetti_direct(point[0])).to_json() == '{"betti": [1, 1], "h1_factors": []}'


@pytest.mark.parametrize("key,gens,rels", [("b", 1, 0), ("c", 2, 0), ("d", 5, 4)])
def test_identity_presentations(key, gens, rels):
    poset = corpus_poset(key)
    m = build_model(poset)
    pres = pi1_presentation(m.cover, m.cells())
    assert len(pres.generators) == gens and len(pres.relators) == rels
    ab = abelianization(pres)
    h = homology(m.w_rho)
    assert ab.free_rank == h.betti[1] and ab.torsion == h.h1_factors


@pytest.mark.parametrize("key", "bcd")
def test_winding_three_abelianization(key):
    poset = corpus_poset(key)
    s = OrientedSystem(poset)
    m = build_model(poset, build_cover(s, winding_labeling(s, 3)))
    ab = abelianization(pi1_presentation(m.cover, m.cells()))
    h = homology(m.w_rho)
    assert ab.to_dict() == {"free_rank": h.betti[1], "torsion": h.h1_factors}


def test_spanning_forest_size(two_lines):
    g = two_lines[1].graph
    assert len(spanning_forest(g)) == len(g.vertices) - 1


def test_cyclic_group():
    ab = abelianization(GroupPresentation(["a"], [(("a", 1), ("a", 1))]))
    assert ab.free_rank == 0 and ab.torsion == [2]


def test_commutator_and_free():
    comm = (("a", 1), ("b", 1), ("a", -1), ("b", -1))
    assert abelianization(GroupPresentation(["a", "b"], [comm])).to_dict() == {"free_rank": 2, "torsion": []}
    assert abelianization(GroupPresentation(["a", "b", "c"], [])).free_rank == 3


def test_presentation_validation():
    with pytest.raises(ValueError):
        GroupPresentation(["a"], [(("b", 1),)])
    with pytest.raises(ValueError):
        GroupPresentation(["a"], [(("a", 1), ("a", -1))])
    with pytest.raises(ValueError):
        parse_presentation("rel: a\n")
    with pytest.raises(ValueError):
        parse_presentation("gens: a\nfoo: a\n")


def test_inconsistent_cells_rejected(two_lines):
    m = build_model(two_lines[0])
    with pytest.raises(ValueError):
        pi1_presentation(m.cover, [c for c in m.cells() if c.vertex != 0 or c.dim != 0])


def test_text_round_trip(two_lines):
    m = build_model(two_lines[0])
    pres = pi1_presentation(m.cover, m.cells())
    text = pres.to_text()
    assert text.startswith("gens: ")
    back = parse_presentation(text)
    assert back == pres


letters = st.tuples(st.sampled_from(["a", "b", "c"]), st.sampled_from([1, -1]))


@given(st.lists(st.lists(letters, max_size=6), max_size=4))
def test_abelianization_matches_sympy(words):
    gens = ["a", "b", "c"]
    rels = []
    for w in words:
        out = []
        for x in w:
            if out and out[-1][0] == x[0] and out[-1][1] == -x[1]:
                out.pop()
            else:
                out.append(x)
        rels.append(tuple(out))
    ab = abelianization(GroupPresentation(gens, rels))
    if rels:
        m = sympy.Matrix([[sum(e for g, e in r if g == h) for h in gens] for r in rels])
        snf = smith_normal_form(m, domain=sympy.ZZ)
        diag = [abs(snf[i, i]) for i in range(min(snf.shape)) if snf[i, i] != 0]
    else:
        diag = []
    assert ab.free_rank == 3 - len(diag)
    assert ab.torsion == sorted(x for x in diag if x > 1)
