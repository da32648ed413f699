import math
import random
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import ALPHA, BETA, DELTA, GAMMA, cycle
from oracles import affine_by_search, cpa_by_search, gla_by_forcing, gla_by_search, special_by_quadruples
from nilgraph.automorphism import (
    AffineWitness,
    AutomorphismError,
    SignedColor,
    affine_witness,
    color_permutation_witness,
    enumerate_cpa,
    enumerate_gla,
    gla_witness,
    half_split,
    is_gn_pattern,
    is_graph_automorphism,
    is_hn_pattern,
    is_special,
    verify_stabilizer_lemmas,
    witness_to_dict,
)
from nilgraph.graph import EdgeColoredGraph, DirectedEdgeColoredGraph, build_gn, build_hn, underlying_undirected
from nilgraph.groups import compose, inverse, identity


def affine(u, a, n):
    return tuple((u * x + a) % n for x in range(n))


# -- predicates ---------------------------------------------------------------

def test_any_perm_is_automorphism_of_complete_graph():
    G = build_gn(5)
    for p in permutations(range(5)):
        assert is_graph_automorphism(p, G)


def test_rotation_of_square_is_automorphism(ex23):
    assert is_graph_automorphism(cycle((ALPHA, BETA, GAMMA, DELTA)), ex23)


def test_path_swap_is_not_automorphism():
    path = EdgeColoredGraph.from_edges(3, 1, [(0, 1, 0), (1, 2, 0)])
    assert not is_graph_automorphism((1, 0, 2), path)
    assert is_graph_automorphism((2, 1, 0), path)


def test_size_mismatch_raises():
    with pytest.raises(AutomorphismError):
        is_graph_automorphism((0, 1), build_gn(3))


def test_cpa_witness_example23(ex23):
    # phi = (1 2), i.e. colour indices 0 <-> 1
    assert color_permutation_witness(cycle((ALPHA, GAMMA), (BETA, DELTA)), ex23) == (1, 0)
    assert color_permutation_witness(cycle((ALPHA, BETA, GAMMA, DELTA)), ex23) is None
    assert color_permutation_witness(identity(4), ex23) == (0, 1)


def test_cpa_witness_rejects_non_automorphism():
    path = EdgeColoredGraph.from_edges(3, 1, [(0, 1, 0), (1, 2, 0)])
    with pytest.raises(AutomorphismError, match="not a graph automorphism"):
        color_permutation_witness((1, 0, 2), path)


def test_is_special_examples():
    assert is_special(identity(5), 5)
    assert is_special(affine(2, 1, 5), 5)
    assert not is_special((1, 0, 2, 3, 4), 5)


def test_affine_witness_examples():
    assert affine_witness(affine(3, 2, 7), 7) == AffineWitness(translation=2, unit=3)
    assert affine_witness((1, 0, 2, 3, 4), 5) is None
    assert affine_witness(identity(9), 9) == (0, 1)


@pytest.mark.parametrize("n", [3, 5, 7])
def test_three_way_equivalence_exhaustive_against_oracles(n):
    G = build_gn(n)
    for p in permutations(range(n)):
        special = is_special(p, n)
        aff = affine_witness(p, n)
        cpa = color_permutation_witness(p, G) is not None
        assert special == cpa == (aff is not None)
        if n <= 5:
            assert special == special_by_quadruples(p, n)
        expected = affine_by_search(p, n)
        assert (aff is None and not expected) or [tuple(aff)] == expected


@settings(max_examples=300, deadline=None)
@given(st.sampled_from([9, 11, 13]).flatmap(lambda n: st.tuples(st.just(n), st.permutations(range(n)))))
def test_three_way_equivalence_random(case):
    n, p = case
    p = tuple(p)
    G = build_gn(n)
    assert is_special(p, n) == (affine_witness(p, n) is not None) == (color_permutation_witness(p, G) is not None)


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([9, 11, 13]).flatmap(
    lambda n: st.tuples(st.just(n), st.sampled_from([u for u in range(1, n) if math.gcd(u, n) == 1]), st.integers(0, n - 1))))
def test_affine_maps_are_special(case):
    n, u, a = case
    f = affine(u, a, n)
    assert is_special(f, n)
    assert affine_witness(f, n) == (a, u)


# -- CPA enumeration ----------------------------------------------------------

def test_cpa_example23(ex23):
    group = enumerate_cpa(ex23)
    expected = {identity(4), cycle((ALPHA, GAMMA)), cycle((BETA, DELTA)), cycle((ALPHA, GAMMA), (BETA, DELTA))}
    assert set(group.elements) == expected
    assert set(cpa_by_search(4, 2, dict(ex23.coloring))) == expected


def test_cpa_example25_order_8(ex25):
    group = enumerate_cpa(ex25)
    assert group.order == 8
    assert set(group.elements) == set(cpa_by_search(4, 2, dict(ex25.coloring)))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_cpa_gn_matches_search_oracle(n):
    G = build_gn(n)
    group = enumerate_cpa(G, "both")
    assert group.order == n * sum(1 for u in range(1, n) if math.gcd(u, n) == 1)
    if n <= 5:
        assert list(group.elements) == sorted(cpa_by_search(n, n, dict(G.coloring)))


@pytest.mark.parametrize("n", [3, 5, 7, 9])
def test_cpa_dual_path_agreement(n):
    G = build_gn(n)
    assert enumerate_cpa(G, "brute").elements == enumerate_cpa(G, "fast").elements


def test_cpa_output_is_canonical():
    elems = enumerate_cpa(build_gn(7), "fast").elements
    assert list(elems) == sorted(elems)


def test_fast_path_rejects_other_graphs(ex25):
    with pytest.raises(AutomorphismError, match="G_n"):
        enumerate_cpa(ex25, "fast")
    # same edge set as G_5 but one colour class rotated
    G = build_gn(5)
    bad = dict(G.coloring)
    bad[(0, 1)], bad[(0, 2)] = bad[(0, 2)], bad[(0, 1)]
    assert not is_gn_pattern(EdgeColoredGraph(5, 5, bad))
    with pytest.raises(AutomorphismError):
        enumerate_cpa(EdgeColoredGraph(5, 5, bad), "fast")


def test_brute_cap(monkeypatch):
    with pytest.raises(AutomorphismError, match="cap"):
        enumerate_cpa(build_gn(11))
    monkeypatch.setenv("NILGRAPH_BRUTE_CAP", "5")
    with pytest.raises(AutomorphismError, match="cap 5"):
        enumerate_cpa(build_gn(7))
    assert enumerate_cpa(build_gn(7), cap=7).order == 42


def test_unknown_method():
    with pytest.raises(AutomorphismError, match="method"):
        enumerate_cpa(build_gn(3), "quick")


@pytest.mark.parametrize("n", [3, 5, 7])
def test_cpa_group_axioms(n):
    group = enumerate_cpa(build_gn(n))
    assert group.is_group()


@pytest.mark.parametrize("n", [5, 7])
def test_cpa_witness_replays(n):
    G = build_gn(n)
    for sigma in enumerate_cpa(G).elements:
        phi = color_permutation_witness(sigma, G)
        for (u, v), c in G.coloring.items():
            assert phi[c] == G.color(sigma[u], sigma[v])


# -- GLA ----------------------------------------------------------------------

def test_gla_witness_example43(ex41):
    chi = cycle((ALPHA, BETA), (GAMMA, DELTA))
    assert gla_witness(chi, ex41) == (SignedColor(0, -1), SignedColor(1, 1))
    sigma = cycle((ALPHA, BETA, GAMMA, DELTA))
    assert color_permutation_witness(sigma, underlying_undirected(ex41)) is not None
    assert gla_witness(sigma, ex41) is None
    assert gla_witness(identity(4), ex41) == ((0, 1), (1, 1))


def test_gla_witness_requires_cpa(ex41):
    with pytest.raises(AutomorphismError, match="color permuting"):
        gla_witness(cycle((ALPHA, BETA)), ex41)
    # an automorphism of the complete graph that does not permute colours
    with pytest.raises(AutomorphismError, match="color permuting"):
        gla_witness((1, 0, 2, 3, 4), build_hn(5))


def test_gla_example41_matches_signed_search(ex41):
    group = enumerate_gla(ex41)
    oracle = gla_by_search(4, 2, dict(ex41.coloring))
    assert list(group.elements) == sorted(oracle)
    assert group.order == 4
    assert cycle((ALPHA, BETA), (GAMMA, DELTA)) in group
    assert cycle((ALPHA, BETA, GAMMA, DELTA)) not in group


def test_gla_h3_matches_signed_search():
    H = build_hn(3)
    assert list(enumerate_gla(H).elements) == sorted(gla_by_search(3, 3, dict(H.coloring)))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_gla_hn_matches_forcing_oracle(n):
    H = build_hn(n)
    assert list(enumerate_gla(H, "both").elements) == sorted(gla_by_forcing(n, dict(H.coloring)))


def test_gla_h5_contents():
    group = enumerate_gla(build_hn(5))
    assert group.order == 10
    assert (1, 2, 3, 4, 0) in group
    assert (0, 4, 3, 2, 1) in group


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_gla_translations_rotate_colors_by_2k(n):
    H = build_hn(n)
    for k in range(n):
        phi = gla_witness(affine(1, k, n), H)
        assert phi == tuple(SignedColor((z + 2 * k) % n, 1) for z in range(n))


def test_gla_fast_requires_hn_pattern(ex41):
    with pytest.raises(AutomorphismError, match="H_n"):
        enumerate_gla(ex41, "fast")
    H = build_hn(5)
    arcs = dict(H.coloring)
    c = arcs.pop((0, 1))
    arcs[(1, 0)] = c
    flipped = DirectedEdgeColoredGraph(5, 5, arcs)
    assert not is_hn_pattern(flipped)
    assert is_hn_pattern(H)


@pytest.mark.parametrize("graph", ["ex41", "h5", "h7"])
def test_gla_subset_of_cpa(graph, ex41):
    H = {"ex41": ex41, "h5": build_hn(5), "h7": build_hn(7)}[graph]
    gla = enumerate_gla(H)
    cpa = enumerate_cpa(underlying_undirected(H))
    assert set(gla.elements) <= set(cpa.elements)
    assert gla.is_group()


def test_gla_witness_replays_on_both_orientations():
    H = build_hn(7)
    for chi in enumerate_gla(H).elements:
        phi = gla_witness(chi, H)
        for (a, b), c in H.coloring.items():
            assert H.signed_color(chi[a], chi[b]) == phi[c]
            color, sign = phi[c]
            assert H.signed_color(chi[b], chi[a]) == (color, -sign)


def test_witness_serialization():
    assert witness_to_dict((1, 0), (SignedColor(0, -1),)) == {"sigma": [1, 0], "phi": [{"color": 0, "sign": -1}]}
    assert witness_to_dict((0, 1), (1, 0))["phi"] == [{"color": 1, "sign": 1}, {"color": 0, "sign": 1}]


# -- half split and stabilizer lemmas -------------------------------------

def test_half_split():
    assert half_split(5) == ({1, 2}, {3, 4})
    assert half_split(3) == ({1}, {2})
    s = half_split(11)
    assert len(s.right) == len(s.left) == 5
    with pytest.raises(ValueError):
        half_split(6)


def test_unit_doubling_moves_r():
    R = half_split(5).right
    assert {2 * x % 5 for x in R} == {2, 4} != R


def test_every_nonidentity_unit_moves_r_n7():
    R = half_split(7).right
    moved = [u for u in range(2, 7) if {u * x % 7 for x in R} != R]
    assert moved == [2, 3, 4, 5, 6]


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11])
def test_stabilizer_lemmas(n):
    report = verify_stabilizer_lemmas(n)
    assert report.passed, report.to_dict()
    assert sorted(report.stabilizer) == sorted({identity(n), tuple((-x) % n for x in range(n))})
    assert report.gla_order == 2 * n


def test_stabilizer_lemma_report_shape():
    d = verify_stabilizer_lemmas(5).to_dict()
    assert d["passed"] is True
    assert set(d["checks"]) == {
        "unit_moves_R",
        "R_preserved_or_swapped",
        "stabilizer_involutions",
        "stabilizer_is_pm_id",
        "orbit_stabilizer_equation",
    }


def test_affine_formula_matches_full_scan_at_n11():
    # the GLA brute pool falls back on this formula above the default cap
    cpa = enumerate_cpa(build_gn(11), "both", cap=11)
    assert cpa.order == 110
