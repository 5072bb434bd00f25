from fractions import Fraction as F
from itertools import product
import json

import pytest

from kopt_adversary import gadgets as G
from kopt_adversary.core import TooLarge

S = [F(3), F(5)]
D = [F(7), F(11)]
ET = F(1, 64)

# Regression values from the first exhaustive enumeration.
SUBTOUR_COUNTS = {"stick": 1, "buoy": 2, "xor3": 2, "xor4": 2, "xor5": 2, "path1": 2, "path2": 10,
                  "path3": 69, "node_regular": 1, "node_irregular": 1, "s1": 2, "s2_ir": 11, "s2_ii": 15,
                  "s3": 105, "s4": 300}


def test_subtour_counts_regression():
    got = {g.kind: len(G.enumerate_subtours(g)) for g in G.reference_gadgets()}
    assert got == SUBTOUR_COUNTS


@pytest.mark.parametrize("kind,q,want", [("stick", None, 0), ("buoy", None, 2), ("xor", 3, 4)])
def test_vertex_gadget_involved_edges(kind, q, want):
    g = G.make_vertex_gadget(kind, q)
    assert G.involved_edges(G.standard_subtour(g, "odd"), G.standard_subtour(g, "even")) == want


def test_xor_has_only_standard_subtours():
    g = G.make_vertex_gadget("xor", 3)
    subs = G.enumerate_subtours(g)
    assert {s.edges for s in subs} == {G.standard_subtour(g, x).edges for x in ("odd", "even")}


def test_vertex_gadget_for_k():
    assert [G.vertex_gadget_for_k(k).kind for k in (3, 4, 5, 7)] == ["stick", "buoy", "xor3", "xor5"]
    with pytest.raises(G.GadgetError):
        G.vertex_gadget_for_k(2)


def test_path1_subtours_weigh_zero():
    g = G.make_path_gadget(1)
    assert [G.standard_subtour(g, (s,)).weight() for s in (0, 1)] == [0, 0]


def test_path2_weights():
    g = G.make_path_gadget(2, S[:1], D[:1])
    assert G.standard_subtour(g, (1, 1)).weight() == S[0]
    assert G.standard_subtour(g, (0, 0)).weight() == S[0]
    assert G.standard_subtour(g, (0, 1)).weight() == D[0]


def test_path3_weight_formula():
    g = G.make_path_gadget(3, S, D)
    assert G.standard_subtour(g, (1, 0, 1)).weight() == D[0] + D[1]
    for s in product((0, 1), repeat=3):
        assert G.standard_subtour(g, s).weight() == G.path_weight_formula(S, D, s)


def test_path_gadgets_one_subtour_per_label():
    g = G.make_path_gadget(2, S[:1], D[:1])
    vecs = [G.label_vector(g, s) for s in G.enumerate_subtours(g)]
    labelled = [v for v in vecs if v is not None]
    assert sorted(labelled) == sorted(product((0, 1), repeat=2))


def test_path3_all_ones_paths():
    g = G.make_path_gadget(3, S, D)
    assert G.standard_subtour(g, (1, 1, 1)).paths() == sorted(
        [("X1", "Y", "Z"), ("Xb3", "Yb", "Zb"), ("X2", "Xb1"), ("X3", "Xb2")])


@pytest.mark.parametrize("a,b,n", [("000", "000", 0), ("010", "111", 6), ("000", "111", 5), ("000", "001", 3),
                                   ("001", "010", 4)])
def test_path3_involved_edges(a, b, n):
    g = G.make_path_gadget(3, S, D)
    sa = G.standard_subtour(g, tuple(map(int, a)))
    sb = G.standard_subtour(g, tuple(map(int, b)))
    assert G.involved_edges(sa, sb) == n


def test_node_gadgets():
    reg, irr = G.make_node_gadget("regular"), G.make_node_gadget("irregular")
    assert (len(reg.names), len(reg.edges)) == (1, 0)
    assert (len(irr.names), len(irr.edges)) == (3, 2)
    (only,) = G.enumerate_subtours(irr)
    assert len(only.edges) == 2


def test_star3_weight():
    g = G.make_star_gadget("s3", S, D)
    assert G.standard_subtour(g, (1, 0, 1)).weight() == D[0] + S[1]
    assert G.standard_subtour(g, (0, 1, 0)).weight() == D[0] + S[1]
    for s in product((0, 1), repeat=3):
        assert G.standard_subtour(g, s).weight() == G.star_weight_formula(S, D, s)


def test_star4_catalog():
    g = G.make_star_gadget("s4", eps_tilde=ET)
    assert g.weight_map[tuple(sorted((g.index("X1"), g.index("X3"))))] == -1
    assert len(g.catalog) == 14
    sub = G.standard_subtour(g, (1, 0, 0, 0))
    assert g.labels_of(sub) == ("g",) and sub.weight() == -1
    with pytest.raises(G.NoSuchSubtour):
        G.standard_subtour(g, (0, 1, 0, 1))
    with pytest.raises(G.AmbiguousLabel):
        G.standard_subtour(g, (1, 1, 1, 1))


def test_star4_weights_by_letter():
    g = G.make_star_gadget("s4", eps_tilde=ET)
    for x in "ace":
        assert G.standard_subtour(g, x).weight() == -1 - ET
    for x in "bdf":
        assert G.standard_subtour(g, x).weight() == -ET
    for x in "gikm":
        assert G.standard_subtour(g, x).weight() == -1
    for x in "hjln":
        assert G.standard_subtour(g, x).weight() == 0


def test_star4_requires_eps():
    with pytest.raises(G.GadgetError):
        G.make_star_gadget("s4")
    with pytest.raises(G.GadgetError):
        G.make_star_gadget("s1", eps_tilde=ET)


def test_change_classification():
    g = G.make_star_gadget("s2_ii", S[:1], D[:1])
    ch = G.classify_change(g, G.standard_subtour(g, (0, 0)), G.standard_subtour(g, (1, 0)))
    assert str(ch) == "two_change(1)"
    g1 = G.make_star_gadget("s1")
    ch1 = G.classify_change(g1, G.standard_subtour(g1, (0,)), G.standard_subtour(g1, (1,)))
    assert ch1.kind != "other" and ch1.side == 1
    g4 = G.make_star_gadget("s4", eps_tilde=ET)
    ch4 = G.classify_change(g4, G.standard_subtour(g4, "b"), G.standard_subtour(g4, "c"))
    assert ch4.kind in ("two_change", "two_five_change")
    assert G.classify_change(g4, G.standard_subtour(g4, "h"), G.standard_subtour(g4, "i")).kind == "two_five_change"


def test_enumeration_size_guard():
    g = G.make_vertex_gadget("xor", 6)
    with pytest.raises(TooLarge):
        G.enumerate_subtours(g)


@pytest.mark.parametrize("q", [2, 3, 4, 5])
def test_ladder_paths_match_enumeration(q):
    g = G.make_vertex_gadget("xor", q)
    assert g.catalog["odd"] == G._ladder_path(g, "a", "b")
    assert g.catalog["even"] == G._ladder_path(g, "b", "a")


def test_large_xor_built_without_enumeration():
    g = G.make_vertex_gadget("xor", 7)
    assert G.involved_edges(G.standard_subtour(g, "odd"), G.standard_subtour(g, "even")) == 12


def test_json_dump_round_trips_through_json():
    data = json.loads(G.dump_catalogs(G.reference_gadgets()))
    kinds = [d["kind"] for d in data]
    assert kinds == list(SUBTOUR_COUNTS)
    s4 = data[-1]
    assert sorted(s4["catalog"]) == list(G.STAR4_LETTERS)


def test_unknown_kinds():
    with pytest.raises(G.GadgetError):
        G.make_vertex_gadget("raft")
    with pytest.raises(G.GadgetError):
        G.make_path_gadget(4)
    with pytest.raises(G.GadgetError):
        G.make_path_gadget(2, [1], [])
