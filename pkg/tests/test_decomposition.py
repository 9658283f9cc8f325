import pytest

from ribbongraph import (
    InvalidGraph,
    NotAJoinSummand,
    build_graph,
    classify_biseparation,
    classify_join_biseparation,
    enumerate_biseparations,
    is_biseparation,
    is_equivalent,
    is_join_biseparation,
    join,
    join_summand_splits,
    n_sum,
    prime_factorization,
    single_vertex,
    surface_stats,
    toggle_join_summand,
    toggles_related,
)
from ribbongraph.decomposition import (
    all_interleave_patterns,
    is_join_biseparation_bruteforce,
    summand_edge_sets,
)
from ribbongraph.topology import euler_genus
from ribbongraph.verify import biseparation_sequence_oracle


# -- constructors ----------------------------------------------------------------


def test_one_sum_patterns():
    loop_a = single_vertex("a a", "+")
    loop_b = single_vertex("b b", "+")
    alternating = n_sum(loop_a, loop_b, [("v", "v", "PQPQ")])
    assert euler_genus(alternating) == 2
    nested = n_sum(loop_a, loop_b, [("v", "v", "PPQQ")])
    assert euler_genus(nested) == 0


def test_two_sum_of_paths_gives_two_cycle(fixtures):
    pa = build_graph({"u": ["a.1"], "w": ["a.2"]}, {"a": "+"})
    pb = build_graph({"u": ["b.1"], "w": ["b.2"]}, {"b": "+"})
    g = n_sum(pa, pb, [("u", "u", "PQ"), ("w", "w", "PQ")])
    assert is_equivalent(g, fixtures["C"])


def test_n_sum_validation():
    loop_a = single_vertex("a a", "+")
    loop_b = single_vertex("b b", "+")
    with pytest.raises(InvalidGraph, match="at least one merged"):
        n_sum(loop_a, loop_b, [])
    with pytest.raises(InvalidGraph, match="reused"):
        n_sum(loop_a, loop_b, [("v", "v", "PQPQ"), ("v", "v", "PQPQ")])
    with pytest.raises(InvalidGraph, match="shared"):
        n_sum(loop_a, single_vertex("a a", "-"), [("v", "v", "PQPQ")])
    with pytest.raises(InvalidGraph, match="pattern"):
        n_sum(loop_a, loop_b, [("v", "v", "PQ")])


def test_join_adds_genus(fixtures):
    moebius = single_vertex("e e", "-")
    other = single_vertex("f f", "-")
    g = join(moebius, "v", other, "v")
    st = surface_stats(g)
    assert st.euler_genus == 2 and not st.orientable


def test_join_rejects_trivial():
    with pytest.raises(InvalidGraph, match="trivial"):
        join(single_vertex("e e", "-"), "v", build_graph({"x": []}, {}), "x")


def test_all_interleave_patterns_count():
    pats = list(all_interleave_patterns(2, 2))
    assert len(pats) == 6
    assert all(w.startswith("P") for w, _ in pats)


# -- biseparations ----------------------------------------------------------------


def test_certificate_interlaced_bouquet(fixtures):
    cert = is_biseparation(fixtures["T1"], {"a"})
    assert cert is not None and not cert.trivial
    assert len(cert.components) == 2
    assert len(cert.tree_edges) == 1
    assert cert.label == "plane"


def test_two_cycle_proper_subsets_fail(fixtures):
    assert is_biseparation(fixtures["C"], {"a"}) is None
    assert str(classify_biseparation(fixtures["C"], {"a"})) == "none"


def test_twisted_bouquet_has_two_crosscap_sides(fixtures):
    cert = is_biseparation(fixtures["N1"], {"a"})
    assert cert is not None
    assert cert.label == "other" and cert.genus_sum == 2
    assert str(classify_biseparation(fixtures["N1"], {"a"})) == "other(2)"


def test_trivial_classification(fixtures):
    moebius = single_vertex("e e", "-")
    c = classify_biseparation(moebius, {"e"})
    assert c.trivial and c.label == "rp2"
    c = classify_biseparation(fixtures["C"], set())
    assert c.trivial and c.label == "plane"


def test_biseparation_requires_connected():
    from ribbongraph import disjoint_union

    u = disjoint_union(single_vertex("a a", "+"), single_vertex("b b", "+"))
    with pytest.raises(InvalidGraph, match="connected"):
        is_biseparation(u, {"g0.a"})


def test_enumerate_biseparations(fixtures):
    assert enumerate_biseparations(fixtures["C"]) == [
        frozenset(),
        frozenset({"a", "b"}),
    ]
    assert enumerate_biseparations(fixtures["T1"], "plane") == [
        frozenset({"a"}),
        frozenset({"b"}),
    ]
    # both sides of this join carry a crosscap, so no subset is labelled rp2
    assert enumerate_biseparations(fixtures["MM"], "rp2") == []
    assert enumerate_biseparations(fixtures["MM"]) == [
        frozenset(),
        frozenset({"a"}),
        frozenset({"b"}),
        frozenset({"a", "b"}),
    ]


def test_enumeration_closed_under_complement(corpus3):
    for g in corpus3.graphs[:50]:
        subs = set(enumerate_biseparations(g))
        full = frozenset(g.edge_labels)
        assert all(full - s in subs for s in subs)


def test_sequence_oracle_matches_tree_criterion(fixtures):
    assert biseparation_sequence_oracle(fixtures["T1"], {"a"}) is not None
    assert biseparation_sequence_oracle(fixtures["C"], {"a"}) is None
    # a trivial subset has the whole graph as its single summand
    assert biseparation_sequence_oracle(fixtures["C"], set()) == [0]


# -- joins: splits, factors --------------------------------------------------------


def test_join_splits_nested(fixtures):
    splits = join_summand_splits(fixtures["nested"])
    assert ("v", frozenset({"a"})) in splits
    assert ("v", frozenset({"b"})) in splits


def test_join_splits_empty_for_prime(fixtures):
    assert join_summand_splits(fixtures["T1"]) == []
    assert join_summand_splits(fixtures["C"]) == []


def test_prime_factorization_prime(fixtures):
    for name in ("C", "T1", "N1", "G2"):
        tree = prime_factorization(fixtures[name])
        assert tree.n_factors == 1


def test_prime_factorization_joins(fixtures):
    tree = prime_factorization(fixtures["MM"])
    assert sorted(sorted(f) for f in tree.factors) == [["a"], ["b"]]
    assert tree.joints == (("v", (0, 1)),)
    triple = single_vertex("a a b b c c", "+++")
    tree = prime_factorization(triple)
    assert tree.n_factors == 3


def test_prime_factorization_order_independent(corpus3):
    # recompute the factor partition after every storage rotation; the split
    # search then visits vertices in different orders
    for g in corpus3.graphs[:40]:
        if g.n_edges < 2:
            continue
        want = sorted(sorted(f) for f in prime_factorization(g).factors)
        for name in g.vertex_names:
            h = g.rotated(name, 1)
            got = sorted(sorted(f) for f in prime_factorization(h).factors)
            assert got == want


def test_reassembly_reproduces_graph(corpus3):
    from ribbongraph import induced_subgraph

    for g in corpus3.graphs[:60]:
        if g.n_edges == 0:
            continue
        tree = prime_factorization(g)
        assert frozenset().union(*tree.factors) == frozenset(g.edge_labels)
        for f in tree.factors:
            assert join_summand_splits(induced_subgraph(g, f)) == []


def test_is_join_biseparation(fixtures):
    for g in (fixtures["C"], fixtures["MM"]):
        assert is_join_biseparation(g, set())
        assert is_join_biseparation(g, g.edge_labels)
    assert is_join_biseparation(fixtures["MM"], {"a"})
    assert not is_join_biseparation(fixtures["G2"], {"a"})


def test_join_biseparation_against_bruteforce(corpus3):
    from ribbongraph.duality import subsets_sorted

    for g in corpus3.graphs[:60]:
        for sub in subsets_sorted(g.edge_labels):
            assert is_join_biseparation(g, sub) == is_join_biseparation_bruteforce(
                g, sub
            )


def test_classify_join_biseparation(fixtures):
    nested = fixtures["nested"]
    assert classify_join_biseparation(nested, {"a"}) == "plane-join"
    moebius = single_vertex("e e", "-")
    loop = single_vertex("f f", "+")
    g = join(moebius, "v", loop, "v")
    assert classify_join_biseparation(g, {"e"}) == "rp2-join"
    assert classify_join_biseparation(fixtures["MM"], {"a"}) == "other-join"
    assert classify_join_biseparation(fixtures["G2"], {"a"}) == "none"


# -- toggling ---------------------------------------------------------------------


def test_toggle_join_summand(fixtures):
    mm = fixtures["MM"]
    assert toggle_join_summand(mm, set(), {"a"}) == frozenset({"a"})
    assert toggle_join_summand(mm, {"a"}, {"a"}) == frozenset()
    assert toggle_join_summand(mm, {"a"}, {"b"}) == frozenset({"a", "b"})
    with pytest.raises(NotAJoinSummand):
        toggle_join_summand(fixtures["G2"], set(), {"a"})


def test_summand_edge_sets(fixtures):
    assert summand_edge_sets(fixtures["T1"]) == [frozenset({"a", "b"})]
    got = summand_edge_sets(fixtures["MM"])
    assert frozenset({"a"}) in got and frozenset({"a", "b"}) in got


def test_toggles_related(fixtures):
    assert toggles_related(fixtures["T1"], {"a"}, {"a"}) == []
    seq = toggles_related(fixtures["T1"], {"a"}, {"b"})
    assert seq == [frozenset({"a", "b"})]
    nested = fixtures["nested"]
    for a in (frozenset(), frozenset({"a"}), frozenset({"b"}), frozenset({"a", "b"})):
        for b in (frozenset(), frozenset({"a"})):
            assert toggles_related(nested, a, b) is not None


def test_plane_sets_form_single_orbit(corpus3):
    from ribbongraph.verify import _orbit

    for g in corpus3.graphs[:60]:
        if g.n_edges == 0:
            continue
        from ribbongraph.duality import subsets_sorted

        plane = {
            s
            for s in subsets_sorted(g.edge_labels)
            if classify_biseparation(g, s).label == "plane"
            and classify_biseparation(g, s).exists
        }
        if plane:
            assert _orbit(g, min(plane, key=sorted)) == plane
