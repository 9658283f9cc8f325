import pytest

from ribbongraph import surface_stats
from ribbongraph.topology import euler_genus
from ribbongraph.verify import (
    CALIBRATION_EXPECTED,
    calibration_graphs,
    check_suite,
    enumerate_raw,
    generate,
)


def test_calibration_fixture_values():
    graphs = calibration_graphs()
    for name, (gamma, ori) in CALIBRATION_EXPECTED.items():
        st = surface_stats(graphs[name])
        assert (st.euler_genus, st.orientable) == (gamma, ori), name


def test_generate_counts_small():
    corpus = generate(2)
    assert len(corpus.by_edges(0)) == 1
    assert len(corpus.by_edges(1)) == 3
    one_vertex = [g for g in corpus.by_edges(2) if g.n_vertices == 1]
    assert sorted(euler_genus(g) for g in one_vertex) == [0, 1, 1, 2, 2, 2]


def test_generate_one_edge_classes():
    graphs = generate(1).by_edges(1)
    gammas = sorted((euler_genus(g), g.n_vertices) for g in graphs)
    assert gammas == [(0, 1), (0, 2), (1, 1)]


def test_exhaustive_matches_raw_enumeration():
    corpus = generate(3)
    raw = enumerate_raw(3)
    assert {g.canonical_code() for g in corpus.graphs} == {
        g.canonical_code() for g in raw
    }


def test_exhaustive_graphs_connected_and_distinct(corpus3):
    from ribbongraph import is_connected

    codes = set()
    for g in corpus3.graphs:
        assert is_connected(g)
        code = g.canonical_code()
        assert code not in codes
        codes.add(code)


def test_generate_random_deterministic():
    a = generate(4, mode="random", seed=7, count=25)
    b = generate(4, mode="random", seed=7, count=25)
    assert [g.canonical_code() for g in a.graphs] == [
        g.canonical_code() for g in b.graphs
    ]
    c = generate(4, mode="random", seed=8, count=25)
    assert [g.canonical_code() for g in a.graphs] != [
        g.canonical_code() for g in c.graphs
    ]


def test_generate_random_connected():
    from ribbongraph import is_connected

    corpus = generate(5, mode="random", seed=3, count=30)
    assert all(is_connected(g) for g in corpus.graphs)
    assert all(g.n_edges == 5 for g in corpus.graphs)


def test_generate_bounds():
    with pytest.raises(ValueError, match="desk scale"):
        generate(9)
    with pytest.raises(ValueError, match="mode"):
        generate(3, mode="typical")


def test_check_suite_names():
    with pytest.raises(ValueError, match="unknown check"):
        check_suite(generate(1), which=["nonsense"])


def test_check_suite_runs_clean(corpus3):
    report = check_suite(
        corpus3,
        which=[
            "calibration",
            "partial-dual-identities",
            "genus-decomposition",
            "low-genus-duals",
            "toggle-orbit",
            "same-genus-characterization",
        ],
    )
    assert report.ok
    assert all(r.checked > 0 for r in report.results)


def test_check_suite_report_serializes(corpus3):
    report = check_suite(corpus3, which=["calibration", "orientability-cross-check"])
    text = report.to_text(stable=True)
    assert "calibration" in text and "all checks passed" in text
    data = report.to_json(stable=True)
    assert data["ok"] is True
    assert all("seconds" not in c for c in data["checks"])


def test_check_suite_determinism(corpus3):
    kw = dict(which=["dual-composition", "calibration"], seed=11)
    a = check_suite(corpus3, **kw).to_json(stable=True)
    b = check_suite(corpus3, **kw).to_json(stable=True)
    assert a == b


def test_sampled_six_edge_graphs_hold_up():
    # beyond the exhaustive range the harness samples: spot-run the core
    # subset sweeps on a few random six-edge graphs
    corpus = generate(6, mode="random", seed=17, count=6)
    report = check_suite(
        corpus,
        which=["genus-decomposition", "low-genus-duals", "complement-symmetry"],
    )
    assert report.ok
    assert all(r.checked >= 6 * 64 for r in report.results)


def test_sequence_oracle_forced_root(fixtures):
    from ribbongraph.verify import biseparation_sequence_oracle

    cert_subsets = ({"a"}, {"b"})
    for sub in cert_subsets:
        for first in (0, 1):
            assert (
                biseparation_sequence_oracle(fixtures["T1"], sub, first=first)
                is not None
            )


def test_failure_reporting_round_trip():
    from ribbongraph.verify import CheckResult, VerificationReport

    res = CheckResult(name="demo")
    res.checked = 3
    res.fail(graph="ribbon v1\nvertex v:\n", subset=frozenset({"a"}), property="x")
    report = VerificationReport(params={}, results=[res])
    assert not report.ok
    text = report.to_text(stable=True)
    assert "FAIL" in text and "FAILURES FOUND" in text
    data = report.to_json(stable=True)
    assert data["ok"] is False
    assert data["checks"][0]["failures"][0]["subset"] == ["a"]


def test_failure_cap():
    from ribbongraph.verify import CheckResult

    res = CheckResult(name="demo")
    for i in range(40):
        res.fail(index=i)
    assert len(res.failures) == 25
    assert res.notes["more_failures"] == 15
