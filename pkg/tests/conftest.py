import pytest

from ribbongraph import build_graph, single_vertex
from ribbongraph.verify import generate


@pytest.fixture(scope="session")
def corpus3():
    return generate(3)


@pytest.fixture(scope="session")
def corpus4():
    return generate(4)


@pytest.fixture(scope="session")
def corpus5():
    return generate(5)


@pytest.fixture(scope="session")
def fixtures():
    """The calibration graphs, by short name."""
    return {
        "loop": single_vertex("e e", "+"),
        "moebius": single_vertex("e e", "-"),
        "C": build_graph({"u": ["a.1", "b.1"], "w": ["a.2", "b.2"]}, {"a": "+", "b": "+"}),
        "D": build_graph({"u": ["a.1", "b.1"], "w": ["a.2", "b.2"]}, {"a": "+", "b": "-"}),
        "T1": single_vertex("a b a b", "++"),
        "N1": single_vertex("a b a b", "--"),
        "G2": single_vertex("a b a c b c", "+++"),
        "G2alt": single_vertex("a b c a c b", "+++"),
        "nested": single_vertex("a a b b", "++"),
        "MM": single_vertex("a a b b", "--"),
    }
