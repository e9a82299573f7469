from census import verify_bijection
from common.forms import Flavor
from common.ideals import class_group
from common.parsing.dot_export import class_group_graph, generating_set, matching_graph, node_labels, write_graph


def test_class_group_graph():
    """Test if the Cayley graph of the class group of -23 is a 3-cycle."""
    result = class_group(-23)
    graph = class_group_graph(result)
    assert node_labels(graph.to_string()) == {"(1,1,6)", "(2,1,3)", "(2,-1,3)"}, "Incorrect nodes"
    assert len(graph.get_edges()) == 3, "One generator should give one edge per class"


def test_generating_sets():
    assert generating_set(class_group(-23)) == [1]
    assert generating_set(class_group(-4)) == []
    assert len(generating_set(class_group(-84))) == 2


def test_matching_graph():
    """Test if the matching graph has a node per orbit and an edge per match."""
    report = verify_bijection(2, Flavor.PLAIN)
    graph = matching_graph(report)
    assert len(graph.get_nodes()) == 2 * len(report.matches), "Incorrect node count"
    assert len(graph.get_edges()) == len(report.matches), "Incorrect edge count"


def test_write_graph(tmp_path):
    path = write_graph(class_group_graph(class_group(-15)), tmp_path / "classgroup.dot")
    text = path.read_text()
    assert text.startswith("digraph")
    assert node_labels(text) == {"(1,1,4)", "(2,1,2)"}
