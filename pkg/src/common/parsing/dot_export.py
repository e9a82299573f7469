"""Grafos pydot: grafos de Cayley de grupos de clases y emparejamientos de censos."""

import logging
from pathlib import Path
from typing import List, Optional, Set

import pydot

from common.ideals import ClassGroupResult

logger = logging.getLogger(__name__)


def _label(values) -> str:
    return "(" + ",".join(str(int(v)) for v in values) + ")"


def generating_set(result: ClassGroupResult) -> List[int]:
    """Generadores voraces: cada uno es el primer elemento fuera del subgrupo actual."""
    reached: Set[int] = {result.identity}
    gens: List[int] = []
    for i in range(result.class_number):
        if i in reached:
            continue
        gens.append(i)
        frontier = list(reached)
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = int(result.table[x, g])
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
    return gens


def class_group_graph(result: ClassGroupResult, generators: Optional[List[int]] = None) -> pydot.Dot:
    graph = pydot.Dot(f"classgroup_D{abs(result.discriminant)}", graph_type="digraph")
    gens = generating_set(result) if generators is None else generators
    for i, f in enumerate(result.forms):
        graph.add_node(pydot.Node(f"c{i}", label=_label(f.coeffs())))
    for g in gens:
        for i in range(result.class_number):
            j = int(result.table[i, g])
            graph.add_edge(pydot.Edge(f"c{i}", f"c{j}", label=_label(result.forms[g].coeffs())))
    return graph


def matching_graph(report) -> pydot.Dot:
    """Órbitas de formas a la izquierda, clases de pares a la derecha, una arista por pareja."""
    graph = pydot.Dot("census", graph_type="digraph", rankdir="LR")
    for i, (form, pair) in enumerate(report.matches):
        graph.add_node(pydot.Node(f"f{i}", label=_label(form), shape="box"))
        graph.add_node(pydot.Node(f"p{i}", label=_label(pair), shape="ellipse"))
        graph.add_edge(pydot.Edge(f"f{i}", f"p{i}"))
    return graph


def write_graph(graph: pydot.Dot, path) -> Path:
    """Escribe texto DOT, o SVG cuando la ruta termina en .svg (requiere Graphviz)."""
    path = Path(path)
    if path.suffix == ".svg":
        graph.write_svg(str(path))
    else:
        path.write_text(graph.to_string())
    logger.info("graph written to %s", path)
    return path


def node_labels(dot_text: str) -> Set[str]:
    """Etiquetas de los nodos de un grafo DOT."""
    graphs = pydot.graph_from_dot_data(dot_text)
    labels = set()
    for graph in graphs or []:
        for node in graph.get_nodes():
            label = node.get("label")
            if label is not None:
                labels.add(label.strip('"'))
    return labels
