from dataclasses import dataclass

from filtering.filter_graph import Filter
from utils.utils import format_word


@dataclass(frozen=True)
class DotOptions:
    name: str = "filter"
    show_elements: bool = False


def _vertex_name(filt: Filter, index: int) -> str:
    vertex = filt.vertices[index]
    return f"v{vertex.level}_{vertex.planar_index}"


def export_dot(filt: Filter, options: DotOptions = DotOptions()) -> str:
    """
    Render a filter as a DOT digraph, one rank per level.

    Vertices are named ``v<level>_<planar index>``; edges carry the generator
    name as label and non-tree edges are dashed. Output depends only on the
    filter.

    Parameters
    ----------
    filt : Filter
        The filter to render.
    options : DotOptions, optional
        Graph name and whether to label vertices with their elements.

    Returns
    -------
    str
        The DOT text.
    """
    graph = filt.graph
    lines = [f"digraph {options.name} {{", "\trankdir=BT;", "\tnode [shape=point];" if not options.show_elements else "\tnode [shape=plaintext];"]

    for row in filt.levels:
        lines.append("\t{")
        lines.append("\t\trank = same;")
        for index in row:
            label = format_word(graph, filt.vertices[index].element.word) if options.show_elements else ""
            lines.append(f'\t\t"{_vertex_name(filt, index)}" [label="{label}"];')
        lines.append("\t}")

    for row in filt.levels:
        for index in row:
            for edge_index in filt.vertices[index].up_edges:
                edge = filt.edges[edge_index]
                style = "" if edge.is_tree else ", style=dashed"
                lines.append(
                    f'\t"{_vertex_name(filt, edge.source)}" -> "{_vertex_name(filt, edge.target)}" '
                    f'[label="{graph.names[edge.label]}"{style}];'
                )

    lines.append("}")
    return "\n".join(lines) + "\n"


def write_dot(filt: Filter, path: str, options: DotOptions = DotOptions()) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(export_dot(filt, options))
