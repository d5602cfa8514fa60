from graph_core.presentation_graph import NAME_PATTERN, PresentationGraph
from utils.errors import GraphParseError


def _tokens(line: str) -> list[tuple[str, int]]:
    # (token, 1-based column)
    tokens = []
    column = 0
    for part in line.split():
        column = line.index(part, column)
        tokens.append((part, column + 1))
        column += len(part)
    return tokens


def parse_graph(text: str) -> PresentationGraph:
    """
    Parse a graph file.

    The format is line based: ``#`` starts a comment line, one
    ``vertices n1 n2 ...`` line fixes the generators and their order, and
    each ``edge u v`` line adds a commuting pair.

    Parameters
    ----------
    text : str
        The file contents.

    Returns
    -------
    PresentationGraph
        The graph with generators in declaration order.

    Raises
    ------
    GraphParseError
        On duplicate or unknown vertices, self-loops, duplicate edges, a
        missing or repeated vertices line, or an unknown keyword.
    """
    names: list[str] | None = None
    position: dict[str, int] = {}
    edges: list[tuple[str, str]] = []
    seen_edges: set[frozenset] = set()
    last_line = 0

    for line_number, line in enumerate(text.splitlines(), start=1):
        last_line = line_number
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = _tokens(line)
        keyword, keyword_column = tokens[0]

        if keyword == "vertices":
            if names is not None:
                raise GraphParseError("second vertices line", line_number, keyword_column)
            names = []
            for name, column in tokens[1:]:
                if not NAME_PATTERN.fullmatch(name):
                    raise GraphParseError(f"invalid vertex name '{name}'", line_number, column)
                if name in position:
                    raise GraphParseError(f"duplicate vertex '{name}'", line_number, column)
                position[name] = len(names)
                names.append(name)

        elif keyword == "edge":
            if names is None:
                raise GraphParseError("edge before the vertices line", line_number, keyword_column)
            if len(tokens) != 3:
                raise GraphParseError(f"edge needs exactly two vertices, got {len(tokens) - 1}", line_number, keyword_column)
            (u, u_column), (v, v_column) = tokens[1], tokens[2]
            for name, column in ((u, u_column), (v, v_column)):
                if name not in position:
                    raise GraphParseError(f"unknown vertex '{name}'", line_number, column)
            if u == v:
                raise GraphParseError(f"self-loop on '{u}'", line_number, v_column)
            key = frozenset((u, v))
            if key in seen_edges:
                raise GraphParseError(f"duplicate edge {u} {v}", line_number, keyword_column)
            seen_edges.add(key)
            edges.append((u, v))

        else:
            raise GraphParseError(f"unknown keyword '{keyword}'", line_number, keyword_column)

    if names is None:
        raise GraphParseError("missing vertices line", max(last_line, 1), 1)
    return PresentationGraph.from_edges(names, edges)


def serialize_graph(graph: PresentationGraph) -> str:
    """
    Canonical graph file text: the vertices line, then edges sorted by
    generator index.
    """
    lines = ["vertices " + " ".join(graph.names)]
    lines.extend(f"edge {graph.names[i]} {graph.names[j]}" for i, j in graph.edges())
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> PresentationGraph:
    """
    Read and parse a graph file.

    Raises
    ------
    GraphParseError
        If the file is not valid UTF-8 or does not parse.
    OSError
        If the file cannot be read.
    """
    with open(path, "rb") as handle:
        data = handle.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as error:
        line_start = data.rfind(b"\n", 0, error.start) + 1
        line = data.count(b"\n", 0, error.start) + 1
        raise GraphParseError("invalid UTF-8", line, error.start - line_start + 1) from None
    return parse_graph(text)
