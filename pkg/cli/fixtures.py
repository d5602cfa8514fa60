# built-in graphs, stored as graph files

from cli.graph_file import parse_graph
from graph_core.presentation_graph import PresentationGraph
from utils.errors import InputError

FIXTURES = {
    "C4": """
# square
vertices a b c d
edge a b
edge b c
edge c d
edge d a
""",
    "C5": """
# pentagon
vertices a b c d e
edge a b
edge b c
edge c d
edge d e
edge e a
""",
    "C6": """
# hexagon
vertices a b c d e f
edge a b
edge b c
edge c d
edge d e
edge e f
edge f a
""",
    "K3": """
vertices a b c
edge a b
edge b c
edge a c
""",
    "P3": """
vertices a b c
edge a b
edge b c
""",
    "BOWTIE": """
# two triangles sharing z
vertices a b c d z
edge a b
edge a z
edge b z
edge c d
edge c z
edge d z
""",
    "SUS4": """
# square suspended from the non-adjacent pair s, t
vertices a b c d s t
edge a b
edge b c
edge c d
edge d a
edge s a
edge s b
edge s c
edge s d
edge t a
edge t b
edge t c
edge t d
""",
    "G7": """
vertices c1 c2 k1 k2 x y z
edge c1 k1
edge c1 k2
edge c2 k1
edge c2 k2
edge x c1
edge x c2
edge y c1
edge y c2
edge z k1
edge z k2
""",
}


def fixture_names() -> list[str]:
    return list(FIXTURES)


def load_fixture(name: str) -> PresentationGraph:
    """
    Return a built-in graph by name.

    Raises
    ------
    InputError
        If there is no fixture with that name.
    """
    if name not in FIXTURES:
        raise InputError(f"Unknown fixture '{name}'. Available: {', '.join(FIXTURES)}.")
    return parse_graph(FIXTURES[name])
