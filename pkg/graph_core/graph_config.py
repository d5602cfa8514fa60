# presentation graph settings

# VertexSet is an int bitmask, so this is a soft limit on graph size
max_generators = 64


def get_max_generators() -> int:
    return max_generators
