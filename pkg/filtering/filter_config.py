# filter construction settings

# rows grow at least geometrically with depth, so builds are capped
max_filter_vertices = 200_000
default_depth = 3


def get_max_filter_vertices() -> int:
    return max_filter_vertices
