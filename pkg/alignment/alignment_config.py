# alignment and divergence checker settings

# factor subpath length used by divergence_bound_check when none is given
default_k = 1
