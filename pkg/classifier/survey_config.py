# survey defaults

size_limit = 6
edge_probability = 0.5
survey_workers = 1
