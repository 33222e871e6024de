__all__ = [
    "sequences",
    "projective",
    "action",
    "parsing",
    "rewrite",
    "presentation",
    "bcalc",
    "diagrams",
    "decide",
    "settings_manager",
    "utils",
]
