# ppgroup/handlers/__init__.py
"""
Initializes the handlers package and aggregates routers.
- Imports the CommandRouter instances from words.py and checks.py.
- ppgroup.main includes them, in this order, into the argument parser.
"""
from . import checks
from . import words

words_router = words.router
checks_router = checks.router

__all__ = [
    "words_router",
    "checks_router",
]
