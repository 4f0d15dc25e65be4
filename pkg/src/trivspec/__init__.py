"""Exact toolkit for trivial-spectrum matrix spaces over division algebras.

Everything is exact: prime fields, rationals, univariate rational function
fields, structure-constant division algebras, matrices over them, operator
spaces, alternators, generic matrices and the brute-force oracles that
certify the dimension bounds.  A FastAPI service (trivspec.service) and a
thin batch CLI (trivspec.cli) expose the verification pipelines.
"""

__version__ = "0.1.0"

from .spaces import alpha

__all__ = ["alpha", "__version__"]
