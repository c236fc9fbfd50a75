"""ktruss CLI - convert graphs, compute K-trusses, verify and benchmark.

Command-line front-end for the eager-ktruss library.
"""

from eager_ktruss import __version__

__description__ = "Parallel Eager K-truss: convert, truss, verify, bench, generate"
__all__ = ["__description__", "__version__"]
