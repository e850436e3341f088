"""Exact toolkit for regular families on N, ordinal indices, and mixed
Tsirelson norms.

The heavy lifting lives in the C++ extension ``schreier._core``; this package
re-exports its surface.
"""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __doc__ as _core_doc
except ImportError:  # running against a build tree with the module on sys.path
    from _core import *  # noqa: F401,F403
    from _core import __doc__ as _core_doc

__all__ = [
    "Ordinal",
    "Family",
    "Space",
    "DslParseError",
    "hessenberg",
    "hessenberg_decompositions",
    "fundamental_sequence",
    "iota",
    "rank",
    "in_derivative",
    "rank_oracle",
    "is_spread",
    "is_subset",
    "family_sup_norm",
    "norm",
    "tsirelson_implicit_rhs",
    "l1_lower_certificate",
    "direct_sum_norm",
    "schreier_sum_witness",
    "search_sum_witness",
    "run_cli",
    "selftest",
]
