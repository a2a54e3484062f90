"""Divisors, reduction, rank and rank-determining sets on metric graphs.

Points are strings such as ``"w1"`` or ``"e1@1/2"``; divisors are dicts
mapping points to integer coefficients.
"""

from ._tdl import (
    MetricGraph,
    TdlError,
    Workspace,
    canonical_divisor,
    construct_rds,
    dhar,
    fg_rank,
    is_minimal_rds,
    is_rank_determining,
    is_reduced,
    load_workspace,
    move_step,
    parse_workspace,
    rank,
    reduce,
    restricted_rank,
    rr_check,
)

__all__ = [
    "MetricGraph",
    "TdlError",
    "Workspace",
    "canonical_divisor",
    "construct_rds",
    "dhar",
    "fg_rank",
    "is_minimal_rds",
    "is_rank_determining",
    "is_reduced",
    "load_workspace",
    "move_step",
    "parse_workspace",
    "rank",
    "reduce",
    "restricted_rank",
    "rr_check",
]
