"""Solver toolkit for simultaneous feedback vertex set on edge-colored multigraphs."""

from ._simfvs import (
    EdgeColoredGraph,
    KernelResult,
    ReduceResult,
    brute_force_min_simfvs,
    from_hitting_set,
    kernelize,
    parse_ecg,
    phs_to_simfvs,
    random_instance,
    reduce_exhaustive,
    serialize_ecg,
    solve,
    two_approx_fvs,
    verify_solution,
)

__all__ = [
    "EdgeColoredGraph",
    "KernelResult",
    "ReduceResult",
    "brute_force_min_simfvs",
    "from_hitting_set",
    "kernelize",
    "parse_ecg",
    "phs_to_simfvs",
    "random_instance",
    "reduce_exhaustive",
    "serialize_ecg",
    "solve",
    "two_approx_fvs",
    "verify_solution",
]
