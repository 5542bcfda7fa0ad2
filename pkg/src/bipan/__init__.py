"""Bipartite bipancyclicity toolkit.

Core graph values live in :mod:`bipan.bigraph`, the cycle spectrum engine in
:mod:`bipan.cycles`, the chord-pattern machinery in :mod:`bipan.shortcuts`
and :mod:`bipan.directions`, adversarial deletions in :mod:`bipan.adversary`,
and the experiment drivers plus CLI in :mod:`bipan.experiments` /
:mod:`bipan.cli`.
"""

from .bigraph import (
    BalancedBipartiteGraph,
    ParityPermutation,
    RandomModel,
    chernoff_tail_bound,
    circ_dist,
    complete_bipartite,
    make_graph,
    remove_edges,
    sample_random,
)
from .cycles import (
    CycleCertificate,
    even_cycle_spectrum,
    find_cycle_of_length,
    hamiltonian_bruteforce,
    is_bipancyclic,
    standard_hamilton,
    validate_cycle,
)

__all__ = [
    "BalancedBipartiteGraph",
    "ParityPermutation",
    "RandomModel",
    "CycleCertificate",
    "chernoff_tail_bound",
    "circ_dist",
    "complete_bipartite",
    "even_cycle_spectrum",
    "find_cycle_of_length",
    "hamiltonian_bruteforce",
    "is_bipancyclic",
    "make_graph",
    "remove_edges",
    "sample_random",
    "standard_hamilton",
    "validate_cycle",
]

__version__ = "0.1.0"
