"""Multichromatic numbers of Kneser graphs: constructions, bounds, reductions and exact search."""

__version__ = "0.1.0"

from .bounds import (
    AffineBound,
    BoundReport,
    Provenance,
    best_bounds,
    known_status,
    lb_ekr,
    lb_osztenyi,
    lb_split_eval,
    lb_split_opt,
    lb_stahl98,
    ub_stahl,
)
from .colouring import (
    MultiColouring,
    combine,
    construct_stahl_colouring,
    decompose,
    identity_colouring,
    pullback,
    verify_colouring,
)
from .combinatorics import KneserParams, binom, colex_rank, colex_unrank, enumerate_ksubsets, kneser_adjacent
from .errors import DomainError, InvalidColouring
from .homomorphism import VertexMap, bipartite_collapse, iterate_phi, stahl_phi, verify_homomorphism
from .reduction import checklist, independence, n0_analytic, n0_exact, propagate_counterexample, q0, q0_estimates
from .solver import SearchBudget, chi_multi, is_colourable, mutual_colourability
