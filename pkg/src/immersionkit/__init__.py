"""Explicit immersion certificates for graphs with independence number at
most 2, with an independent verifier and brute-force oracles."""

from .builder import build_biclique_immersion, decompose, find_rich_pair
from .certificate import Biclique, CompleteTripartite, ImmersionCertificate
from .errors import ImmersionKitError, InternalAssertion, PreconditionViolated, SizeLimit
from .generators import GeneratorSpec, generate
from .graph import MultiGraph, SimpleGraph, alpha_at_most_2, complement, edge_critical_reduce, petersen
from .kempe import ProperColoring, chromatic_number_exact, kempe_component, kempe_immersion
from .matching import (
    ABPairs,
    Matching,
    bipartite_edge_coloring,
    disjoint_representative_matchings,
    hall_disjoint_AB_matchings,
)
from .verify import ClaimRecorder, VerificationReport, exhaustive_immersion_search, verify_certificate

__all__ = [
    "ABPairs",
    "Biclique",
    "ClaimRecorder",
    "CompleteTripartite",
    "GeneratorSpec",
    "ImmersionCertificate",
    "ImmersionKitError",
    "InternalAssertion",
    "Matching",
    "MultiGraph",
    "PreconditionViolated",
    "ProperColoring",
    "SimpleGraph",
    "SizeLimit",
    "VerificationReport",
    "alpha_at_most_2",
    "bipartite_edge_coloring",
    "build_biclique_immersion",
    "chromatic_number_exact",
    "complement",
    "decompose",
    "disjoint_representative_matchings",
    "edge_critical_reduce",
    "exhaustive_immersion_search",
    "find_rich_pair",
    "generate",
    "hall_disjoint_AB_matchings",
    "kempe_component",
    "kempe_immersion",
    "petersen",
    "verify_certificate",
]
