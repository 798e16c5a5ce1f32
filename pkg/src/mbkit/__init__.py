"""Realizations of minimal multiplicity bipartitions for graphs with two distinct eigenvalues."""
from .errors import (
    CertificationError,
    ConstructionError,
    GuardError,
    Graph6Error,
    MBKitError,
    PreconditionError,
    RotationError,
)
from .graphs import Graph
from .graph6 import encode_graph6, parse_graph6
from .realizations import RealizationCertificate, Tolerances, certify

__all__ = [
    "CertificationError",
    "ConstructionError",
    "Graph",
    "Graph6Error",
    "GuardError",
    "MBKitError",
    "PreconditionError",
    "RealizationCertificate",
    "RotationError",
    "Tolerances",
    "certify",
    "encode_graph6",
    "parse_graph6",
]
