"""Casimir invariants of the centrally extended l-conformal Galilei algebra."""

from .algebra import AlgebraSpec, Eta, Gen, HalfInt, LieCombo, bracket, dimension, generators, jacobi_check
from .casimir import (
    CasimirCatalog,
    build_catalog,
    build_script_L,
    build_script_M,
    identity_check,
    pfaffian_casimir,
    quartic_casimir,
    trace_casimir,
)
from .count import RankReport, casimir_count, commutator_matrix, expected_count, rank_ff
from .errors import ConfigurationError, DomainError
from .uea import UEAElement, commutator, embed, multiply, set_central_charge
from .verify import (
    CentralityReport,
    check_eq4,
    check_eq8,
    check_rotation_relations,
    check_sl2_relations,
    check_z_limit,
    is_central,
)

__version__ = "0.1.0"
