"""Commutativity preserving extensions of finite groups.

Exact computation of Bogomolov multipliers, CP cohomology, CP covers and
isoclinism for small finite groups given by Cayley tables.
"""

from ._accel import backend_name
from .catalog import catalog_entries, get_group, resolve_group
from .cohomology import (
    Cocycle,
    GModule,
    coboundary,
    cohomology_group,
    multiplier_invariants,
    relation_model,
    uct_decomposition,
)
from .exterior import cp_quotient_oracle_checks, exterior_report, multiplier_oracle
from .extensions import (
    CentralExtensionData,
    central_cp_quotient_check,
    check_cp_extension,
    cp_cover,
    extension_from_bundle,
    realize_extension,
    verify_cover,
)
from .groups import (
    FiniteGroup,
    abelian_group,
    build_group,
    commuting_probability,
    cyclic_group,
    direct_product,
    group_from_permutations,
    group_from_presentation,
    quotient_group,
    semidirect_product,
    structure_report,
)
from .isoclinism import (
    are_isoclinic,
    are_isomorphic,
    automorphisms,
    cp_extension_isoclinism_classes,
    extensions_isoclinic,
)
from .suites import run_suite

__version__ = "0.1.0"

__all__ = [
    "CentralExtensionData", "Cocycle", "FiniteGroup", "GModule", "abelian_group", "are_isoclinic",
    "are_isomorphic", "automorphisms", "backend_name", "build_group", "catalog_entries", "central_cp_quotient_check",
    "check_cp_extension", "coboundary", "cohomology_group", "commuting_probability",
    "cp_cover", "cp_extension_isoclinism_classes", "cp_quotient_oracle_checks", "cyclic_group",
    "direct_product", "extension_from_bundle", "extensions_isoclinic", "exterior_report", "get_group",
    "group_from_permutations", "group_from_presentation", "multiplier_invariants", "multiplier_oracle",
    "quotient_group", "realize_extension", "relation_model", "resolve_group", "run_suite",
    "semidirect_product", "structure_report", "uct_decomposition", "verify_cover",
]
