"""Explicit resolutions: Eagon-Northcott complexes of scroll modules, the
relative resolution of the Segre ring over the scroll, chain maps between
them, the mapping-cone bookkeeping and the kernel computation at the end of
the first row."""

from .chainmaps import (alpha_boundary_agrees, epsilon, epsilon_term, horizontal_chain_map,
                        verify_chain_map_squares)
from .cone import ConeSummand, MappingConeLedger, mapping_cone_ledger
from .en import ENResolution, en_resolution_degree_piece, verify_en_exactness
from .free import ChainSlice, CheckLine, CheckReport, FreeModule, PolyMap, check_chain_slice
from .kernel_lemma import kernel_basis_expressions, kernel_map, verify_kernel_lemma
from .relative import (position_basis, relative_map, relative_resolution_degree_piece,
                       verify_relative_exactness)

__all__ = [
    "ChainSlice", "CheckLine", "CheckReport", "ConeSummand", "ENResolution", "FreeModule",
    "MappingConeLedger", "PolyMap", "alpha_boundary_agrees", "check_chain_slice",
    "en_resolution_degree_piece", "epsilon", "epsilon_term", "horizontal_chain_map",
    "kernel_basis_expressions", "kernel_map", "mapping_cone_ledger", "position_basis",
    "relative_map", "relative_resolution_degree_piece", "verify_chain_map_squares",
    "verify_en_exactness", "verify_kernel_lemma", "verify_relative_exactness",
]
