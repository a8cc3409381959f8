"""Exact Koszul cohomology of the Segre embeddings of P1 x P1 in bidegree (a, b).

Betti numbers and their bidegree decompositions come from ``koszul``; the
explicit resolutions used to bound the end of the first row live in
``resolutions``; ``cocycles`` writes down the syzygies that realise it.
"""

from .cocycles import (CocycleExpression, QuadricIdealBasis, claim_witness_check,
                       cocycle_horizontal, cocycle_vertical, independence_and_count,
                       verify_cocycle)
from .errors import (BothModuleElements, InvalidParameters, InvalidPointSet,
                     OutOfImplementedRange, OutOfTheoremRange)
from .koszul import (BettiTable, BidegreeTable, KoszulEngine, betti_number, bidegree_table,
                     closed_form_a2, closed_form_first_row, full_betti_table, koszul_block)
from .linalg import DEFAULT_FIELD, GF, QQ, Field, SparseExactMatrix, kernel_basis, rank
from .rings import Bidegree, scroll, scroll_module, segre, segre_scroll

__version__ = "0.1.0"

__all__ = [
    "BettiTable", "BidegreeTable", "Bidegree", "BothModuleElements", "CocycleExpression",
    "DEFAULT_FIELD", "Field", "GF", "InvalidParameters", "InvalidPointSet", "KoszulEngine",
    "OutOfImplementedRange", "OutOfTheoremRange", "QQ", "QuadricIdealBasis",
    "SparseExactMatrix", "betti_number", "bidegree_table", "claim_witness_check",
    "closed_form_a2", "closed_form_first_row", "cocycle_horizontal", "cocycle_vertical",
    "full_betti_table", "independence_and_count", "kernel_basis", "koszul_block", "rank",
    "scroll", "scroll_module", "segre", "segre_scroll", "verify_cocycle",
]
