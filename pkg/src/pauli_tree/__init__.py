"""Pauli decomposition of 2^n x 2^n matrices by a tree walk over Pauli strings."""

from .algebra import block_diagonal, direct_sum, hermitian_augment, linear_combination, product
from .block_encoding import (
    Circuit,
    build_lcu_circuit,
    circuit_from_json,
    circuit_to_json,
    simulate,
    verify_block_encoding,
)
from .decompose import (
    TreeState,
    compute_coefficient,
    decompose_general,
    decompose_naive,
    decompose_structured,
    predicted_op_count,
    update_tree,
    walk,
)
from .decomposition import DEFAULT_PRUNE_TOL, Decomposition
from .io import (
    autodetect_structure,
    read_decomposition,
    read_matrix,
    write_decomposition,
    write_matrix,
)
from .parallel import DecompositionError, decompose_parallel, plan_forest, run_forest
from .pauli import SparsePauliOperator, compose, parse_pauli, string_product
from .sources import BandSource, DenseSource, DiagonalSource, FunctionSource, PaddingWarning
from .structure import (
    ANTIDIAGONAL,
    DIAGONAL,
    GENERAL,
    TRIDIAGONAL,
    Structure,
    allowed_support,
    band,
    parse_structure,
)

__version__ = "0.1.0"

__all__ = [
    "ANTIDIAGONAL", "DIAGONAL", "GENERAL", "TRIDIAGONAL", "DEFAULT_PRUNE_TOL",
    "BandSource", "Circuit", "Decomposition", "DecompositionError", "DenseSource",
    "DiagonalSource", "FunctionSource", "PaddingWarning", "SparsePauliOperator",
    "Structure", "TreeState", "allowed_support", "autodetect_structure", "band",
    "block_diagonal", "build_lcu_circuit", "circuit_from_json", "circuit_to_json",
    "compose", "compute_coefficient", "decompose_general", "decompose_naive",
    "decompose_parallel", "decompose_structured", "direct_sum", "hermitian_augment",
    "linear_combination", "parse_pauli", "parse_structure", "plan_forest",
    "predicted_op_count", "product", "read_decomposition", "read_matrix", "run_forest",
    "simulate", "string_product", "update_tree", "verify_block_encoding", "walk",
    "write_decomposition", "write_matrix",
]
