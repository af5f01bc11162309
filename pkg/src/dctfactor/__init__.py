"""Sparse recursive factorizations of the DCT-2 with exact op counting.

The package is organized around four layers: brute-force reference
definitions (:mod:`dctfactor.chebyshev`), a small formula IR for
structured linear transforms (:mod:`dctfactor.formula`), builders for
the recursive DCT-2 / skew DCT-4 factorizations
(:mod:`dctfactor.factorize`), and lowering to straight-line programs
with DOT/listing emission (:mod:`dctfactor.flowgraph`).
"""

from .chebyshev import (
    ChebKind,
    ZeroList,
    cheb_eval,
    dct2_zeros,
    ref_matrix,
    scaling_diag,
    skew_zeros,
)
from .factorize import (
    b_c2,
    bb_c4,
    build_dct2,
    build_dct2_bar,
    build_dct4_bar,
    closed_form_core_mults,
    perm_p,
    stride_perm,
)
from .formula import (
    Diagonal,
    DirectSum,
    FormulaNode,
    Identity,
    OpCount,
    Permutation,
    Product,
    SparseEntry,
    SparseStep,
    apply,
    op_count,
    to_dense,
    validate,
)
from .flowgraph import (
    Instruction,
    StraightLineProgram,
    emit_dot,
    emit_listing,
    execute,
    instruction_counts,
    lower,
)

__version__ = "0.1.0"

__all__ = [
    "ChebKind",
    "Diagonal",
    "DirectSum",
    "FormulaNode",
    "Identity",
    "Instruction",
    "OpCount",
    "Permutation",
    "Product",
    "SparseEntry",
    "SparseStep",
    "StraightLineProgram",
    "ZeroList",
    "apply",
    "b_c2",
    "bb_c4",
    "build_dct2",
    "build_dct2_bar",
    "build_dct4_bar",
    "cheb_eval",
    "closed_form_core_mults",
    "dct2_zeros",
    "emit_dot",
    "emit_listing",
    "execute",
    "instruction_counts",
    "lower",
    "op_count",
    "perm_p",
    "ref_matrix",
    "scaling_diag",
    "skew_zeros",
    "stride_perm",
    "to_dense",
    "validate",
]
