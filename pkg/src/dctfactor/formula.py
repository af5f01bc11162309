"""Algebraic IR for structured linear transforms.

A transform is a tree of :data:`FormulaNode` values: identities,
permutations, diagonals, explicit sparse steps, direct sums, and products
(applied right to left, matching matrix notation).  The tree supports
exact evaluation (:func:`apply`), densification (:func:`to_dense`) and
nontrivial-operation counting (:func:`op_count`).

Counting convention: a coefficient is free exactly when the builder
emitted it as a literal +1 or -1 (the ``trivial`` flag); subtractions
count as additions.  The flag is structural, not a numeric comparison,
so a materialized coefficient that merely rounds to 1.0 still counts as
a multiplication.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Union

import numpy as np

__all__ = [
    "Diagonal",
    "DirectSum",
    "FormulaNode",
    "Identity",
    "OpCount",
    "Permutation",
    "Product",
    "SparseEntry",
    "SparseStep",
    "apply",
    "cols",
    "minus",
    "op_count",
    "plus",
    "rows",
    "times",
    "to_dense",
    "validate",
]


class SparseEntry(NamedTuple):
    """One matrix entry of a sparse step: column, coefficient, triviality."""

    col: int
    coeff: float
    trivial: bool


def plus(col: int) -> SparseEntry:
    """Entry +1 at ``col`` (free)."""
    return SparseEntry(col, 1.0, True)


def minus(col: int) -> SparseEntry:
    """Entry -1 at ``col`` (free)."""
    return SparseEntry(col, -1.0, True)


def times(col: int, coeff: float) -> SparseEntry:
    """Entry ``coeff`` at ``col``, counted as a multiplication."""
    return SparseEntry(col, float(coeff), False)


class OpCount(NamedTuple):
    """Nontrivial multiplication and addition totals."""

    mults: int
    adds: int

    def __add__(self, other: "OpCount") -> "OpCount":  # type: ignore[override]
        return OpCount(self.mults + other.mults, self.adds + other.adds)


@dataclass(frozen=True)
class Identity:
    n: int


@dataclass(frozen=True)
class Permutation:
    """Output permutation: applying it yields ``y[i] = x[map[i]]``."""

    map: tuple[int, ...]
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "map", tuple(self.map))


@dataclass(frozen=True)
class Diagonal:
    """Diagonal matrix.  Entries equal to an exact literal +-1.0 are free
    unless an explicit ``trivial`` mask says otherwise."""

    values: tuple[float, ...]
    trivial: tuple[bool, ...] = field(default=())
    label: str = ""

    def __post_init__(self) -> None:
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        if not self.trivial:
            object.__setattr__(
                self, "trivial", tuple(v in (1.0, -1.0) for v in values)
            )
        else:
            object.__setattr__(self, "trivial", tuple(self.trivial))


@dataclass(frozen=True)
class SparseStep:
    """Explicit sparse matrix given row by row; the op-counting unit."""

    rows: int
    cols: int
    row_entries: tuple[tuple[SparseEntry, ...], ...]
    label: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "row_entries", tuple(tuple(row) for row in self.row_entries)
        )


@dataclass(frozen=True)
class DirectSum:
    """Block-diagonal composition of children."""

    children: tuple["FormulaNode", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class Product:
    """Matrix product of children; the rightmost child is applied first."""

    children: tuple["FormulaNode", ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "children", tuple(self.children))


FormulaNode = Union[Identity, Permutation, Diagonal, SparseStep, DirectSum, Product]


def rows(node: FormulaNode) -> int:
    """Row count of the represented matrix (no validation)."""
    if isinstance(node, Identity):
        return node.n
    if isinstance(node, Permutation):
        return len(node.map)
    if isinstance(node, Diagonal):
        return len(node.values)
    if isinstance(node, SparseStep):
        return node.rows
    if isinstance(node, DirectSum):
        return sum(rows(c) for c in node.children)
    if isinstance(node, Product):
        return rows(node.children[0])
    raise TypeError(f"not a FormulaNode: {type(node).__name__}")


def cols(node: FormulaNode) -> int:
    """Column count of the represented matrix (no validation)."""
    if isinstance(node, (Identity, Permutation, Diagonal)):
        return rows(node)
    if isinstance(node, SparseStep):
        return node.cols
    if isinstance(node, DirectSum):
        return sum(cols(c) for c in node.children)
    if isinstance(node, Product):
        return cols(node.children[-1])
    raise TypeError(f"not a FormulaNode: {type(node).__name__}")


def validate(node: FormulaNode) -> tuple[int, int]:
    """Check structural invariants recursively; return ``(rows, cols)``.

    Raises ValueError on dimension mismatches inside products,
    non-bijective permutations, malformed sparse rows, or inconsistent
    triviality flags.
    """
    if isinstance(node, Identity):
        if node.n < 1:
            raise ValueError(f"identity size must be positive, got {node.n}")
        return node.n, node.n
    if isinstance(node, Permutation):
        n = len(node.map)
        if sorted(node.map) != list(range(n)):
            raise ValueError(f"permutation map is not a bijection: {node.map}")
        return n, n
    if isinstance(node, Diagonal):
        n = len(node.values)
        if n == 0:
            raise ValueError("diagonal must be nonempty")
        if len(node.trivial) != n:
            raise ValueError("diagonal triviality mask has wrong length")
        for v, t in zip(node.values, node.trivial):
            if not np.isfinite(v):
                raise ValueError(f"diagonal entry is not finite: {v}")
            if t and v not in (1.0, -1.0):
                raise ValueError(f"entry flagged trivial but equals {v}")
        return n, n
    if isinstance(node, SparseStep):
        if len(node.row_entries) != node.rows:
            raise ValueError(
                f"sparse step declares {node.rows} rows but has {len(node.row_entries)}"
            )
        for i, row in enumerate(node.row_entries):
            if not row:
                raise ValueError(f"sparse step row {i} is empty")
            seen = set()
            for entry in row:
                if not 0 <= entry.col < node.cols:
                    raise ValueError(f"row {i}: column {entry.col} out of range")
                if entry.col in seen:
                    raise ValueError(f"row {i}: duplicate column {entry.col}")
                seen.add(entry.col)
                if entry.coeff == 0.0:
                    raise ValueError(f"row {i}: zero coefficient at column {entry.col}")
                if entry.trivial and entry.coeff not in (1.0, -1.0):
                    raise ValueError(
                        f"row {i}: entry flagged trivial but equals {entry.coeff}"
                    )
        return node.rows, node.cols
    if isinstance(node, DirectSum):
        if not node.children:
            raise ValueError("direct sum must have at least one child")
        dims = [validate(c) for c in node.children]
        return sum(r for r, _ in dims), sum(c for _, c in dims)
    if isinstance(node, Product):
        if not node.children:
            raise ValueError("product must have at least one child")
        dims = [validate(c) for c in node.children]
        for (_, c_left), (r_right, _) in zip(dims, dims[1:]):
            if c_left != r_right:
                raise ValueError(
                    f"product dimension mismatch: {c_left} columns feed {r_right} rows"
                )
        return dims[0][0], dims[-1][1]
    raise TypeError(f"not a FormulaNode: {type(node).__name__}")


def apply(node: FormulaNode, x: np.ndarray) -> np.ndarray:
    """Evaluate ``y = node @ x`` exactly as the tree prescribes."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != cols(node):
        raise ValueError(
            f"input length {x.shape} does not match node columns {cols(node)}"
        )
    return _apply(node, x)


def _apply(node: FormulaNode, x: np.ndarray) -> np.ndarray:
    if isinstance(node, Identity):
        return x.copy()
    if isinstance(node, Permutation):
        return x[np.asarray(node.map)]
    if isinstance(node, Diagonal):
        return np.asarray(node.values) * x
    if isinstance(node, SparseStep):
        y = np.empty(node.rows, dtype=float)
        for i, row in enumerate(node.row_entries):
            acc = 0.0
            for entry in row:
                acc += entry.coeff * x[entry.col]
            y[i] = acc
        return y
    if isinstance(node, DirectSum):
        parts = []
        offset = 0
        for child in node.children:
            w = cols(child)
            parts.append(_apply(child, x[offset:offset + w]))
            offset += w
        return np.concatenate(parts)
    if isinstance(node, Product):
        for child in reversed(node.children):
            x = _apply(child, x)
        return x
    raise TypeError(f"not a FormulaNode: {type(node).__name__}")


def to_dense(node: FormulaNode) -> np.ndarray:
    """Dense matrix of the node; permutations and identities are exact."""
    if isinstance(node, Identity):
        return np.eye(node.n)
    if isinstance(node, Permutation):
        out = np.zeros((len(node.map),) * 2)
        for i, j in enumerate(node.map):
            out[i, j] = 1.0
        return out
    if isinstance(node, Diagonal):
        return np.diag(np.asarray(node.values, dtype=float))
    if isinstance(node, SparseStep):
        out = np.zeros((node.rows, node.cols))
        for i, row in enumerate(node.row_entries):
            for entry in row:
                out[i, entry.col] = entry.coeff
        return out
    if isinstance(node, DirectSum):
        blocks = [to_dense(c) for c in node.children]
        out = np.zeros((sum(b.shape[0] for b in blocks), sum(b.shape[1] for b in blocks)))
        r = c = 0
        for b in blocks:
            out[r:r + b.shape[0], c:c + b.shape[1]] = b
            r += b.shape[0]
            c += b.shape[1]
        return out
    if isinstance(node, Product):
        out = to_dense(node.children[0])
        for child in node.children[1:]:
            out = out @ to_dense(child)
        return out
    raise TypeError(f"not a FormulaNode: {type(node).__name__}")


def op_count(node: FormulaNode) -> OpCount:
    """Count nontrivial multiplications and additions of one application.

    Permutations and identities are free; a diagonal costs one
    multiplication per non-trivial entry; a sparse row with ``t`` entries
    costs ``t - 1`` additions plus one multiplication per non-trivial
    coefficient; sums and products add up their children.
    """
    if isinstance(node, (Identity, Permutation)):
        return OpCount(0, 0)
    if isinstance(node, Diagonal):
        return OpCount(sum(not t for t in node.trivial), 0)
    if isinstance(node, SparseStep):
        mults = sum(not e.trivial for row in node.row_entries for e in row)
        adds = sum(len(row) - 1 for row in node.row_entries)
        return OpCount(mults, adds)
    if isinstance(node, (DirectSum, Product)):
        total = OpCount(0, 0)
        for child in node.children:
            total += op_count(child)
        return total
    raise TypeError(f"not a FormulaNode: {type(node).__name__}")
