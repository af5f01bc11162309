"""Lowering of formula trees to straight-line programs.

A lowered program is a topologically ordered list of weighted-sum
instructions over value ids: inputs occupy ids ``0..n-1`` and each
instruction defines the next id.  Permutations and unit-diagonal entries
lower to pure renamings (zero instructions), sums of more than two terms
are binarized left to right, and the instruction-derived operation audit
matches :func:`dctfactor.formula.op_count` exactly.  Programs can be
emitted as Graphviz DOT or as a plain text listing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .formula import (
    Diagonal,
    DirectSum,
    FormulaNode,
    Identity,
    OpCount,
    Permutation,
    Product,
    SparseStep,
    cols,
    validate,
)

__all__ = [
    "Instruction",
    "StraightLineProgram",
    "Term",
    "emit_dot",
    "emit_listing",
    "execute",
    "instruction_counts",
    "lower",
]


class Term(NamedTuple):
    """One summand of an instruction: source id, coefficient, triviality."""

    src: int
    coeff: float
    trivial: bool


@dataclass(frozen=True)
class Instruction:
    """``dst = sum(coeff * value[src] for each term)``; at most two terms."""

    dst: int
    terms: tuple[Term, ...]


@dataclass(frozen=True)
class StraightLineProgram:
    n_inputs: int
    instructions: tuple[Instruction, ...]
    outputs: tuple[int, ...]
    # Half-open instruction index ranges annotated with factor labels.
    stage_labels: tuple[tuple[int, int, str], ...]


class _Lowerer:
    def __init__(self, n_inputs: int) -> None:
        self.n_inputs = n_inputs
        self.next_id = n_inputs
        self.instructions: list[Instruction] = []
        self.spans: list[tuple[int, int, str]] = []

    def emit(self, terms: tuple[Term, ...]) -> int:
        dst = self.next_id
        self.next_id += 1
        self.instructions.append(Instruction(dst, terms))
        return dst

    def emit_sum(self, terms: list[Term]) -> int:
        """Emit a weighted sum, binarizing longer sums left to right."""
        if len(terms) == 1:
            term = terms[0]
            if term.trivial and term.coeff == 1.0:
                return term.src
            return self.emit((term,))
        acc = self.emit((terms[0], terms[1]))
        for term in terms[2:]:
            acc = self.emit((Term(acc, 1.0, True), term))
        return acc

    def mark_stage(self, start: int, label: str) -> None:
        end = len(self.instructions)
        if not label or end == start:
            return
        if self.spans and self.spans[-1][1] == start and self.spans[-1][2] == label:
            self.spans[-1] = (self.spans[-1][0], end, label)
        else:
            self.spans.append((start, end, label))

    def walk(self, node: FormulaNode, ids: list[int]) -> list[int]:
        if isinstance(node, Identity):
            return ids
        if isinstance(node, Permutation):
            return [ids[j] for j in node.map]
        if isinstance(node, Diagonal):
            start = len(self.instructions)
            out = []
            for src, value, trivial in zip(ids, node.values, node.trivial):
                out.append(self.emit_sum([Term(src, value, trivial)]))
            self.mark_stage(start, node.label)
            return out
        if isinstance(node, SparseStep):
            start = len(self.instructions)
            out = []
            for row in node.row_entries:
                terms = [Term(ids[e.col], e.coeff, e.trivial) for e in row]
                out.append(self.emit_sum(terms))
            self.mark_stage(start, node.label)
            return out
        if isinstance(node, DirectSum):
            out = []
            offset = 0
            for child in node.children:
                w = cols(child)
                out.extend(self.walk(child, ids[offset:offset + w]))
                offset += w
            return out
        if isinstance(node, Product):
            for child in reversed(node.children):
                ids = self.walk(child, ids)
            return ids
        raise TypeError(f"not a FormulaNode: {type(node).__name__}")


def lower(node: FormulaNode) -> StraightLineProgram:
    """Lower a validated formula tree to a straight-line program."""
    n_rows, n_cols = validate(node)
    state = _Lowerer(n_cols)
    outputs = state.walk(node, list(range(n_cols)))
    assert len(outputs) == n_rows
    return StraightLineProgram(
        n_inputs=n_cols,
        instructions=tuple(state.instructions),
        outputs=tuple(outputs),
        stage_labels=tuple(state.spans),
    )


def execute(prog: StraightLineProgram, x: np.ndarray) -> np.ndarray:
    """Run the program on an input vector."""
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != prog.n_inputs:
        raise ValueError(f"input length {x.shape} does not match {prog.n_inputs}")
    values = np.empty(prog.n_inputs + len(prog.instructions), dtype=float)
    values[:prog.n_inputs] = x
    for instr in prog.instructions:
        acc = 0.0
        for term in instr.terms:
            acc += term.coeff * values[term.src]
        values[instr.dst] = acc
    return values[list(prog.outputs)]


def instruction_counts(prog: StraightLineProgram) -> OpCount:
    """Audit the program: each non-trivial term is one multiplication and
    each instruction contributes ``len(terms) - 1`` additions."""
    mults = sum(not t.trivial for i in prog.instructions for t in i.terms)
    adds = sum(len(i.terms) - 1 for i in prog.instructions)
    return OpCount(mults, adds)


def _value_names(prog: StraightLineProgram) -> dict[int, str]:
    names = {i: f"x{i}" for i in range(prog.n_inputs)}
    for k, instr in enumerate(prog.instructions):
        names[instr.dst] = f"t{k}"
    return names


def emit_listing(prog: StraightLineProgram) -> str:
    """Plain text listing: one line per instruction, then the output map.

    Coefficients are printed with full round-trip precision; the text is
    ASCII with LF line endings and is a pure function of the program.
    """
    names = _value_names(prog)
    lines = []
    for instr in prog.instructions:
        parts = []
        for pos, term in enumerate(instr.terms):
            sign = "-" if term.coeff < 0 else "+"
            mag = names[term.src] if term.trivial else f"{abs(term.coeff)!r}*{names[term.src]}"
            if pos == 0:
                parts.append(mag if sign == "+" else f"-{mag}")
            else:
                parts.append(f" {sign} {mag}")
        lines.append(f"{names[instr.dst]} = {''.join(parts)}")
    for i, out in enumerate(prog.outputs):
        lines.append(f"y{i} = {names[out]}")
    return "\n".join(lines) + "\n"


def emit_dot(prog: StraightLineProgram, name: str = "transform") -> str:
    """Graphviz DOT rendering of the program's dataflow.

    One node per value; nodes that carry outputs are relabeled with their
    output name, stage labels become clusters, and edges are labeled with
    their coefficient (6 significant digits) when it is not a literal
    +-1; negative edges are dashed.
    """
    names = _value_names(prog)
    out_name = {}
    for i, value_id in enumerate(prog.outputs):
        out_name[value_id] = f"y{i}"

    def node_label(value_id: int) -> str:
        base = names[value_id]
        if value_id in out_name:
            if value_id < prog.n_inputs:
                return f"{base} = {out_name[value_id]}"
            return out_name[value_id]
        return base

    def node_decl(value_id: int, shape: str) -> str:
        return f'  v{value_id} [shape={shape} label="{node_label(value_id)}"];'

    lines = [f'digraph "{name}" {{', "  rankdir=LR;"]
    for i in range(prog.n_inputs):
        lines.append(node_decl(i, "plaintext"))

    in_cluster = set()
    for cluster_idx, (start, end, label) in enumerate(prog.stage_labels):
        lines.append(f"  subgraph cluster_{cluster_idx} {{")
        lines.append(f'    label="{label}";')
        for k in range(start, end):
            instr = prog.instructions[k]
            in_cluster.add(instr.dst)
            lines.append("  " + node_decl(instr.dst, "circle").strip())
        lines.append("  }")
    for instr in prog.instructions:
        if instr.dst not in in_cluster:
            lines.append(node_decl(instr.dst, "circle"))

    for instr in prog.instructions:
        for term in instr.terms:
            attrs = []
            if not term.trivial:
                attrs.append(f'label="{term.coeff:.6g}"')
            if term.coeff < 0:
                attrs.append("style=dashed")
            suffix = f" [{' '.join(attrs)}]" if attrs else ""
            lines.append(f"  v{term.src} -> v{instr.dst}{suffix};")
    lines.append("}")
    return "\n".join(lines) + "\n"
