"""Recursive sparse factorizations of the DCT-2 and skew DCT-4 families.

The construction follows the two-step recursion over the underlying
polynomial algebras:

* the size-2n unscaled DCT-2 splits into a size-n unscaled DCT-2 plus a
  size-n unscaled DCT-4, glued by the multiplication-free butterfly
  ``B`` and an even/odd stride interleave;
* the size-2n skew DCT-4 with parameter r splits into two size-n skew
  DCT-4 blocks with parameters r/2 and 1 - r/2, glued by the two-factor
  building block ``BB`` (the only source of multiplications, m of them
  at size 2m, plus 3m additions) and the angle-interleave permutation P.

Skew parameters are exact dyadic :class:`~fractions.Fraction` values;
halving and reflecting them is closed over dyadic rationals, and each
cosine coefficient is materialized exactly once when its building block
is constructed.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .chebyshev import check_skew_param, scaling_diag
from .formula import (
    Diagonal,
    DirectSum,
    FormulaNode,
    Identity,
    Permutation,
    Product,
    SparseStep,
    minus,
    plus,
    times,
)

__all__ = [
    "b_c2",
    "bb_c4",
    "build_dct2",
    "build_dct2_bar",
    "build_dct4_bar",
    "closed_form_core_mults",
    "perm_p",
    "stride_perm",
]


def _check_pow2(n: int, what: str = "size") -> int:
    if n < 1 or n & (n - 1):
        raise ValueError(f"{what} must be a power of two, got {n}")
    return n


def _check_even(two_n: int) -> int:
    if two_n < 2 or two_n % 2:
        raise ValueError(f"size must be even and >= 2, got {two_n}")
    return two_n // 2


def b_c2(two_n: int) -> SparseStep:
    """Change of basis for the DCT-2 split: the block butterfly
    ``[[I_n, J_n], [I_n, -J_n]]``.  All entries are +-1, so it is free of
    multiplications and costs ``two_n`` additions."""
    n = _check_even(two_n)
    rows = []
    for i in range(n):
        rows.append((plus(i), plus(two_n - 1 - i)))
    for i in range(n):
        rows.append((plus(i), minus(two_n - 1 - i)))
    return SparseStep(two_n, two_n, tuple(rows), label=f"B{two_n}")


def bb_c4(two_n: int, r: Fraction) -> FormulaNode:
    """Change of basis for the skew DCT-4 split, in two-factor form.

    The product ``[[I_m, I_m], [I_m, -I_m]] @ [[I_m, -J_m], [0, c*I_m]]``
    with ``c = 2*cos(r*pi/2)`` realizes ``[[I_m, c*I_m - J_m],
    [I_m, -c*I_m - J_m]]`` with m multiplications and 3m additions.
    """
    m = _check_even(two_n)
    check_skew_param(r)
    c = 2.0 * math.cos(math.pi * float(r) / 2.0)
    label = f"BB(m={m}, r={r})"

    mix_rows = []
    for i in range(m):
        mix_rows.append((plus(i), minus(two_n - 1 - i)))
    for i in range(m):
        mix_rows.append((times(m + i, c),))
    mix = SparseStep(two_n, two_n, tuple(mix_rows), label=label)

    sum_rows = []
    for i in range(m):
        sum_rows.append((plus(i), plus(m + i)))
    for i in range(m):
        sum_rows.append((plus(i), minus(m + i)))
    butterfly = SparseStep(two_n, two_n, tuple(sum_rows), label=label)

    return Product((butterfly, mix))


def perm_p(two_n: int) -> Permutation:
    """Interleave the two skew sub-blocks into ascending-angle output order.

    Sub-block outputs ``v_0..v_{n-1}`` (parameter r/2) and
    ``v_n..v_{2n-1}`` (parameter 1 - r/2) merge as
    ``y = (v_0, v_n, v_{n+1}, v_1, v_2, v_{n+2}, v_{n+3}, v_3, ...,
    v_{n-1})``; the pattern is independent of r.  Size 2 needs no
    reordering.
    """
    n = _check_even(two_n)
    if two_n == 2:
        return Permutation((0, 1), label="P2")
    mapping = [0]
    i, j = 1, n
    while j < two_n:
        mapping.extend((j, j + 1))
        j += 2
        take = min(2, n - i)
        mapping.extend(range(i, i + take))
        i += take
    return Permutation(tuple(mapping), label=f"P{two_n}")


def stride_perm(m: int, n: int) -> Permutation:
    """Stride permutation: ``y[i2*(n/m) + i1] = x[i1*m + i2]`` for
    ``0 <= i1 < n/m`` and ``0 <= i2 < m``."""
    if m < 1 or n < 1 or n % m:
        raise ValueError(f"stride requires m | n, got m={m}, n={n}")
    ratio = n // m
    mapping = [0] * n
    for i1 in range(ratio):
        for i2 in range(m):
            mapping[i2 * ratio + i1] = i1 * m + i2
    return Permutation(tuple(mapping), label=f"L{n}_{m}")


def build_dct4_bar(n: int, r: Fraction = Fraction(1, 2)) -> FormulaNode:
    """Sparse factorization of the unscaled skew DCT-4 of size ``n``.

    Size 1 is the identity (single basis polynomial, single zero); size
    2n recurses into parameters r/2 and 1 - r/2 behind the building
    block and the interleave permutation.
    """
    _check_pow2(n)
    check_skew_param(r)
    if n == 1:
        return Identity(1)
    half = n // 2
    lower = build_dct4_bar(half, r / 2)
    upper = build_dct4_bar(half, 1 - r / 2)
    return Product((perm_p(n), DirectSum((lower, upper)), bb_c4(n, r)))


def build_dct2_bar(n: int) -> FormulaNode:
    """Sparse factorization of the unscaled DCT-2 of size ``n``."""
    _check_pow2(n)
    if n == 1:
        return Identity(1)
    half = n // 2
    return Product((
        stride_perm(half, n),
        DirectSum((build_dct2_bar(half), build_dct4_bar(half, Fraction(1, 2)))),
        b_c2(n),
    ))


def build_dct2(n: int) -> FormulaNode:
    """Scaled DCT-2: the unscaled factorization with the output diagonal
    applied; the diagonal's leading entry is an exact 1 and is free."""
    _check_pow2(n)
    values = scaling_diag("c2", n)
    trivial = (True,) + (False,) * (n - 1)
    return Product((Diagonal(values, trivial, label=f"D{n}"), build_dct2_bar(n)))


def closed_form_core_mults(k: int) -> int:
    """Multiplications in the unscaled size-2^k factorization:
    ``sum(p * 2**(p-1) for p in 1..k-1)``."""
    if k < 0:
        raise ValueError(f"exponent must be nonnegative, got {k}")
    return sum(p * 2 ** (p - 1) for p in range(1, k))
