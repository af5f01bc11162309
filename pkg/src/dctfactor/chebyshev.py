"""Brute-force reference definitions for cosine transforms.

Everything in this module is a direct transcription of the defining
formulas, with no fast algorithms involved: Chebyshev polynomials of the
first, second and third kind (closed forms ``T_n = cos(n*theta)``,
``U_n = sin((n+1)*theta)/sin(theta)``, ``V_n = cos((n+1/2)*theta)/cos(theta/2)``
with ``x = cos(theta)``), the zero sets of the associated polynomials, the
dense transform matrices built by evaluating basis polynomials at those
zeros, and the diagonal scaling that turns the raw polynomial transforms
into the conventional DCT-2 / DCT-4 matrices.

These dense matrices are the ground truth that every sparse factorization
in :mod:`dctfactor.factorize` is checked against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

__all__ = [
    "ChebKind",
    "ZeroList",
    "cheb_eval",
    "check_skew_param",
    "dct2_zeros",
    "is_dyadic",
    "ref_matrix",
    "scaling_diag",
    "skew_zeros",
]


class ChebKind(Enum):
    """Chebyshev polynomial family: first (T), second (U) or third (V) kind."""

    FIRST = "T"
    SECOND = "U"
    THIRD = "V"


# Exact low-degree polynomials, used as recurrence anchors.  Each entry maps
# degree -> callable for degrees 0..2.
_SMALL = {
    ChebKind.FIRST: (lambda x: 1.0, lambda x: x, lambda x: 2.0 * x * x - 1.0),
    ChebKind.SECOND: (lambda x: 1.0, lambda x: 2.0 * x, lambda x: 4.0 * x * x - 1.0),
    ChebKind.THIRD: (
        lambda x: 1.0,
        lambda x: 2.0 * x - 1.0,
        lambda x: 4.0 * x * x - 2.0 * x - 1.0,
    ),
}


def cheb_eval(kind: ChebKind, n: int, x: float) -> float:
    """Evaluate the degree-``n`` Chebyshev polynomial of ``kind`` at ``x``.

    Degrees 0..2 are hard-coded polynomials; higher degrees use the shared
    three-term recurrence ``p[n+1] = 2x*p[n] - p[n-1]``, which is valid for
    all three kinds and for every real ``x`` (unlike the trigonometric
    closed forms, which require ``|x| <= 1``).
    """
    if n < 0:
        raise ValueError(f"polynomial degree must be nonnegative, got {n}")
    small = _SMALL[kind]
    if n < len(small):
        return small[n](x)
    p_prev = small[1](x)
    p_curr = small[2](x)
    for _ in range(n - 2):
        p_prev, p_curr = p_curr, 2.0 * x * p_curr - p_prev
    return p_curr


@dataclass(frozen=True)
class ZeroList:
    """Zeros of a transform polynomial, ordered by ascending angle.

    ``angles`` are the theta values in (0, pi] with the zeros given by
    ``values[k] = cos(angles[k])``; ascending angle means descending x,
    which is the row order of every transform matrix here.
    """

    angles: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.angles) != len(self.values):
            raise ValueError("angles and values must have equal length")
        if any(a >= b for a, b in zip(self.angles, self.angles[1:])):
            raise ValueError("angles must be strictly ascending")

    def __len__(self) -> int:
        return len(self.angles)


def is_dyadic(r: Fraction) -> bool:
    """True if ``r`` has a power-of-two denominator."""
    den = r.denominator
    return den & (den - 1) == 0


def check_skew_param(r: Fraction) -> Fraction:
    """Validate a skew transform parameter: a dyadic rational in (0, 1)."""
    if not isinstance(r, Fraction):
        raise TypeError(f"skew parameter must be a Fraction, got {type(r).__name__}")
    if not 0 < r < 1:
        raise ValueError(f"skew parameter must lie in (0, 1), got {r}")
    if not is_dyadic(r):
        raise ValueError(f"skew parameter must be dyadic, got {r}")
    return r


def _zero_list_from_multiples(multiples: list[Fraction]) -> ZeroList:
    """Build a ZeroList from exact angle multipliers theta/pi, sorted exactly."""
    multiples.sort()
    angles = tuple(math.pi * float(q) for q in multiples)
    values = tuple(math.cos(a) for a in angles)
    return ZeroList(angles=angles, values=values)


def skew_zeros(n: int, r: Fraction) -> ZeroList:
    """Zeros of ``2*T_n(x) - 2*cos(r*pi)``, ascending in angle.

    Solving ``cos(n*theta) = cos(r*pi)`` on (0, pi) gives the two families
    ``theta = (2j + r)*pi/n`` for ``0 <= j <= ceil(n/2) - 1`` and
    ``theta = (2j - r)*pi/n`` for ``1 <= j <= floor(n/2)``.
    """
    if n < 1:
        raise ValueError(f"transform size must be positive, got {n}")
    check_skew_param(r)
    multiples = [(2 * j + r) / n for j in range(-(-n // 2))]
    multiples += [(2 * j - r) / n for j in range(1, n // 2 + 1)]
    return _zero_list_from_multiples(multiples)


def dct2_zeros(n: int) -> ZeroList:
    """Zeros of ``(x - 1) * U_{n-1}(x)``: angles ``k*pi/n`` for ``k < n``.

    The factor ``x - 1`` contributes the angle 0 zero (x = 1).
    """
    if n < 1:
        raise ValueError(f"transform size must be positive, got {n}")
    return _zero_list_from_multiples([Fraction(k, n) for k in range(n)])


def scaling_diag(kind: str, n: int) -> tuple[float, ...]:
    """Diagonal turning a raw polynomial transform into the scaled DCT.

    ``kind="c2"`` gives ``cos(k*pi/(2n))`` (first entry exactly 1) and
    ``kind="c4"`` gives ``cos((k+1/2)*pi/(2n))``.
    """
    if n < 1:
        raise ValueError(f"transform size must be positive, got {n}")
    if kind == "c2":
        return tuple(math.cos(k * math.pi / (2 * n)) for k in range(n))
    if kind == "c4":
        return tuple(math.cos((k + 0.5) * math.pi / (2 * n)) for k in range(n))
    raise ValueError(f"unknown scaling kind {kind!r}, expected 'c2' or 'c4'")


def _third_kind_rows(zeros: ZeroList, n_cols: int) -> np.ndarray:
    """Matrix [V_l(x_k)] for the given zeros, columns l = 0..n_cols-1."""
    x = np.asarray(zeros.values, dtype=float)
    out = np.empty((len(x), n_cols), dtype=float)
    out[:, 0] = 1.0
    if n_cols > 1:
        out[:, 1] = 2.0 * x - 1.0
    for col in range(2, n_cols):
        out[:, col] = 2.0 * x * out[:, col - 1] - out[:, col - 2]
    return out


def ref_matrix(kind: str, n: int, r: Fraction | None = None) -> np.ndarray:
    """Dense definition matrix of a transform, straight from the entry formulas.

    ``kind`` is one of ``"dct2"``, ``"dct2bar"``, ``"dct4"``, ``"dct4bar"``.
    The "bar" versions are the unscaled polynomial transforms; ``r``
    selects the skew variant and is accepted only for ``"dct4bar"``
    (default 1/2, the conventional DCT-4 case).
    """
    if n < 1:
        raise ValueError(f"transform size must be positive, got {n}")
    if kind == "dct4bar":
        r = check_skew_param(Fraction(1, 2) if r is None else r)
        return _third_kind_rows(skew_zeros(n, r), n)
    if r is not None:
        raise ValueError(f"skew parameter is only valid for 'dct4bar', not {kind!r}")
    k = np.arange(n, dtype=float)[:, None]
    l = np.arange(n, dtype=float)[None, :]
    if kind == "dct2":
        return np.cos(k * (l + 0.5) * math.pi / n)
    if kind == "dct2bar":
        return np.cos(k * (l + 0.5) * math.pi / n) / np.cos(k * math.pi / (2 * n))
    if kind == "dct4":
        return np.cos((k + 0.5) * (l + 0.5) * math.pi / n)
    raise ValueError(f"unknown transform kind {kind!r}")
