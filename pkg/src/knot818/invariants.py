"""Knot invariants of braid closures, computed exactly.

The Alexander polynomial comes from the reduced Burau representation:
for a braid b on n strands whose closure is a knot,

    det(rho(b) - I) = Delta(t) * (1 - t^n) / (1 - t)

up to a unit, so the quotient is formed exactly in the integer Laurent
ring and then normalized to minimum exponent 0 with positive constant
term.
"""

from __future__ import annotations

from dataclasses import dataclass

from .braid import BraidWord, NotAKnotError
from .laurent import ONE, LaurentPoly, T


class ZeroPolynomialError(ValueError):
    """Normalization target has no nonzero coefficient."""


@dataclass(frozen=True)
class PolyMatrix:
    """Square matrix over the integer Laurent ring."""

    rows: tuple[tuple[LaurentPoly, ...], ...]

    def __post_init__(self) -> None:
        dim = len(self.rows)
        if any(len(row) != dim for row in self.rows):
            raise ValueError("matrix must be square")

    @property
    def dim(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, dim: int) -> "PolyMatrix":
        return cls(
            tuple(
                tuple(ONE if i == j else LaurentPoly() for j in range(dim))
                for i in range(dim)
            )
        )

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        n = self.dim
        return PolyMatrix(
            tuple(
                tuple(
                    sum(
                        (self.rows[i][k] * other.rows[k][j] for k in range(n)),
                        LaurentPoly(),
                    )
                    for j in range(n)
                )
                for i in range(n)
            )
        )

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        return PolyMatrix(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def det(self) -> LaurentPoly:
        """Cofactor expansion; fine at the small dimensions used here."""
        n = self.dim
        if n == 0:
            return ONE
        if n == 1:
            return self.rows[0][0]
        total = LaurentPoly()
        for j, head in enumerate(self.rows[0]):
            if head.is_zero:
                continue
            minor = PolyMatrix(
                tuple(row[:j] + row[j + 1 :] for row in self.rows[1:])
            )
            term = head * minor.det()
            total = total + (term if j % 2 == 0 else -term)
        return total


def _burau_generator(letter: int, strands: int) -> PolyMatrix:
    """Reduced Burau image of one letter, an (n-1)x(n-1) matrix.

    Positive generator i acts on basis row i-1 by
        row[i-2] <- t,   row[i-1] <- -t,   row[i] <- 1
    (entries outside the band omitted); the inverse replaces them with
        1, -t^-1, t^-1.
    """
    dim = strands - 1
    i = abs(letter)
    rows = [
        [ONE if r == c else LaurentPoly() for c in range(dim)] for r in range(dim)
    ]
    r = i - 1
    if letter > 0:
        if i > 1:
            rows[r][r - 1] = T
        rows[r][r] = -T
        if i < strands - 1:
            rows[r][r + 1] = ONE
    else:
        if i > 1:
            rows[r][r - 1] = ONE
        rows[r][r] = -LaurentPoly.t_power(-1)
        if i < strands - 1:
            rows[r][r + 1] = LaurentPoly.t_power(-1)
    return PolyMatrix(tuple(tuple(row) for row in rows))


def burau_reduced(braid: BraidWord) -> PolyMatrix:
    """Reduced Burau matrix of the whole word (identity for the empty word)."""
    out = PolyMatrix.identity(braid.strands - 1)
    for letter in braid.letters:
        out = out * _burau_generator(letter, braid.strands)
    return out


def normalize_alexander(poly: LaurentPoly) -> LaurentPoly:
    """Strip the unit ambiguity: minimum exponent 0, positive constant term."""
    if poly.is_zero:
        raise ZeroPolynomialError("cannot normalize the zero polynomial")
    shifted = poly.shifted(-poly.min_exp)
    if shifted.coeff(0) < 0:
        shifted = -shifted
    return shifted


def alexander_from_braid(braid: BraidWord) -> LaurentPoly:
    """Normalized Alexander polynomial of the closure (a knot)."""
    if not braid.is_knot_closure:
        raise NotAKnotError(
            f"closure of {braid.letters} on {braid.strands} strands is not a knot"
        )
    mat = burau_reduced(braid) - PolyMatrix.identity(braid.strands - 1)
    numerator = mat.det() * (ONE - T)
    denominator = ONE - T ** braid.strands
    return normalize_alexander(numerator.exact_div(denominator))
