"""Exact arithmetic in the ring of rationals times powers of sqrt(pi).

Rationals are plain :class:`fractions.Fraction` values.  A
:class:`GradedExact` carries an additional integer *grade* ``h`` and
represents ``coeff * pi**(h/2)``.  Half-integer Gamma values, and every
product or quotient of them, live in this ring; sums are only formed between
values of equal grade.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError, GradingError

__all__ = [
    "GradedExact",
    "GradedMatrix",
    "gamma_half",
    "graded_add",
    "graded_det",
    "ZERO",
    "ONE",
]


@dataclass(frozen=True)
class GradedExact:
    """The exact value ``coeff * pi**(grade/2)``.

    Zero is canonicalised to grade 0 and is additively compatible with
    every grade.
    """

    coeff: Fraction
    grade: int = 0

    def __post_init__(self):
        c = self.coeff
        if not isinstance(c, Fraction):
            c = Fraction(c)
            object.__setattr__(self, "coeff", c)
        if not isinstance(self.grade, int):
            raise TypeError("grade must be an int")
        if c == 0 and self.grade != 0:
            object.__setattr__(self, "grade", 0)

    @classmethod
    def of(cls, value) -> "GradedExact":
        """Coerce a rational-like value (or a GradedExact) to GradedExact."""
        if isinstance(value, GradedExact):
            return value
        return cls(Fraction(value), 0)

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __add__(self, other):
        return graded_add(self, GradedExact.of(other))

    __radd__ = __add__

    def __neg__(self):
        return GradedExact(-self.coeff, self.grade)

    def __sub__(self, other):
        return graded_add(self, -GradedExact.of(other))

    def __rsub__(self, other):
        return graded_add(GradedExact.of(other), -self)

    def __mul__(self, other):
        other = GradedExact.of(other)
        return GradedExact(self.coeff * other.coeff, self.grade + other.grade)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = GradedExact.of(other)
        if other.coeff == 0:
            raise ZeroDivisionError("division by exact zero")
        return GradedExact(self.coeff / other.coeff, self.grade - other.grade)

    def __rtruediv__(self, other):
        return GradedExact.of(other) / self

    def __float__(self):
        if self.grade == 0:
            return float(self.coeff)
        return float(self.coeff) * math.pi ** (self.grade / 2)

    def __str__(self):
        return format_graded(self)

    def is_rational(self) -> bool:
        return self.grade == 0

    def as_fraction(self) -> Fraction:
        if self.grade != 0:
            raise GradingError(f"{self} is not rational (grade {self.grade})")
        return self.coeff


ZERO = GradedExact(Fraction(0))
ONE = GradedExact(Fraction(1))


def graded_add(a: GradedExact, b: GradedExact) -> GradedExact:
    """Exact sum of two graded values.

    Raises
    ------
    GradingError
        If both operands are nonzero and their grades differ.
    """
    if a.coeff == 0:
        return b
    if b.coeff == 0:
        return a
    if a.grade != b.grade:
        raise GradingError(f"cannot add grade {a.grade} to grade {b.grade}")
    return GradedExact(a.coeff + b.coeff, a.grade)


def gamma_half(k: int) -> GradedExact:
    """Return Gamma(k/2) exactly for a positive integer ``k``.

    Even ``k`` gives the integer ``(k/2 - 1)!``; odd ``k = 2n + 1`` gives
    ``(2n)! / (4**n n!) * sqrt(pi)``.
    """
    if not isinstance(k, int) or isinstance(k, bool):
        raise DomainError(f"gamma_half needs an int, got {k!r}")
    if k <= 0:
        raise DomainError(f"Gamma(k/2) has a pole at k={k}")
    if k % 2 == 0:
        return GradedExact(Fraction(math.factorial(k // 2 - 1)), 0)
    n = (k - 1) // 2
    coeff = Fraction(math.factorial(2 * n), 4**n * math.factorial(n))
    return GradedExact(coeff, 1)


_GRADED_RE = re.compile(
    r"^\s*(-?\d+)(?:/(\d+))?(?:\s*\*\s*pi\^\((-?\d+)/2\))?\s*$"
)


def format_graded(value: GradedExact) -> str:
    """Serialise as ``"<num>/<den> * pi^(<h>/2)"``, eliding unit parts."""
    c = value.coeff
    s = str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    if value.grade != 0:
        s += f" * pi^({value.grade}/2)"
    return s


def parse_graded(text: str) -> GradedExact:
    """Inverse of :func:`format_graded`."""
    m = _GRADED_RE.match(text)
    if not m:
        raise ValueError(f"not a graded exact value: {text!r}")
    num, den, h = m.groups()
    return GradedExact(Fraction(int(num), int(den or 1)), int(h or 0))


class GradedMatrix:
    """Square or rectangular array of GradedExact with one grade per column."""

    def __init__(self, entries: Sequence[Sequence], column_grades: Sequence[int] | None = None):
        rows = [[GradedExact.of(e) for e in row] for row in entries]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        if column_grades is None:
            column_grades = []
            for c in range(ncols):
                grades = {r[c].grade for r in rows if not r[c].is_zero()}
                if len(grades) > 1:
                    raise GradingError(f"column {c} mixes grades {sorted(grades)}")
                column_grades.append(grades.pop() if grades else 0)
        column_grades = [int(g) for g in column_grades]
        if len(column_grades) != ncols:
            raise ValueError("one grade per column required")
        for r in rows:
            for c, e in enumerate(r):
                if not e.is_zero() and e.grade != column_grades[c]:
                    raise GradingError(
                        f"entry of grade {e.grade} in column {c} of grade {column_grades[c]}"
                    )
        self.entries = rows
        self.column_grades = tuple(column_grades)

    @property
    def shape(self):
        return (len(self.entries), len(self.column_grades))

    def __repr__(self):
        return f"GradedMatrix({[[str(e) for e in r] for r in self.entries]})"


def graded_det(M: GradedMatrix) -> GradedExact:
    """Exact determinant by Gaussian elimination with row pivoting.

    Each elimination multiplier is a ratio of two entries of one column and
    therefore rational, so the column grading survives every row
    operation.  The result has grade ``sum(M.column_grades)`` unless it is
    zero.
    """
    n, ncols = M.shape
    if n != ncols:
        raise ValueError(f"determinant of non-square {n}x{ncols} matrix")
    if n == 0:
        return ONE
    a = [list(r) for r in M.entries]
    det = ONE
    for col in range(n):
        piv = next((r for r in range(col, n) if not a[r][col].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        p = a[col][col]
        det = det * p
        for r in range(col + 1, n):
            if a[r][col].is_zero():
                continue
            f = a[r][col] / p
            row = a[r]
            prow = a[col]
            for c in range(col + 1, n):
                if not prow[c].is_zero():
                    row[c] = row[c] - f * prow[c]
            row[col] = ZERO
    return det
