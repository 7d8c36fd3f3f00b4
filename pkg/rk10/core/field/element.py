from __future__ import annotations
import typing as ty
import logging
from fractions import Fraction
from functools import reduce
from math import gcd
import mpmath
from rk10.core.exceptions import Rk10DivisionByZeroError, Rk10FormatError
from .basis import (
    DIMENSION,
    PRODUCT_TABLE,
    STRUCTURE_SCALE,
    BASIS_LABELS,
    basis_values,
    SQRT3,
    SQRT7,
    SQRT21,
    ALPHA,
    BETA,
)

logger = logging.getLogger("rk10")

Rational = ty.Union[int, Fraction]

GUARD_DIGITS = 10


class FieldElement:
    """An element of Q(alpha, beta), stored as eight integer numerators over a single
    positive common denominator, reduced so that the representation is unique

    Parameters
    ----------
    numerators : sequence of int
        the eight numerators of the coordinates over the basis
        1, sqrt3, sqrt7, sqrt21, alpha, beta, sqrt7 alpha, sqrt7 beta
    denominator : int
        the common denominator of the coordinates, nonzero
    """

    __slots__ = ("_numerators", "_denominator", "_hash")

    def __init__(self, numerators: ty.Sequence[int], denominator: int = 1):
        if len(numerators) != DIMENSION:
            raise Rk10FormatError(
                f"field elements need {DIMENSION} coordinates, got {len(numerators)}"
            )
        if denominator == 0:
            raise Rk10DivisionByZeroError("division by zero in Q(alpha, beta)")
        nums = [int(n) for n in numerators]
        den = int(denominator)
        if den < 0:
            nums = [-n for n in nums]
            den = -den
        divisor = reduce(gcd, nums, den)
        if divisor > 1:
            nums = [n // divisor for n in nums]
            den //= divisor
        if not any(nums):
            den = 1
        self._numerators = tuple(nums)
        self._denominator = den
        self._hash: ty.Optional[int] = None

    @classmethod
    def from_rational(cls, value: Rational) -> FieldElement:
        value = Fraction(value)
        return cls(
            (value.numerator,) + (0,) * (DIMENSION - 1), value.denominator
        )

    @classmethod
    def from_coordinates(cls, xi: ty.Sequence[Rational]) -> FieldElement:
        """Build an element from its eight rational coordinates"""
        if len(xi) != DIMENSION:
            raise Rk10FormatError(
                f"field elements need {DIMENSION} coordinates, got {len(xi)}"
            )
        fracs = [Fraction(x) for x in xi]
        den = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in fracs), 1)
        return cls([f.numerator * (den // f.denominator) for f in fracs], den)

    @classmethod
    def basis(cls, index: int) -> FieldElement:
        nums = [0] * DIMENSION
        nums[index] = 1
        return cls(nums)

    @classmethod
    def coerce(cls, value: ty.Any) -> FieldElement:
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.from_rational(value)
        raise TypeError(f"Cannot interpret {value!r} as an element of Q(alpha, beta)")

    @property
    def numerators(self) -> ty.Tuple[int, ...]:
        return self._numerators

    @property
    def denominator(self) -> int:
        return self._denominator

    @property
    def xi(self) -> ty.Tuple[Fraction, ...]:
        return tuple(Fraction(n, self._denominator) for n in self._numerators)

    def is_rational(self) -> bool:
        return not any(self._numerators[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return Fraction(self._numerators[0], self._denominator)

    def nine_integers(self) -> ty.Tuple[int, ...]:
        """The numerators followed by the common denominator"""
        return self._numerators + (self._denominator,)

    def to_mpf(self, digits: int) -> mpmath.mpf:
        """High-precision value, correct to ``digits`` significant digits"""
        dps = digits + GUARD_DIGITS
        values = basis_values(dps)
        with mpmath.workdps(dps):
            total = mpmath.mpf(0)
            for n, v in zip(self._numerators, values):
                if n:
                    total += n * v
            result = total / self._denominator
        return result

    def __float__(self) -> float:
        return float(self.to_mpf(20))

    def inverse(self) -> FieldElement:
        if not self:
            raise Rk10DivisionByZeroError("division by zero in Q(alpha, beta)")
        if self.is_rational():
            return FieldElement.from_rational(1 / self.rational_value())
        return _inverse(self._numerators, self._denominator)

    # Arithmetic

    def __add__(self, other: ty.Any) -> FieldElement:
        if not isinstance(other, FieldElement):
            if isinstance(other, (int, Fraction)):
                other = FieldElement.from_rational(other)
            else:
                return NotImplemented
        da, db = self._denominator, other._denominator
        return FieldElement(
            [a * db + b * da for a, b in zip(self._numerators, other._numerators)],
            da * db,
        )

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        return FieldElement([-n for n in self._numerators], self._denominator)

    def __pos__(self) -> FieldElement:
        return self

    def __sub__(self, other: ty.Any) -> FieldElement:
        if not isinstance(other, (FieldElement, int, Fraction)):
            return NotImplemented
        return self + (-FieldElement.coerce(other))

    def __rsub__(self, other: ty.Any) -> FieldElement:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return FieldElement.from_rational(other) - self

    def __mul__(self, other: ty.Any) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            other = Fraction(other)
            return FieldElement(
                [n * other.numerator for n in self._numerators],
                self._denominator * other.denominator,
            )
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.is_rational():
            return self * Fraction(other._numerators[0], other._denominator)
        if self.is_rational():
            return other * Fraction(self._numerators[0], self._denominator)
        acc = [0] * DIMENSION
        bnums = other._numerators
        for i, a in enumerate(self._numerators):
            if not a:
                continue
            row = PRODUCT_TABLE[i]
            for j, b in enumerate(bnums):
                if not b:
                    continue
                ab = a * b
                for k, coeff in row[j]:
                    acc[k] += ab * coeff
        return FieldElement(
            acc, self._denominator * other._denominator * STRUCTURE_SCALE
        )

    __rmul__ = __mul__

    def __truediv__(self, other: ty.Any) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise Rk10DivisionByZeroError("division by zero in Q(alpha, beta)")
            return self * (1 / Fraction(other))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other: ty.Any) -> FieldElement:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return FieldElement.from_rational(other) * self.inverse()

    def __pow__(self, exponent: int) -> FieldElement:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FieldElement.from_rational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # Comparison

    def __eq__(self, other: ty.Any) -> bool:
        if isinstance(other, FieldElement):
            return (
                self._denominator == other._denominator
                and self._numerators == other._numerators
            )
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            if self.is_rational():
                self._hash = hash(self.rational_value())
            else:
                self._hash = hash((self._numerators, self._denominator))
        return self._hash

    def __bool__(self) -> bool:
        return any(self._numerators)

    def __repr__(self) -> str:
        return f"FieldElement({list(self._numerators)}, {self._denominator})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.rational_value())
        terms = []
        for x, label in zip(self.xi, BASIS_LABELS):
            if not x:
                continue
            terms.append(str(x) if label == "1" else f"{x}*{label}")
        return " + ".join(terms).replace("+ -", "- ")

    def format_xi(self) -> str:
        """The structured text form ``xi: n/d n/d ...`` used by exact tableau files"""
        return "xi: " + " ".join(
            f"{x.numerator}/{x.denominator}" for x in self.xi
        )


def _inverse(numerators: ty.Tuple[int, ...], denominator: int) -> FieldElement:
    """Invert by solving M x = e_1 over Q, where M is multiplication by the element"""
    from .linalg import solve_fractions

    element = FieldElement(numerators, denominator)
    columns = [(element * FieldElement.basis(j)).xi for j in range(DIMENSION)]
    matrix = [[columns[j][i] for j in range(DIMENSION)] for i in range(DIMENSION)]
    rhs = [Fraction(1)] + [Fraction(0)] * (DIMENSION - 1)
    return FieldElement.from_coordinates(solve_fractions(matrix, rhs))


ZERO = FieldElement.from_rational(0)
UNIT = FieldElement.from_rational(1)
ROOT3 = FieldElement.basis(SQRT3)
ROOT7 = FieldElement.basis(SQRT7)
ROOT21 = FieldElement.basis(SQRT21)
ALPHA_ELEMENT = FieldElement.basis(ALPHA)
BETA_ELEMENT = FieldElement.basis(BETA)
