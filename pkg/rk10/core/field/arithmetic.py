"""The two scalar kinds a tableau can be evaluated in: exact elements of Q(alpha, beta)
and high-precision mpmath reals. Code that is shared by both modes only manipulates
scalars through ``+ - * /`` and the hooks defined here."""
from __future__ import annotations
import typing as ty
import contextlib
from fractions import Fraction
import attrs
import mpmath
from .element import FieldElement, GUARD_DIGITS

DEFAULT_DIGITS = 60

Scalar = ty.Union[FieldElement, mpmath.mpf]


@attrs.define(frozen=True)
class Arithmetic:

    mode: ty.ClassVar[str] = "abstract"

    @property
    def exact(self) -> bool:
        return self.mode == "exact"

    def coerce(self, value: ty.Any) -> ty.Any:
        raise NotImplementedError

    def zero(self) -> ty.Any:
        return self.coerce(0)

    def one(self) -> ty.Any:
        return self.coerce(1)

    def is_zero(self, value: ty.Any) -> bool:
        raise NotImplementedError

    def is_negligible(self, value: ty.Any, scale: ty.Any) -> bool:
        raise NotImplementedError

    def magnitude(self, value: ty.Any) -> mpmath.mpf:
        raise NotImplementedError

    def to_mpf(self, value: ty.Any, digits: int) -> mpmath.mpf:
        raise NotImplementedError

    def context(self) -> ty.ContextManager[ty.Any]:
        return contextlib.nullcontext()


@attrs.define(frozen=True)
class ExactArithmetic(Arithmetic):
    """Arithmetic in Q(alpha, beta), where zero tests are exact"""

    mode: ty.ClassVar[str] = "exact"

    def coerce(self, value: ty.Any) -> FieldElement:
        return FieldElement.coerce(value)

    def is_zero(self, value: ty.Any) -> bool:
        return not value

    def is_negligible(self, value: ty.Any, scale: ty.Any) -> bool:
        return not value

    def magnitude(self, value: ty.Any) -> mpmath.mpf:
        return abs(FieldElement.coerce(value).to_mpf(15))

    def to_mpf(self, value: ty.Any, digits: int) -> mpmath.mpf:
        return FieldElement.coerce(value).to_mpf(digits)


@attrs.define(frozen=True)
class NumericArithmetic(Arithmetic):
    """mpmath arithmetic carried with ``digits`` significant decimal digits

    Zero tests (node equality, admissibility) use the absolute tolerance
    10^(-digits+10); rank decisions use the relative threshold 10^(-digits/2).
    """

    mode: ty.ClassVar[str] = "numeric"

    digits: int = attrs.field(default=DEFAULT_DIGITS)

    @digits.validator
    def digits_validator(self, _: attrs.Attribute[int], digits: int) -> None:
        if digits < 1:
            raise ValueError(f"Working precision must be positive, got {digits}")

    @property
    def tolerance(self) -> mpmath.mpf:
        return mpmath.mpf(10) ** (-self.digits + 10)

    @property
    def rank_threshold(self) -> mpmath.mpf:
        return mpmath.mpf(10) ** (-self.digits // 2)

    def coerce(self, value: ty.Any) -> mpmath.mpf:
        if isinstance(value, FieldElement):
            return value.to_mpf(self.digits)
        with self.context():
            if isinstance(value, Fraction):
                return mpmath.mpf(value.numerator) / value.denominator
            return mpmath.mpf(value)

    def is_zero(self, value: ty.Any) -> bool:
        return bool(abs(value) <= self.tolerance)

    def is_negligible(self, value: ty.Any, scale: ty.Any) -> bool:
        return bool(abs(value) <= self.rank_threshold * max(abs(scale), 1))

    def magnitude(self, value: ty.Any) -> mpmath.mpf:
        return abs(value)

    def to_mpf(self, value: ty.Any, digits: int) -> mpmath.mpf:
        return self.coerce(value)

    def context(self) -> ty.ContextManager[ty.Any]:
        return mpmath.workdps(self.digits + GUARD_DIGITS)


def arithmetic_for(mode: str, digits: int = DEFAULT_DIGITS) -> Arithmetic:
    if mode == "exact":
        return ExactArithmetic()
    if mode == "numeric":
        return NumericArithmetic(digits=digits)
    raise ValueError(f"Unrecognised arithmetic mode '{mode}'")
