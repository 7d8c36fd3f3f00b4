from __future__ import annotations
import typing as ty
import logging
import attrs
from typing_extensions import Self
from rk10.core.exceptions import Rk10UsageError
from rk10.core.field import (
    Arithmetic,
    ExactArithmetic,
    NumericArithmetic,
    arithmetic_for,
    DEFAULT_DIGITS,
)
from rk10.core.utils import short

logger = logging.getLogger("rk10")

Vector = ty.Tuple[ty.Any, ...]
Matrix = ty.Tuple[Vector, ...]


def _to_matrix(rows: ty.Sequence[ty.Sequence[ty.Any]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


@attrs.frozen(kw_only=True, cache_hash=True)
class ButcherTableau:
    """A Runge-Kutta method given by its coefficient matrix A, weights b and nodes c,
    with entries that are either exact elements of Q(alpha, beta) or mpmath reals

    Parameters
    ----------
    A : tuple of tuples
        the s x s coefficient matrix
    b : tuple
        the weights
    c : tuple
        the nodes
    arithmetic : Arithmetic
        the scalar kind of the entries, exact by default
    name : str
        label used in reports
    """

    A: Matrix = attrs.field(converter=_to_matrix)
    b: Vector = attrs.field(converter=tuple)
    c: Vector = attrs.field(converter=tuple)
    arithmetic: Arithmetic = attrs.field(factory=ExactArithmetic, eq=False)
    name: str = attrs.field(default="", eq=False)

    @A.validator
    def A_validator(self, _: attrs.Attribute[Matrix], A: Matrix) -> None:
        s = len(A)
        if s == 0:
            raise Rk10UsageError("A tableau needs at least one stage")
        for i, row in enumerate(A):
            if len(row) != s:
                raise Rk10UsageError(
                    f"Row {i + 1} of A has {len(row)} entries, expected {s}"
                )

    @b.validator
    def b_validator(self, _: attrs.Attribute[Vector], b: Vector) -> None:
        if len(b) != len(self.A):
            raise Rk10UsageError(f"Expected {len(self.A)} weights, got {len(b)}")

    @c.validator
    def c_validator(self, _: attrs.Attribute[Vector], c: Vector) -> None:
        if len(c) != len(self.A):
            raise Rk10UsageError(f"Expected {len(self.A)} nodes, got {len(c)}")

    @classmethod
    def from_rows(
        cls,
        A: ty.Sequence[ty.Sequence[ty.Any]],
        b: ty.Sequence[ty.Any],
        c: ty.Optional[ty.Sequence[ty.Any]] = None,
        mode: str = "exact",
        digits: int = DEFAULT_DIGITS,
        name: str = "",
    ) -> Self:
        """Builds a tableau from plain rows, coercing every entry to the scalar kind
        of ``mode``. If ``c`` is omitted the row sums of A are used."""
        arithmetic = arithmetic_for(mode, digits)
        with arithmetic.context():
            A_ = [[arithmetic.coerce(x) for x in row] for row in A]
            b_ = [arithmetic.coerce(x) for x in b]
            if c is None:
                c_ = [sum(row[1:], row[0]) for row in A_]
            else:
                c_ = [arithmetic.coerce(x) for x in c]
        tableau = cls(A=A_, b=b_, c=c_, arithmetic=arithmetic, name=name)
        if not tableau.row_sum_ok:
            logger.warning(
                "Tableau %s violates the row-sum condition sum_j a_ij = c_i",
                name or f"with {tableau.s} stages",
            )
        return tableau

    @property
    def s(self) -> int:
        return len(self.A)

    @property
    def stages(self) -> int:
        return len(self.A)

    @property
    def mode(self) -> str:
        return self.arithmetic.mode

    @property
    def digits(self) -> ty.Optional[int]:
        if isinstance(self.arithmetic, NumericArithmetic):
            return self.arithmetic.digits
        return None

    @property
    def exact(self) -> bool:
        return self.arithmetic.exact

    @property
    def is_explicit(self) -> bool:
        return all(
            self.arithmetic.is_zero(self.A[i][j])
            for i in range(self.s)
            for j in range(i, self.s)
        )

    @property
    def row_sum_ok(self) -> bool:
        with self.arithmetic.context():
            return all(
                self.arithmetic.is_zero(sum(row[1:], row[0]) - ci)
                for row, ci in zip(self.A, self.c)
            )

    def zero(self) -> ty.Any:
        return self.arithmetic.zero()

    def one(self) -> ty.Any:
        return self.arithmetic.one()

    def ones(self) -> Vector:
        return tuple(self.one() for _ in range(self.s))

    def nonzero_rows(self) -> ty.List[ty.List[ty.Tuple[int, ty.Any]]]:
        """The nonzero entries of each row of A as (column, value) pairs"""
        return [
            [(j, a) for j, a in enumerate(row) if not self.arithmetic.is_zero(a)]
            for row in self.A
        ]

    def to_numeric(self, digits: int = DEFAULT_DIGITS) -> ButcherTableau:
        if isinstance(self.arithmetic, NumericArithmetic):
            if self.arithmetic.digits == digits:
                return self
        arithmetic = NumericArithmetic(digits=digits)
        with arithmetic.context():
            convert = arithmetic.coerce
            return ButcherTableau(
                A=[[convert(x) for x in row] for row in self.A],
                b=[convert(x) for x in self.b],
                c=[convert(x) for x in self.c],
                arithmetic=arithmetic,
                name=self.name,
            )

    def transposed_column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.A)

    def __str__(self) -> str:
        lines = []
        for ci, row in zip(self.c, self.A):
            lines.append(
                f"{short(ci, 8):>14} | " + " ".join(f"{short(a, 8):>14}" for a in row)
            )
        lines.append("-" * len(lines[0]))
        lines.append(" " * 15 + "| " + " ".join(f"{short(x, 8):>14}" for x in self.b))
        return "\n".join(lines)


def vector_dot(u: ty.Sequence[ty.Any], v: ty.Sequence[ty.Any], zero: ty.Any) -> ty.Any:
    total = zero
    for x, y in zip(u, v):
        if x and y:
            total = total + x * y
    return total


def elementwise(u: ty.Sequence[ty.Any], v: ty.Sequence[ty.Any]) -> Vector:
    return tuple(x * y for x, y in zip(u, v))


def power(c: ty.Sequence[ty.Any], n: int, one: ty.Any) -> Vector:
    return tuple(x**n if n else one for x in c)
