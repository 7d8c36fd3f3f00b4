"""Linear algebra shared by field inversion, subspace filtrations and the family
construction. Works with any scalar kind through an ``Arithmetic``."""
from __future__ import annotations
import typing as ty
import logging
from fractions import Fraction
from rk10.core.exceptions import Rk10SingularSystemError
from .arithmetic import Arithmetic, ExactArithmetic

logger = logging.getLogger("rk10")


def solve_fractions(
    matrix: ty.Sequence[ty.Sequence[Fraction]], rhs: ty.Sequence[Fraction]
) -> ty.List[Fraction]:
    """Gauss-Jordan elimination over the rationals for a square nonsingular system"""
    n = len(matrix)
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise Rk10SingularSystemError(
                "rational solve", f"rational system singular at column {col + 1}"
            )
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [aug[i][n] for i in range(n)]


def solve_linear(
    rows: ty.Sequence[ty.Sequence[ty.Any]],
    rhs: ty.Sequence[ty.Any],
    arithmetic: ty.Optional[Arithmetic] = None,
    name: str = "linear system",
    reason: ty.Optional[str] = None,
) -> ty.List[ty.Any]:
    """Solves a (possibly overdetermined but consistent) linear system

    Parameters
    ----------
    rows : sequence of sequences
        the coefficient matrix, at least as many rows as columns
    rhs : sequence
        the right-hand side
    arithmetic : Arithmetic
        decides zero tests; exact elimination pivots on the first nonzero entry,
        numeric elimination on the largest one
    name : str
        used to label errors, e.g. "Vandermonde-like solve"
    reason : str, optional
        appended to the error message when the system is singular

    Returns
    -------
    list
        the unique solution

    Raises
    ------
    Rk10SingularSystemError
        if the system has no unique solution or the surplus equations are violated
    """
    if arithmetic is None:
        arithmetic = ExactArithmetic()
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    if n_rows < n_cols:
        raise Rk10SingularSystemError(
            name, f"{name} underdetermined: {n_rows} equations for {n_cols} unknowns"
        )
    aug = [list(row) + [rhs[i]] for i, row in enumerate(rows)]
    scale = _scale_of((x for row in aug for x in row[:n_cols]), arithmetic)
    for col in range(n_cols):
        candidates = range(col, n_rows)
        if arithmetic.exact:
            pivot = next(
                (r for r in candidates if not arithmetic.is_zero(aug[r][col])), None
            )
        else:
            pivot = max(candidates, key=lambda r: arithmetic.magnitude(aug[r][col]))
            if arithmetic.is_negligible(aug[pivot][col], scale):
                pivot = None
        if pivot is None:
            msg = f"{name} singular"
            if reason:
                msg += f": {reason}"
            raise Rk10SingularSystemError(name, msg)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n_rows):
            if r == col:
                continue
            factor = aug[r][col]
            if arithmetic.is_zero(factor):
                continue
            aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    rhs_scale = _scale_of((row[n_cols] for row in aug), arithmetic)
    for r in range(n_cols, n_rows):
        residual = aug[r][n_cols]
        if not arithmetic.is_negligible(residual, max(scale, rhs_scale)):
            raise Rk10SingularSystemError(
                name,
                f"{name} inconsistent: surplus equation {r + 1} leaves residual "
                f"{arithmetic.to_mpf(residual, 10)}",
            )
    return [aug[i][n_cols] for i in range(n_cols)]


class EchelonBasis:
    """Incrementally maintained reduced row-echelon basis of a span of vectors

    Exact arithmetic decides independence with exact zero tests, numeric arithmetic
    with a relative threshold against the largest entry seen so far.
    """

    def __init__(self, size: int, arithmetic: Arithmetic):
        self.size = size
        self.arithmetic = arithmetic
        self._rows: ty.List[ty.Tuple[int, ty.List[ty.Any]]] = []
        self._scale: ty.Any = 0

    @property
    def dim(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> ty.List[int]:
        return [p for p, _ in self._rows]

    def vectors(self) -> ty.List[ty.List[ty.Any]]:
        return [list(row) for _, row in self._rows]

    def _reduce(self, vector: ty.Sequence[ty.Any]) -> ty.List[ty.Any]:
        v = list(vector)
        for pivot, row in self._rows:
            factor = v[pivot]
            if self.arithmetic.is_zero(factor):
                continue
            v = [x - factor * y for x, y in zip(v, row)]
        return v

    def _pivot_of(self, v: ty.Sequence[ty.Any], scale: ty.Any) -> ty.Optional[int]:
        arith = self.arithmetic
        if arith.exact:
            return next((i for i, x in enumerate(v) if not arith.is_zero(x)), None)
        best = max(range(self.size), key=lambda i: arith.magnitude(v[i]))
        if arith.is_negligible(v[best], scale):
            return None
        return best

    def _scale_with(self, vector: ty.Sequence[ty.Any]) -> ty.Any:
        if self.arithmetic.exact:
            return 0
        return max([self._scale] + [self.arithmetic.magnitude(x) for x in vector])

    def contains(self, vector: ty.Sequence[ty.Any]) -> bool:
        scale = self._scale_with(vector)
        return self._pivot_of(self._reduce(vector), scale) is None

    def add(self, vector: ty.Sequence[ty.Any]) -> bool:
        """Adds the vector to the span, returning whether it was independent"""
        self._scale = self._scale_with(vector)
        v = self._reduce(vector)
        pivot = self._pivot_of(v, self._scale)
        if pivot is None:
            return False
        inv = 1 / v[pivot]
        v = [x * inv for x in v]
        reduced = []
        for p, row in self._rows:
            factor = row[pivot]
            if not self.arithmetic.is_zero(factor):
                row = [x - factor * y for x, y in zip(row, v)]
            reduced.append((p, row))
        reduced.append((pivot, v))
        self._rows = sorted(reduced, key=lambda pr: pr[0])
        return True

    def extend(self, vectors: ty.Iterable[ty.Sequence[ty.Any]]) -> EchelonBasis:
        for vector in vectors:
            self.add(vector)
        return self

    def nullspace(self) -> ty.List[ty.List[ty.Any]]:
        """Basis of the vectors orthogonal (under the plain dot product) to the span"""
        arith = self.arithmetic
        pivots = set(self.pivots)
        basis = []
        for free in range(self.size):
            if free in pivots:
                continue
            x = [arith.zero() for _ in range(self.size)]
            x[free] = arith.one()
            for p, row in self._rows:
                x[p] = -row[free]
            basis.append(x)
        return basis


def span_basis(
    vectors: ty.Iterable[ty.Sequence[ty.Any]], size: int, arithmetic: Arithmetic
) -> EchelonBasis:
    return EchelonBasis(size, arithmetic).extend(vectors)


def orthogonal_complement(
    vectors: ty.Iterable[ty.Sequence[ty.Any]], size: int, arithmetic: Arithmetic
) -> ty.List[ty.List[ty.Any]]:
    return span_basis(vectors, size, arithmetic).nullspace()


def dot(u: ty.Sequence[ty.Any], v: ty.Sequence[ty.Any], zero: ty.Any = 0) -> ty.Any:
    total = zero
    for x, y in zip(u, v):
        total = total + x * y
    return total


def _scale_of(values: ty.Iterable[ty.Any], arithmetic: Arithmetic) -> ty.Any:
    if arithmetic.exact:
        return 0
    return max((arithmetic.magnitude(x) for x in values), default=0)
