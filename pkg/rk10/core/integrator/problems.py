from __future__ import annotations
import re
import typing as ty
import attrs
from typing_extensions import Self
import mpmath
from rk10.core.exceptions import Rk10FormatError, Rk10UsageError
from .expression import Expression, parse_expression, evaluate_constant

State = ty.Tuple[ty.Any, ...]


def _literal_tuple(values: ty.Iterable[ty.Any]) -> ty.Tuple[ty.Any, ...]:
    return tuple(values)


@attrs.frozen(kw_only=True)
class OdeProblem:
    """An initial value problem dx/dt = f(t, x), x(t0) = x0

    Parameters
    ----------
    name : str
        label of the problem
    variables : tuple of str
        names of the state components
    x0 : tuple
        the initial state; entries are numbers or constant expressions such as
        "pi/2"
    t0 : int, str or mpf
        the initial time
    rhs : callable, optional
        f(t, x) returning the derivative as a sequence
    exact : callable, optional
        the exact solution x(t), if known
    """

    name: str
    variables: ty.Tuple[str, ...] = attrs.field(converter=tuple)
    x0: ty.Tuple[ty.Any, ...] = attrs.field(converter=_literal_tuple)
    t0: ty.Any = 0
    rhs: ty.Optional[ty.Callable[[ty.Any, State], ty.Sequence[ty.Any]]] = (
        attrs.field(default=None, eq=False)
    )
    exact: ty.Optional[ty.Callable[[ty.Any], ty.Sequence[ty.Any]]] = attrs.field(
        default=None, eq=False
    )

    @x0.validator
    def x0_validator(self, _: attrs.Attribute, x0: ty.Tuple[ty.Any, ...]) -> None:
        if len(x0) != len(self.variables):
            raise Rk10UsageError(
                f"Problem '{self.name}' has {len(self.variables)} variables but "
                f"{len(x0)} initial values"
            )

    @property
    def dimension(self) -> int:
        return len(self.variables)

    def initial_state(self) -> State:
        """x0 as mpmath reals at the current working precision"""
        return tuple(_to_mpf(v) for v in self.x0)

    def initial_time(self) -> mpmath.mpf:
        return _to_mpf(self.t0)

    def derivative(self, t: ty.Any, x: State) -> State:
        if self.rhs is None:
            raise Rk10UsageError(f"Problem '{self.name}' has no right-hand side")
        return tuple(self.rhs(t, x))

    def exact_solution(self, t: ty.Any) -> State:
        if self.exact is None:
            raise Rk10UsageError(f"Problem '{self.name}' has no known exact solution")
        return tuple(self.exact(t))


def _to_mpf(value: ty.Any) -> mpmath.mpf:
    if isinstance(value, str):
        return evaluate_constant(value, mpmath.mp.dps)
    return mpmath.mpf(value)


_EQUATION_RE = re.compile(r"^\s*([A-Za-z_][A-Za-z_0-9]*)\s*'\s*=(.*)$")


@attrs.frozen(kw_only=True)
class ExpressionProblem(OdeProblem):
    """A problem whose right-hand side is given as text, one equation per variable in
    the form "x' = -y". The expressions may use the state variables, t, pi and e."""

    expressions: ty.Tuple[Expression, ...] = attrs.field(converter=tuple)

    @expressions.validator
    def expressions_validator(
        self, _: attrs.Attribute, expressions: ty.Tuple[Expression, ...]
    ) -> None:
        if len(expressions) != len(self.variables):
            raise Rk10UsageError(
                f"{len(self.variables)} variables need as many equations, "
                f"got {len(expressions)}"
            )
        allowed = set(self.variables) | {"t", "pi", "e"}
        for expression in expressions:
            unknown = expression.names() - allowed
            if unknown:
                raise Rk10UsageError(
                    f"unknown names {sorted(unknown)} in right-hand side, the "
                    f"state variables are {list(self.variables)}"
                )

    def derivative(self, t: ty.Any, x: State) -> State:
        env = dict(zip(self.variables, x))
        env["t"] = t
        return tuple(e.evaluate(env) for e in self.expressions)

    @classmethod
    def parse(
        cls,
        equations: ty.Sequence[str],
        initial: ty.Mapping[str, ty.Any],
        t0: ty.Any = 0,
        name: str = "expr",
    ) -> Self:
        variables = []
        expressions = []
        for equation in equations:
            match = _EQUATION_RE.match(equation)
            if not match:
                raise Rk10FormatError(
                    f"equation '{equation}' is not of the form \"x' = expression\""
                )
            variables.append(match.group(1))
            expressions.append(parse_expression(match.group(2)))
        if len(set(variables)) != len(variables):
            raise Rk10UsageError(f"repeated variable in equations {list(equations)}")
        missing = [v for v in variables if v not in initial]
        if missing:
            raise Rk10UsageError(f"no initial value for {missing}")
        return cls(
            name=name,
            variables=variables,
            x0=[initial[v] for v in variables],
            t0=t0,
            expressions=expressions,
        )


def _rotation(t: ty.Any, x: State) -> State:
    return (-x[1], x[0])


def _normalised_rotation(t: ty.Any, x: State) -> State:
    r2 = x[0] ** 2 + x[1] ** 2
    return (-x[1] / r2, x[0] / r2)


def _unit_circle(t: ty.Any) -> State:
    return (mpmath.cos(t), mpmath.sin(t))


LINEAR_CIRCLE = OdeProblem(
    name="linear-circle",
    variables=("x", "y"),
    x0=(1, 0),
    rhs=_rotation,
    exact=_unit_circle,
)

NONLINEAR_CIRCLE = OdeProblem(
    name="nonlinear-circle",
    variables=("x", "y"),
    x0=(1, 0),
    rhs=_normalised_rotation,
    exact=_unit_circle,
)

BUILTIN_PROBLEMS = {p.name: p for p in (LINEAR_CIRCLE, NONLINEAR_CIRCLE)}
