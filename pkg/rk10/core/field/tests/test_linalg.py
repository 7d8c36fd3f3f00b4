from fractions import Fraction
import mpmath
import pytest
from rk10.core.exceptions import Rk10SingularSystemError
from rk10.core.field import (
    ExactArithmetic,
    NumericArithmetic,
    FieldElement,
    ROOT7,
    ALPHA_ELEMENT,
    BETA_ELEMENT,
    solve_linear,
    solve_fractions,
    span_basis,
    identify,
    relation_height,
)

F = Fraction


def test_solve_fractions():
    assert solve_fractions([[F(2), F(1)], [F(1), F(3)]], [F(3), F(5)]) == [
        F(4, 5),
        F(7, 5),
    ]
    with pytest.raises(Rk10SingularSystemError):
        solve_fractions([[F(1), F(2)], [F(2), F(4)]], [F(1), F(2)])


def test_solve_linear_field_elements():
    one = FieldElement.from_rational(1)
    rows = [[ROOT7, one], [one, ROOT7]]
    x = [ALPHA_ELEMENT, BETA_ELEMENT]
    rhs = [rows[0][0] * x[0] + rows[0][1] * x[1], rows[1][0] * x[0] + rows[1][1] * x[1]]
    assert solve_linear(rows, rhs, ExactArithmetic()) == x


def test_solve_linear_overdetermined():
    rows = [[F(1), F(0)], [F(0), F(1)], [F(1), F(1)]]
    assert solve_linear(rows, [F(1), F(2), F(3)]) == [1, 2]
    with pytest.raises(Rk10SingularSystemError, match="inconsistent"):
        solve_linear(rows, [F(1), F(2), F(4)], name="test system")


def test_solve_linear_singular_names_system():
    with pytest.raises(Rk10SingularSystemError, match="opening solve singular: why"):
        solve_linear(
            [[F(1), F(1)], [F(1), F(1)]],
            [F(0), F(0)],
            name="opening solve",
            reason="why",
        )


def test_solve_linear_numeric():
    arith = NumericArithmetic(digits=30)
    with arith.context():
        rows = [[mpmath.mpf(1), mpmath.mpf(2)], [mpmath.mpf(3), mpmath.mpf(4)]]
        solution = solve_linear(rows, [mpmath.mpf(5), mpmath.mpf(6)], arith)
    assert abs(solution[0] + 4) < mpmath.mpf(10) ** -25
    assert abs(solution[1] - mpmath.mpf("4.5")) < mpmath.mpf(10) ** -25


def test_span_basis_dimension():
    vectors = [[F(1), F(0), F(1)], [F(2), F(0), F(2)], [F(0), F(1), F(0)]]
    assert span_basis(vectors, 3, ExactArithmetic()).dim == 2


def test_identify_roundtrip():
    x = Fraction(3, 7) - 2 * ROOT7 / 5 + ALPHA_ELEMENT / 3
    assert identify(x.to_mpf(80), digits=80) == x


def test_identify_rejects_transcendental():
    with mpmath.workdps(60):
        assert identify(+mpmath.pi, digits=60, max_coefficient=1000) is None


def test_identify_bounds_relation_height():
    assert relation_height(40) < 10**4
    assert relation_height(80) > 10**6
    with mpmath.workdps(40):
        assert identify(+mpmath.pi, digits=40) is None
