from fractions import Fraction
import mpmath
import pytest
from hypothesis import given, settings
from rk10.core.exceptions import (
    Rk10ConstructionError,
    Rk10SingularSystemError,
    Rk10UsageError,
)
from rk10.core.field import FieldElement
from rk10.core.tableau import check_bcd, cluster_analysis, d_n, q_n, verify_order
from rk10.core.family import (
    C6_NAMES,
    GAMMA_NAMES,
    PARAMETER_NAMES,
    STAGES,
    FamilyParams,
    c6_of,
    closing_pivot,
    constants_block,
    constants_block_report,
    closure_constants,
    construct,
    derive_c6_constants,
    derive_closing_pivot,
    lobatto6,
    nodes_of,
    printed_c6_constants,
    printed_closure_constants,
    reference_params,
    renormalized_closing,
    solve_c6,
    symmetric_line_constants,
    symmetric_line_sum,
    weights_of,
)
from rk10.testing import family_params

REFERENCE_C6 = "0.778740761536291800442363524550"

REFERENCE_MAPPING = {
    "c2": "2/15",
    "c4": "2/5",
    "c5": "4/7",
    "b10": "2/7*w2",
    "b12": "2/9*w3",
    "b13": "w4",
    "b14": "w5",
}


def test_lobatto_moments():
    quadrature = lobatto6()
    for n in range(10):
        assert quadrature.moment(n) == Fraction(1, n + 1)
    assert quadrature.moment(10) != Fraction(1, 11)


def test_lobatto_nodes_symmetric():
    quadrature = lobatto6()
    assert quadrature.node(1) == 0
    assert quadrature.node(6) == 1
    assert quadrature.weight(1) == Fraction(1, 30)
    for k in range(1, 7):
        assert quadrature.node(k) + quadrature.node(7 - k) == 1
        assert quadrature.weight(k) == quadrature.weight(7 - k)


def test_lobatto_symbols():
    symbols = lobatto6().symbols()
    assert set(symbols) == {f"w{k}" for k in range(1, 7)} | {
        f"theta{k}" for k in range(1, 7)
    }
    with mpmath.workdps(30):
        theta4 = symbols["theta4"].to_mpf(30)
        expected = mpmath.mpf("0.642615758240322548157")
        assert abs(theta4 - expected) < mpmath.mpf(10) ** -20


def test_reference_params():
    params = reference_params()
    assert params.c2 == Fraction(2, 15)
    assert params.c3 == Fraction(4, 15)
    assert params.b13 == lobatto6().weight(4)
    assert list(params.as_dict()) == list(PARAMETER_NAMES)


def test_params_from_mapping():
    mapping = dict(REFERENCE_MAPPING)
    assert FamilyParams.from_mapping(mapping) == reference_params()
    mapping["b13"] = 0
    assert FamilyParams.from_mapping(mapping).b13 == 0


@pytest.mark.parametrize(
    "change,message",
    [
        ({"c2": 0.1}, "not exact"),
        ({"c9": "1/2"}, "Unrecognised family parameters"),
    ],
)
def test_params_from_mapping_errors(change, message):
    mapping = dict(REFERENCE_MAPPING)
    mapping.update(change)
    with pytest.raises(Rk10UsageError, match=message):
        FamilyParams.from_mapping(mapping)


def test_params_missing():
    mapping = dict(REFERENCE_MAPPING)
    del mapping["b14"]
    with pytest.raises(Rk10UsageError, match="Missing family parameters"):
        FamilyParams.from_mapping(mapping)


def test_degenerate_params():
    params = reference_params()
    with pytest.raises(Rk10ConstructionError):
        params.evolve(c2=0)
    with pytest.raises(Rk10ConstructionError):
        params.evolve(c5=params.c4)
    with pytest.raises(Rk10ConstructionError):
        params.evolve(c5=params.c3)
    with pytest.raises(TypeError):
        params.evolve(c7=Fraction(1, 2))


def test_weights_and_nodes_of_reference():
    weights = weights_of(reference_params())
    nodes = nodes_of(reference_params())
    assert len(weights) == len(nodes) == STAGES
    assert sum(weights[1:], weights[0]) == 1
    assert nodes[0] == 0
    assert nodes[-1] == 1


def test_constants_block_groups():
    groups = constants_block()
    assert [len(g) for g in groups] == [42, 15, 6]
    for number, group in enumerate(groups, start=1):
        assert all(row.group == number for row in group)
        assert [row.index for row in group] == list(range(1, len(group) + 1))
        assert all(len(row.integers) == 9 for row in group)
    assert closing_pivot() == groups[0][2].value


def test_c6_closed_form():
    params = reference_params()
    c6 = c6_of(params.c4, params.c5)
    assert isinstance(c6, FieldElement)
    with mpmath.workdps(40):
        assert abs(c6.to_mpf(40) - mpmath.mpf(REFERENCE_C6)) < mpmath.mpf(10) ** -28
    assert c6_of(params.c5, params.c4) == c6


def test_c6_on_symmetric_line():
    u1, u2 = symmetric_line_constants()
    c4 = FieldElement.from_rational(Fraction(3, 10))
    c5 = symmetric_line_sum() - c4
    assert c6_of(c4, c5) == u1 / (u2 - (c5 - c4) ** 2)


def test_c6_denominator_checked():
    k = printed_c6_constants()
    zero = type(k)(U=0, U1=0, U2=0, V=0, V1=0, V2=0)
    with pytest.raises(Rk10ConstructionError):
        c6_of(Fraction(2, 5), Fraction(4, 7), zero)


@pytest.mark.slow
def test_constants_report_labels():
    report = constants_block_report()
    assert len(report) == 63
    assert report[2].label == "A[14,13]"
    assert [entry.label for entry in report[-6:]] == ["U", "U1", "U2", "V", "V1", "V2"]
    assert report[0].as_dict()["integers"] == list(report[0].row.integers)


def test_golden_listing_nodes(golden_numeric):
    assert golden_numeric.s == STAGES
    assert golden_numeric.is_explicit
    with mpmath.workdps(40):
        c6 = mpmath.mpf(REFERENCE_C6)
        assert abs(golden_numeric.c[5] - c6) < mpmath.mpf(10) ** -28
    assert abs(golden_numeric.c[6] - mpmath.mpf("0.642615758")) < 1e-9


def test_numeric_construction_matches_listing(golden_numeric):
    numeric = construct(reference_params(), numeric_digits=60)
    assert numeric.mode == "numeric"
    for x, y in zip(numeric.b + numeric.c, golden_numeric.b + golden_numeric.c):
        assert abs(x - y) < mpmath.mpf(10) ** -40
    for row, golden_row in zip(numeric.A, golden_numeric.A):
        for x, y in zip(row, golden_row):
            assert abs(x - y) < mpmath.mpf(10) ** -40


def test_c6_override_breaks_order():
    tab = construct(reference_params(), numeric_digits=40, c6=Fraction(3, 4))
    assert abs(tab.c[5] - mpmath.mpf("0.75")) < 1e-30
    assert not verify_order(tab, 10).passed


@pytest.mark.slow
def test_exact_reference_matches_listing(reference_exact, golden_numeric):
    assert reference_exact.name == "reference"
    assert verify_order(reference_exact, 10).passed
    numeric = reference_exact.to_numeric(100)
    for x, y in zip(numeric.c + numeric.b, golden_numeric.c + golden_numeric.b):
        assert abs(x - y) < mpmath.mpf(10) ** -85
    for row, golden_row in zip(numeric.A, golden_numeric.A):
        for x, y in zip(row, golden_row):
            assert abs(x - y) < mpmath.mpf(10) ** -85


@pytest.mark.slow
def test_reference_fails_order_11(reference_exact):
    report = verify_order(reference_exact, 11)
    assert report.achieved_order == 10


@pytest.mark.slow
def test_reference_closing_pivot(reference_exact):
    b, A = reference_exact.b, reference_exact.A
    assert b[13] * A[13][12] / b[12] == closing_pivot()


@pytest.mark.slow
def test_reference_d1_antisymmetry(reference_exact):
    d1 = d_n(reference_exact, 1).values
    assert all(not d1[j] for j in list(range(6)) + [14])
    for j, k in ((6, 12), (7, 13), (8, 9), (10, 11)):
        assert d1[j] == -d1[k]


@pytest.mark.slow
def test_reference_cluster_identity(reference_exact):
    assert cluster_analysis(reference_exact).identity_holds


@pytest.mark.slow
def test_solved_c6_matches_closed_form():
    c6 = solve_c6(Fraction(2, 5), Fraction(4, 7), digits=40)
    with mpmath.workdps(40):
        assert abs(c6 - mpmath.mpf(REFERENCE_C6)) < mpmath.mpf(10) ** -28


@pytest.mark.slow
def test_derived_closing_pivot():
    assert derive_closing_pivot(digits=50) == closing_pivot()


@pytest.mark.slow
@settings(max_examples=5, deadline=None)
@given(family_params())
def test_members_have_order_10(params):
    tab = construct(params, numeric_digits=60)
    assert tab.s == STAGES
    assert tab.is_explicit
    assert verify_order(tab, 10).passed
    assert q_n(tab, 1).nonzero_stages(tab) == [2]
    assert all(tab.arithmetic.is_zero(tab.A[i][2]) for i in range(6, STAGES))


@pytest.mark.slow
def test_reference_structure(reference_exact):
    assert check_bcd(reference_exact).as_dict() == {"B": 10, "C": 1, "D": 1}
    c2 = reference_exact.c[1]
    q1 = q_n(reference_exact, 1)
    assert q1.nonzero_stages(reference_exact) == [2]
    assert q1[1] == -c2 * c2 / 2
    assert all(not reference_exact.A[i][2] for i in range(6, STAGES))


@pytest.mark.slow
def test_reference_closing_clusters(reference_exact):
    report = cluster_analysis(reference_exact)
    for stages in ((7, 13), (8, 14), (9, 10), (11, 12)):
        cluster = report.cluster_of(stages[0])
        assert cluster.stages == stages
        assert (cluster.order, cluster.coorder) == (4, 4)


@pytest.mark.slow
def test_renormalized_closing(reference_exact):
    closing = renormalized_closing(reference_exact)
    assert closing.coefficients[14, 13] == closing_pivot()
    assert all(j >= 7 for _, j in closing.coefficients)
    assert len(closing.delta) == 5 * (STAGES - 6)


@pytest.mark.slow
def test_closure_constants_against_printed_rows():
    fitted = closure_constants(reference_params(), numeric_digits=60)
    printed = printed_closure_constants()
    assert list(fitted.as_dict()) == list(GAMMA_NAMES)
    assert len(printed.values()) == len(GAMMA_NAMES)
    for value in fitted.values():
        assert mpmath.isfinite(value)


@pytest.mark.slow
def test_derive_c6_constants():
    derivation = derive_c6_constants(digits=40)
    assert set(derivation.agrees) == set(C6_NAMES)
    assert derivation.all_agree
    assert derivation.ratios["U2"] == 1
    printed = printed_c6_constants()
    for name in C6_NAMES:
        assert derivation.identified[name] == getattr(printed, name) / printed.U2
    assert derivation.constants(printed.U2) == printed
    with pytest.raises(Rk10SingularSystemError):
        derive_c6_constants(samples=[(Fraction(2, 5), Fraction(4, 7))])


@pytest.mark.slow
def test_closure_constants_independent_of_weights():
    params = reference_params()
    other = params.evolve(
        b10=Fraction(1, 20),
        b12=Fraction(1, 25),
        b13=Fraction(1, 15),
        b14=Fraction(1, 18),
    )
    assert closure_constants(params) == closure_constants(other)


def test_second_column_inversely_proportional_to_c2():
    params = reference_params()
    first = construct(params, numeric_digits=60)
    second = construct(params.evolve(c2=Fraction(1, 10)), numeric_digits=60)
    c2, c2_other = first.c[1], second.c[1]
    with mpmath.workdps(70):
        assert abs(c2_other - mpmath.mpf(1) / 10) < mpmath.mpf(10) ** -55
        tolerance = mpmath.mpf(10) ** -45
        for x, y in zip(first.b, second.b):
            assert abs(x - y) < tolerance
        for k, (x, y) in enumerate(zip(first.c, second.c)):
            if k != 1:
                assert abs(x - y) < tolerance
        for i in range(2, STAGES):
            row, row_other = first.A[i], second.A[i]
            assert abs(c2 * row[1] - c2_other * row_other[1]) < tolerance
            assert abs(row[0] + row[1] - row_other[0] - row_other[1]) < tolerance
            for j in range(2, i):
                assert abs(row[j] - row_other[j]) < tolerance


@pytest.mark.slow
@settings(max_examples=3, deadline=None)
@given(family_params())
def test_exact_members(params):
    tab = construct(params)
    assert tab.mode == "exact"
    assert verify_order(tab, 10).passed
    q1 = q_n(tab, 1)
    assert q1.nonzero_stages(tab) == [2]
    assert q1[1] == -tab.c[1] * tab.c[1] / 2
    assert all(not tab.A[i][2] for i in range(6, STAGES))
    d1 = d_n(tab, 1).values
    for j, k in ((6, 12), (7, 13), (8, 9), (10, 11)):
        assert d1[j] == -d1[k]
    report = cluster_analysis(tab)
    for stages in ((7, 13), (8, 14), (9, 10), (11, 12)):
        cluster = report.cluster_of(stages[0])
        assert cluster.stages == stages
        assert (cluster.order, cluster.coorder) == (4, 4)
    assert report.identity_holds
