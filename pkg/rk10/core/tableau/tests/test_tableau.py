from fractions import Fraction
import pytest
from hypothesis import given, settings
from rk10.common import (
    builtin_method,
    classic_rk4,
    euler,
    implicit_midpoint,
    three_eighths,
)
from rk10.core.exceptions import Rk10UsageError
from rk10.core.trees import bushy, d_map, q_map
from rk10.core.tableau import (
    ButcherTableau,
    TreeEvaluator,
    check_bcd,
    cluster_analysis,
    d_vector,
    filtration,
    minimal_stages,
    q_n,
    q_vector,
    stage_orders,
    vector_dot,
    verify_order,
    verify_order_d_form,
    verify_order_q_form,
)
from rk10.core.utils import UNBOUNDED
from rk10.testing import explicit_tableaus, rooted_trees, tree_pairs


def test_shape_validation():
    with pytest.raises(Rk10UsageError, match="at least one stage"):
        ButcherTableau.from_rows([], [], [])
    with pytest.raises(Rk10UsageError, match="Row 2 of A"):
        ButcherTableau.from_rows([[0, 0], [1]], [1, 0], [0, 1])
    with pytest.raises(Rk10UsageError, match="Expected 2 weights"):
        ButcherTableau.from_rows([[0, 0], [1, 0]], [1], [0, 1])


def test_row_sums_default_to_nodes():
    tab = ButcherTableau.from_rows([[0, 0], [Fraction(2, 3), 0]], [0, 1])
    assert tab.c == (0, Fraction(2, 3))
    assert tab.row_sum_ok
    assert tab.is_explicit


def test_row_sum_violation_is_logged(caplog):
    tab = ButcherTableau.from_rows([[0, 0], [1, 0]], [0, 1], [0, 2], name="bad")
    assert not tab.row_sum_ok
    assert "row-sum" in caplog.text


def test_equality_ignores_name():
    assert classic_rk4() == ButcherTableau.from_rows(
        classic_rk4().A, classic_rk4().b, classic_rk4().c, name="other"
    )


@pytest.mark.parametrize(
    "method,order", [("euler", 1), ("midpoint", 2), ("heun", 2), ("rk4", 4)]
)
def test_known_orders(method, order):
    tab = builtin_method(method)
    report = verify_order(tab, order + 1)
    assert report.achieved_order == order
    assert not report.passed
    assert all(t.order == order + 1 for t in report.failing)


def test_rk4_passes_order_4():
    report = verify_order(classic_rk4(), 4)
    assert report.passed
    assert len(report.residuals) == 8
    assert report.max_abs_residual == 0


def test_rk4_numeric():
    report = verify_order(classic_rk4(mode="numeric", digits=30), 4)
    assert report.mode == "numeric"
    assert report.passed


@pytest.mark.parametrize("check", [verify_order_q_form, verify_order_d_form])
def test_condition_forms_agree_on_rk4(check):
    for method in (classic_rk4(), three_eighths()):
        assert check(method, 4).passed
        assert check(method, 5).achieved_order == 4


@pytest.mark.parametrize(
    "method",
    ["euler", "midpoint", "implicit-midpoint", "heun", "rk4", "three-eighths"],
)
def test_condition_forms_match_direct_order(method):
    tab = builtin_method(method)
    direct = verify_order(tab, 5).achieved_order
    assert verify_order_q_form(tab, 5).achieved_order == direct
    assert verify_order_d_form(tab, 5).achieved_order == direct


def test_sorted_residuals_largest_first():
    report = verify_order(classic_rk4(), 5)
    magnitudes = [abs(r) for _, r in report.sorted_residuals()]
    assert magnitudes == sorted(magnitudes, reverse=True)
    assert len(report.residuals_of_order(5)) == 9


def test_order_argument_checked():
    with pytest.raises(Rk10UsageError):
        verify_order(euler(), 0)


def test_minimal_stages():
    assert minimal_stages(4) == (4, True)
    assert minimal_stages(8) == (11, True)
    assert minimal_stages(10) == (13, False)


def test_rk4_simplifying_assumptions():
    result = check_bcd(classic_rk4())
    assert result.as_dict() == {"B": 4, "C": 1, "D": 1}
    assert str(result) == "B(4) C(1) D(1)"


def test_implicit_midpoint_simplifying_assumptions():
    assert check_bcd(implicit_midpoint()).as_dict() == {"B": 2, "C": 1, "D": 1}


def test_euler_simplifying_assumptions_reach_cap():
    # A = 0 and c = 0 make every q_n vanish, so C is only bounded by the cap
    assert check_bcd(euler()).as_dict() == {"B": 1, "C": 10, "D": 0}
    assert check_bcd(euler(), cap=3).C == 3


def test_rk4_q1_stages():
    q1 = q_n(classic_rk4(), 1)
    assert not q1.vanishes
    # c = (0, 1/2, 1/2, 1): A c - c^2 / 2 is nonzero at stages 2 and 3 only
    assert q1.nonzero_stages(classic_rk4()) == [2, 3]


def test_rk4_clusters():
    report = cluster_analysis(classic_rk4(), max_order=5)
    assert [c.stages for c in report.clusters] == [(1,), (2, 3), (4,)]
    assert [c.stages for c in report.multi_stage()] == [(2, 3)]
    assert report.cluster_of(3).quadrature
    assert report.clusters[0].order == UNBOUNDED


def test_first_stage_orders_unbounded():
    orders = stage_orders(classic_rk4(), max_order=5)
    assert orders[0].stage_order == UNBOUNDED
    assert orders[0].strong_stage_order == UNBOUNDED
    assert [o.stage for o in orders] == [1, 2, 3, 4]


def test_filtrations_grow():
    tab = three_eighths()
    for family in ("phi", "Q", "D"):
        dims = [filtration(tab, family, p).dim for p in range(0, 5)]
        assert dims == sorted(dims)
        assert dims[-1] <= tab.s
    assert filtration(tab, "phi", 0).dim == 1
    assert filtration(tab, "Q", 1).dim == 0


def test_filtration_rejects_unknown_family():
    with pytest.raises(Rk10UsageError, match="Unrecognised filtration"):
        filtration(euler(), "X", 1)


@settings(max_examples=25, deadline=None)
@given(explicit_tableaus(stages=5), rooted_trees(max_order=6))
def test_q_vector_is_phi_of_q_map(tab, t):
    evaluator = TreeEvaluator(tab)
    assert evaluator.phi_combination(q_map(t)) == q_vector(tab, t, evaluator).values


@settings(max_examples=25, deadline=None)
@given(explicit_tableaus(stages=5), tree_pairs(max_total=7))
def test_d_vector_pairs_like_d_map(tab, pair):
    t, T = pair
    evaluator = TreeEvaluator(tab)
    d_values = d_vector(tab, t, evaluator).values
    paired = vector_dot(d_values, evaluator.phi(T), tab.zero())
    assert evaluator.weight_combination(d_map(t, T)) == paired


@settings(max_examples=25, deadline=None)
@given(explicit_tableaus(min_stages=2, max_stages=4))
def test_q_form_matches_direct_order(tab):
    direct = verify_order(tab, 4)
    assert verify_order_q_form(tab, 4).achieved_order == direct.achieved_order


def test_bushy_q_vector_matches_q_n():
    tab = three_eighths()
    assert q_vector(tab, bushy(2)).values == q_n(tab, 2).values


@settings(max_examples=25, deadline=None)
@given(explicit_tableaus(min_stages=2, max_stages=4))
def test_d_form_matches_direct_order(tab):
    direct = verify_order(tab, 4)
    assert verify_order_d_form(tab, 4).achieved_order == direct.achieved_order
