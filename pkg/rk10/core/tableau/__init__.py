from .base import ButcherTableau, vector_dot, elementwise
from .weights import (
    TreeEvaluator,
    VerificationReport,
    evaluator_for,
    phi,
    elementary_weight,
    verify_order,
    verify_order_q_form,
    verify_order_d_form,
    minimal_stages,
    MINIMAL_STAGES,
)
from .conditions import (
    ConditionVector,
    SimplifyingAssumptions,
    q_vector,
    d_vector,
    q_n,
    d_n,
    check_bcd,
)
from .structure import (
    ClusterReport,
    NodeCluster,
    StageOrders,
    SubspaceBasis,
    StructureAnalyzer,
    stage_orders,
    cluster_analysis,
    filtration,
    DEFAULT_MAX_ORDER,
)

__all__ = [
    "ButcherTableau",
    "vector_dot",
    "elementwise",
    "TreeEvaluator",
    "VerificationReport",
    "evaluator_for",
    "phi",
    "elementary_weight",
    "verify_order",
    "verify_order_q_form",
    "verify_order_d_form",
    "minimal_stages",
    "MINIMAL_STAGES",
    "ConditionVector",
    "SimplifyingAssumptions",
    "q_vector",
    "d_vector",
    "q_n",
    "d_n",
    "check_bcd",
    "ClusterReport",
    "NodeCluster",
    "StageOrders",
    "SubspaceBasis",
    "StructureAnalyzer",
    "stage_orders",
    "cluster_analysis",
    "filtration",
    "DEFAULT_MAX_ORDER",
]
