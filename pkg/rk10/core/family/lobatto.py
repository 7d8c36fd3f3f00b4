from __future__ import annotations
import typing as ty
from functools import lru_cache
from fractions import Fraction
import attrs
from rk10.core.field import FieldElement, ALPHA_ELEMENT, BETA_ELEMENT, ROOT7


@attrs.frozen(kw_only=True)
class LobattoQuadrature:
    """The 6-point Lobatto quadrature on [0, 1], exact for polynomials of degree 9

    Parameters
    ----------
    theta : tuple of FieldElement
        nodes theta_1 = 0 < theta_2 < ... < theta_6 = 1
    w : tuple of FieldElement
        the matching weights
    """

    theta: ty.Tuple[FieldElement, ...]
    w: ty.Tuple[FieldElement, ...]

    def node(self, k: int) -> FieldElement:
        """1-based theta_k"""
        return self.theta[k - 1]

    def weight(self, k: int) -> FieldElement:
        """1-based w_k"""
        return self.w[k - 1]

    def moment(self, n: int) -> FieldElement:
        """sum_k w_k theta_k^n, which equals 1/(n+1) for n <= 9"""
        total = FieldElement.from_rational(0)
        for wk, tk in zip(self.w, self.theta):
            total = total + wk * tk**n
        return total

    def symbols(self) -> ty.Dict[str, FieldElement]:
        """Names usable in field literals: w1..w6 and theta1..theta6"""
        names = {f"w{k + 1}": w for k, w in enumerate(self.w)}
        names.update({f"theta{k + 1}": t for k, t in enumerate(self.theta)})
        return names


@lru_cache(maxsize=None)
def lobatto6() -> LobattoQuadrature:
    half = Fraction(1, 2)
    zero = FieldElement.from_rational(0)
    one = FieldElement.from_rational(1)
    outer = FieldElement.from_rational(Fraction(1, 30))
    inner = (14 - ROOT7) / 60
    middle = (14 + ROOT7) / 60
    return LobattoQuadrature(
        theta=(
            zero,
            (1 - ALPHA_ELEMENT) * half,
            (1 - BETA_ELEMENT) * half,
            (1 + BETA_ELEMENT) * half,
            (1 + ALPHA_ELEMENT) * half,
            one,
        ),
        w=(outer, inner, middle, middle, inner, outer),
    )
