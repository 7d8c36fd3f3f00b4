from __future__ import annotations
import typing as ty
import logging
import mpmath
from .basis import basis_values, DIMENSION
from .element import FieldElement

logger = logging.getLogger("rk10")


def relation_height(digits: int) -> int:
    """Largest integer allowed in a relation found at ``digits`` digits. Nine integers
    of height H fit about 9 log10(H) digits by chance; H keeps that 3 digits below the
    relation tolerance"""
    tolerance_digits = int(digits * 0.8)
    return max(10, int(10 ** ((tolerance_digits - 3) / (DIMENSION + 1))))


def identify(
    value: mpmath.mpf, digits: int = 100, max_coefficient: int = 10**9
) -> ty.Optional[FieldElement]:
    """Recognises a high-precision real as an element of Q(alpha, beta)

    Looks for an integer relation between the value and the eight basis elements with
    ``mpmath.pslq`` at tolerance 10^(-0.8 digits). The integers of the relation are
    bounded by ``relation_height(digits)``, and the recovered element must reproduce
    the value to within that tolerance.

    Parameters
    ----------
    value : mpf
        the number to identify, accurate to about ``digits`` digits
    digits : int
        the working precision of the relation search
    max_coefficient : int
        further bound on the integers of the relation

    Returns
    -------
    FieldElement or None
        the element, or None if no relation within the bound was found
    """
    height = min(max_coefficient, relation_height(digits))
    with mpmath.workdps(digits):
        tolerance = mpmath.mpf(10) ** (-int(digits * 0.8))
        vector = [mpmath.mpf(value)] + list(basis_values(digits + 10))
        relation = mpmath.pslq(vector, tol=tolerance, maxcoeff=height, maxsteps=10**6)
        if relation is None or relation[0] == 0:
            logger.debug("No relation found for %s", mpmath.nstr(value, 20))
            return None
        assert len(relation) == DIMENSION + 1
        candidate = FieldElement([-r for r in relation[1:]], relation[0])
        error = abs(candidate.to_mpf(digits) - value)
        if error > 10 * tolerance * max(1, abs(value)):
            logger.debug(
                "Relation for %s rejected, error %s", mpmath.nstr(value, 20), error
            )
            return None
    return candidate
