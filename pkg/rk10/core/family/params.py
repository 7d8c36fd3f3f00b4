from __future__ import annotations
import typing as ty
import logging
from fractions import Fraction
import attrs
from typing_extensions import Self
from rk10.core.field import FieldElement, parse_field_literal
from rk10.core.exceptions import Rk10ConstructionError, Rk10UsageError
from .lobatto import lobatto6

logger = logging.getLogger("rk10")

PARAMETER_NAMES = ("c2", "c4", "c5", "b10", "b12", "b13", "b14")


def family_symbols() -> ty.Dict[str, FieldElement]:
    return lobatto6().symbols()


def to_element(value: ty.Any) -> FieldElement:
    """Converts ints, Fractions, field elements and field literals such as
    "2/7*w2" to FieldElement"""
    if isinstance(value, FieldElement):
        return value
    if isinstance(value, str):
        return parse_field_literal(value, family_symbols())
    if isinstance(value, (int, Fraction)):
        return FieldElement.from_rational(value)
    raise Rk10UsageError(
        f"Cannot interpret {value!r} ({type(value).__name__}) as a family parameter"
    )


def _nonzero(instance: FamilyParams, attribute: attrs.Attribute, value: FieldElement):
    if not value:
        raise Rk10ConstructionError(
            attribute.name, f"parameter {attribute.name} must be nonzero"
        )


@attrs.frozen(kw_only=True)
class FamilyParams:
    """The seven free parameters of the family: nodes c2, c4, c5 and weights b10, b12,
    b13, b14. The node c3 = 2/3 c4 is derived."""

    c2: FieldElement = attrs.field(converter=to_element, validator=_nonzero)
    c4: FieldElement = attrs.field(converter=to_element, validator=_nonzero)
    c5: FieldElement = attrs.field(converter=to_element, validator=_nonzero)
    b10: FieldElement = attrs.field(converter=to_element, validator=_nonzero)
    b12: FieldElement = attrs.field(converter=to_element, validator=_nonzero)
    b13: FieldElement = attrs.field(converter=to_element)
    b14: FieldElement = attrs.field(converter=to_element, validator=_nonzero)

    @c5.validator
    def c5_validator(self, _: attrs.Attribute[FieldElement], c5: FieldElement) -> None:
        if c5 == self.c4:
            raise Rk10ConstructionError(
                "c4, c5", "c4 = c5 degenerates the opening node geometry"
            )
        if c5 == self.c3:
            raise Rk10ConstructionError(
                "c3, c5", "c5 = c3 = 2/3 c4 degenerates the opening node geometry"
            )

    @property
    def c3(self) -> FieldElement:
        return self.c4 * Fraction(2, 3)

    @classmethod
    def from_mapping(cls, mapping: ty.Mapping[str, ty.Any]) -> Self:
        """Builds parameters from a mapping such as a parsed YAML document; every
        value may be a number or a field literal"""
        unknown = set(mapping) - set(PARAMETER_NAMES)
        if unknown:
            raise Rk10UsageError(
                f"Unrecognised family parameters {sorted(unknown)}, expected "
                f"{list(PARAMETER_NAMES)}"
            )
        missing = [n for n in PARAMETER_NAMES if n not in mapping]
        if missing:
            raise Rk10UsageError(f"Missing family parameters {missing}")
        return cls(**{n: _literal(mapping[n]) for n in PARAMETER_NAMES})

    def as_dict(self) -> ty.Dict[str, str]:
        return {n: str(getattr(self, n)) for n in PARAMETER_NAMES}

    def evolve(self, **changes: ty.Any) -> Self:
        return attrs.evolve(self, **changes)


def _literal(value: ty.Any) -> ty.Any:
    if isinstance(value, float):
        raise Rk10UsageError(
            f"Floating-point parameter {value} is not exact, write it as 'p/q'"
        )
    return str(value) if not isinstance(value, (FieldElement, Fraction)) else value


def reference_params() -> FamilyParams:
    """The low-magnitude member: c2 = 2/15, c4 = 2/5, c5 = 4/7, b10 = 2 w2 / 7,
    b12 = 2 w3 / 9, b13 = w4, b14 = w5"""
    return FamilyParams(
        c2="2/15",
        c4="2/5",
        c5="4/7",
        b10="2/7*w2",
        b12="2/9*w3",
        b13="w4",
        b14="w5",
    )
