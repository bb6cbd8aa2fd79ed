"""Exact Sheffer and Appell polynomial sequences from functionals and delta operators."""

from .algebra import Polynomial, Series, format_rational, parse_rational
from .functionals import MomentFunctional, functional_apply, indicator_series
from .operators import DeltaOperator, ShiftInvariantOp, basic_sequence, op_apply
from .sheffer import (
    ShefferSpec,
    appell_delta_expansion,
    generalized_stirling,
    sheffer_egf,
    sheffer_recurrence,
    verify_characterizations,
)
from .families import FAMILY_IDS, make_family
from .dsl import SequenceSpec, format_spec, parse_spec

__all__ = [
    "Polynomial", "Series", "format_rational", "parse_rational",
    "MomentFunctional", "functional_apply", "indicator_series",
    "DeltaOperator", "ShiftInvariantOp", "basic_sequence", "op_apply",
    "ShefferSpec", "appell_delta_expansion", "generalized_stirling", "sheffer_egf",
    "sheffer_recurrence", "verify_characterizations",
    "FAMILY_IDS", "make_family",
    "SequenceSpec", "format_spec", "parse_spec",
]
