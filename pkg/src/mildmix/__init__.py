"""Exact interval exchanges, Rauzy-Veech induction, suspensions, and a
constructive path to certified mildly mixing translation flows."""

from .iet import Iet, PermutationPair, classify, keane_check, omega_matrix
from .numbers import (
    AlgebraicNumber,
    CertificationRefused,
    ContextIncomplete,
    NumberContext,
    default_context,
    radical_context,
)
from .pipeline import mild_snap, run_approximation, symmetric_pair
from .rauzy import cocycle, induction_step, rauzy_class, renormalize
from .specflow import (
    SpecialFlowSystem,
    certify_mild,
    induced_roof_check,
    rho,
    verify_certificate,
    vertical_trace,
)
from .suspension import SuspensionDatum, extended_induction, in_Z, polygon_svg, rotate, teichmuller

__all__ = [
    "AlgebraicNumber",
    "CertificationRefused",
    "ContextIncomplete",
    "Iet",
    "NumberContext",
    "PermutationPair",
    "SpecialFlowSystem",
    "SuspensionDatum",
    "certify_mild",
    "classify",
    "cocycle",
    "default_context",
    "extended_induction",
    "in_Z",
    "induced_roof_check",
    "induction_step",
    "keane_check",
    "mild_snap",
    "omega_matrix",
    "polygon_svg",
    "radical_context",
    "rauzy_class",
    "renormalize",
    "rho",
    "rotate",
    "run_approximation",
    "symmetric_pair",
    "teichmuller",
    "verify_certificate",
    "vertical_trace",
]
