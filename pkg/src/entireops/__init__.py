"""Infinite-order differential operators acting on entire functions of finite order.

Truncated Taylor series, (p, tau)-norm brackets, growth-condition checks,
operator application and composition, and symbol extraction from black-box
actions.
"""
from .multiindex import MultiIndex
from .series import TaylorPoly
from .growth import ClassVerdict, GrowthParams, NormBracket, check_condition, norm_bracket
from .operator import CertificateError, OperatorSymbol, apply, classify, compose
from .extraction import BlackBoxOperator, extract_symbol, verify_roundtrip

__all__ = [
    "MultiIndex",
    "TaylorPoly",
    "GrowthParams",
    "NormBracket",
    "ClassVerdict",
    "check_condition",
    "norm_bracket",
    "OperatorSymbol",
    "CertificateError",
    "apply",
    "classify",
    "compose",
    "BlackBoxOperator",
    "extract_symbol",
    "verify_roundtrip",
]
