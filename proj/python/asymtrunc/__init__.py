"""Asymmetric Lipschitz truncation and discrete maximal operators."""

from ._core import (
    IoError,
    ValidationError,
    __version__,
    aniso_maximal,
    asym_truncate,
    composed_maximal,
    directional_maximal,
    exponent_alpha,
    extend,
    hl_maximal,
    improvement_step,
    lipschitz_truncate,
    quasi_distance,
)

__all__ = [
    "IoError",
    "ValidationError",
    "__version__",
    "aniso_maximal",
    "asym_truncate",
    "composed_maximal",
    "directional_maximal",
    "exponent_alpha",
    "extend",
    "hl_maximal",
    "improvement_step",
    "lipschitz_truncate",
    "quasi_distance",
]
