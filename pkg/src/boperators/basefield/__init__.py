"""Exact arithmetic layer: F_q, rational function fields, p-th-root towers."""

from .gf import BaseField, GFElem
from .grammar import parse_expression
from .polynomials import (BlockOrder, GradedRevlex, MPoly, exact_divide,
                          mpoly_gcd, mpoly_pth_power, mpoly_pth_root,
                          normal_form, poly_str)
from .rational import FunctionField, RationalFunction, lambda0
from .towers import Tower, TowerElement, pth_power_in_tower

__all__ = [
    "BaseField", "GFElem", "parse_expression", "BlockOrder", "GradedRevlex",
    "MPoly", "exact_divide", "mpoly_gcd", "mpoly_pth_power", "mpoly_pth_root",
    "normal_form", "poly_str", "FunctionField", "RationalFunction", "lambda0",
    "Tower", "TowerElement", "pth_power_in_tower",
]
