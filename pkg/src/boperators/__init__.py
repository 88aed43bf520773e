"""Exact computer algebra for fields with operator structures coming from
finite commutative algebras: companionability classification, B-operator
construction, prolongation spaces, equalizers and kernel-prolongation
criteria, all over explicitly presented finite fields and their function
fields."""

from .algebra import (FiniteAlgebra, FiniteRing, SubspaceIdeal,
                      assumption_frobenius_vanishes, companionability,
                      direct_product, endo_algebra, fiber_product,
                      is_local, ker_frobenius, ker_pi, nilradical,
                      tensor_ring, truncated_poly)
from .basefield import (BaseField, FunctionField, GFElem, MPoly,
                        RationalFunction, Tower, TowerElement, lambda0,
                        pth_power_in_tower)
from .groebner import Ideal, PolyRing, eliminate
from .linear import SemilinearMap, dependency_constancy_check, wedge_coords
from .operators import (AlgebraBValue, OperatorSpec, extend_pth_root,
                        tensor)
from .scheme import (AffineVariety, EqualizerSpace, ProlongationSpace,
                     adjunction_census, dominant, equalizer,
                     generic_fiber_test, is_kernel, kernel_check,
                     nabla_point, prolong)

__version__ = "0.1.0"
