"""Exact fan computations for quotients of toric varieties by subtori.

Everything works on lattices and fans with integer arithmetic: quotient
fans by primitive sublattices, the good-quotient test, and good models.
"""
from .cone import (Cone, cone, cone_from_generators, cone_from_inequalities,
                   contains, contains_cone, faces, facets, image_cone, intersect,
                   relative_interior_point, zero_cone)
from .errors import *  # noqa: F401,F403
from .fan import (ConeSystem, Fan, FanClass, FanValidation, Quasifan, image_fan,
                  is_complete, is_map_of_fans, orbit_closure_fan, quasifan_to_fan,
                  star_subfan, validate_fan, zero_fan)
from .good import (AffineQuotient, GoodModelResult, GoodnessReport, affine_quotient,
                   check_good_quotient, good_model, induced_good_model_map,
                   model_quotient)
from .linalg import (SublatticeBasis, hermite_normal_form, kernel_basis,
                     quotient_projection, saturate, smith_normal_form, sublattice)
from .quotient import (LoopStep, QuotientResult, codim2_quotient_oracle,
                       quotient_fan, quotient_quasifan)

__version__ = "0.1.0"
