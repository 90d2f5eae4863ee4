"""Poles of best Möbius approximations of analytic functions on the unit disk."""
from .bma import (INF, MoebiusMap, a_operator, affine, bma, classify_point, conjugate_by_automorphism,
                  dilate, disk_automorphism, pole_identity_residual, pole, schwarzian)
from .blaschke import BlaschkeProduct, random_blaschke
from .bounds import BOUNDS, BoundReport, BoundSpec, HypothesisMismatch, make_bound, verify
from .formula import FormulaSyntaxError, UnknownFunction, eval_jet, parse, to_source
from .jets import BranchCut, DegenerateJet, Jet3
from .models import (AnalyticModel, ClassSpec, ModelError, catalog, model_from_spec,
                     nehari_member, random_class_member)
from .orders import lower_order, upper_order
from .polygon import (PolygonModel, count_preimages_roots, count_preimages_winding,
                      cross_rational, pole_rational, polygon_preschwarzian)
from .sampling import disk_samples
from .schwarzian import (SchwarzianProfile, convexity_certificate, critical_a, nehari_region_check,
                         pole_radius_check, pole_radius_bound)

__version__ = "0.1.0"
