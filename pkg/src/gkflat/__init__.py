"""Minimal hypersurfaces of H^4 with vanishing Gauss-Kronecker curvature.

Numerical construction and verification of the correspondence between such
hypersurfaces, stationary spacelike surfaces of de Sitter space S^4_1 and
minimal surfaces of umbilical hypersurfaces of H^4.
"""

from .constructions import (associate, catalog_generator, equidistant_chart,
                            geodesic_sphere_chart, horosphere_chart, polar_map,
                            reconstruct_generator, regularity_predicate, suspension)
from .hypersurface import (HypersurfaceImmersion, hyper_frame, lambda_profile_fit,
                           nullity_frame, structure_residuals, uv_fields)
from .jet import Expr, fd_oracle, jet_eval
from .surface import SpacelikeSurface, analyse, find_containing_hyperplane
from .verify import run_suite

__version__ = "0.1.0"

__all__ = [
    "Expr", "HypersurfaceImmersion", "SpacelikeSurface", "analyse", "associate", "catalog_generator",
    "equidistant_chart", "fd_oracle", "find_containing_hyperplane", "geodesic_sphere_chart",
    "horosphere_chart", "hyper_frame", "jet_eval", "lambda_profile_fit", "nullity_frame", "polar_map",
    "reconstruct_generator", "regularity_predicate", "run_suite", "structure_residuals", "suspension",
    "uv_fields",
]
