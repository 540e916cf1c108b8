"""Computable distances on punctured disks and punctured spheres.

Closed-form kernels for the punctured disk, the covering map onto the
thrice-punctured sphere with its constants, an orbit-search oracle for the
hyperbolic distance of C minus {0, 1}, and the distances d_X / e_X on
n-times punctured spheres.
"""
from .errors import DegenerateGeometryError, DomainError, NumericError, UncertifiedDistanceWarning
from .halfplane_oracle import (
    GammaTwoElement,
    OrbitResult,
    elliptic_K,
    hyp_density_thrice_punctured,
    hyp_dist_halfplane,
    hyp_dist_thrice_punctured,
    lift,
    modular_lambda,
    reduce_fundamental,
    thrice_punctured_distance,
    thrice_punctured_geodesic,
)
from .kernels import BACKEND
from .modular_cover import (
    C0,
    K0,
    CoverConstants,
    geodesic_avoidance_radius,
    hempel_density_lower,
    k_of_rho,
    mu_of_rho,
    q_eval,
    q_growth_bounds,
    q_product,
    q_taylor_coefficients,
)
from .punctured_disk import (
    AnnularPoint,
    arth,
    geodesic_annulus,
    geodesic_delta,
    hyp_density_punctured_disk,
    hyp_dist_punctured_disk,
    metric_D,
    metric_D_prime,
    to_annular,
)
from .sphere_metrics import (
    INF,
    ComparabilityConstants,
    MoebiusMap,
    PunctureConfiguration,
    RegionTag,
    classify,
    comparability_constants,
    dist_cstar,
    dist_dX,
    dist_eX,
    load_configuration,
    metric_Dj,
    normalize,
    radii,
)

__version__ = "0.1.0"
