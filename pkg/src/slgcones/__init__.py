"""S^1-invariant special Lagrangian torus cones in C^3: construction,
double periodicity, areas, flat-torus Laplace spectra and index bounds."""

from .area import (area_bounds_Tmn, area_J0, area_linear_approx, area_per_period,
                   area_quadrature, area_Tmn, area_u0J, CLIFFORD_AREA,
                   cross_validate_area, dA_dr, lambda1_upper_Tmn)
from .bounds import (BoundCertificate, certificate_from_provenance,
                     certificates_to_json, FUNCTION_IDS, genus_bounds,
                     heat_trace_S2_series, heat_trace_S2_upper,
                     index_lower_bounds_Tmn, index_lower_bounds_u0J,
                     N1_upper_from_area, N2_upper_from_area, area_lower_from_N2,
                     nodal_counts_Tmn, nodal_grid_count, NodalCount)
from .config import J_MAX
from .elliptic import (complete_E, complete_K, dE_dk, dK_dk, jacobi_sn_cn_dn,
                       Modulus)
from .errors import (DegenerateFamilyError, IncompleteSpectrumError,
                     NotDoublyPeriodicError, PointBudgetError, QuadratureError,
                     RootNotFoundError, UnstableCountError)
from .periodicity import (certify_lattice, find_J_for_ratio, PeriodLattice,
                          period_lattice, rationalize_angle,
                          smallest_denominator_rational)
from .spectrum import (clifford_spectrum, clifford_torus_lattice_basis,
                       FlatSpectrum, flat_torus_spectrum, index_report,
                       IndexReport, lambda_pq, sphere_spectrum, spectrum_to_csv)
from .torus import (build_family, closure_angle, ClosureData, conformal_factor,
                    ConformalFactor, FamilyParams, gamma_at, gamma_dot_at,
                    GammaSolution, immersion_at, immersion_grid, profile_at,
                    profile_z, ProfileState, solve_gamma, theta_at)

__version__ = "0.1.0"
