"""Shared numerical tolerances and parameter-domain constants."""

import math

# Absolute tolerance for special-function values (elliptic identities etc.).
VALUE_TOL = 1e-12

# Tolerance when two independent evaluation routes are compared
# (AGM vs quadrature, closed-form area vs trapezoid, gamma-cubic vs y-cubic).
CROSS_TOL = 1e-10

# Two cubic roots closer than this are treated as collided (degenerate family).
ROOT_COLLISION_TOL = 1e-12

# Upper endpoint of the admissible J range; the family is the Clifford torus there.
J_MAX = 1.0 / (3.0 * math.sqrt(3.0))

# Below this J the general path (theta integration, k near 1 for small alpha)
# loses precision faster than it helps; the J=0 closed-form profile is used.
J_CLOSED_FORM_SWITCH = 1e-8

# Rational-closeness certification: |Theta*N/2pi - M| below this, N capped.
RATIONAL_TOL = 1e-8
RATIONAL_DENOMINATOR_CAP = 10**4

# Enumeration guard for lattice-point counting.
POINT_BUDGET = 10**8
