"""Golden comparison data for the two published small-area tables.

Kept in one place so the reference numbers are auditable separately from
the code that reproduces them.  Published areas are printed to two
decimals; the comparison tolerance is the half-ulp 0.005 (plus rounding
slack).  The 5/9 entry of the second table is known to disagree with the
recomputed value by 0.008: the true Area/4pi is 9.16794 (two independent
evaluation routes), i.e. the printed 9.16 is a truncation, not a rounding.
The golden value is kept as printed.
"""

# (m, n) -> (Area/4pi, linear approximation or None, s-ind lower bound)
TABLE1 = {
    (0, 1): (1.81, None, 0),
    (1, 3): (3.71, 3.81, 6),
    (1, 2): (5.49, 5.63, 12),
    (1, 5): (5.66, 5.81, 14),
    (3, 5): (7.29, 7.44, 18),
    (1, 7): (7.63, 7.81, 22),
    (2, 3): (9.10, 9.26, 24),
    (3, 7): (9.19, 9.44, 26),
    (1, 4): (9.36, 9.63, 28),
}
TABLE1_ORDER = [(0, 1), (1, 3), (1, 2), (1, 5), (3, 5), (1, 7), (2, 3), (3, 7), (1, 4)]

# (M, N) -> (Area/4pi, J*3 sqrt 3, s-ind lower bound, lambda_1 upper = 4/N)
TABLE2 = {
    (4, 7): (7.26, 0.831, 12),
    (5, 9): (9.16, 0.495, 16),
    (6, 11): (11.12, 0.344, 20),
}
TABLE2_ORDER = [(4, 7), (5, 9), (6, 11)]

# two-decimal print convention
AREA_TOL = 0.005 + 1e-9
JNORM_TOL = 0.002
