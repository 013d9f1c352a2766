import math

import pytest

import slgcones as sc


@pytest.fixture(scope="session")
def torus_47():
    """The doubly periodic u_{0,J} with theta_2(T)/2pi = 4/7, shared by
    periodicity/bounds/acceptance tests (the J sweep is cached in-process)."""
    J = sc.find_J_for_ratio(0.0, 4, 7)[0]
    params = sc.build_family(0.0, J)
    sol = sc.solve_gamma(params)
    closure = sc.closure_angle(params, sol)
    lattice = sc.period_lattice(params, sol, closure, 0, 1)
    return params, sol, closure, lattice


def coprime_pairs(n_max):
    return [(m, n) for n in range(2, n_max + 1) for m in range(1, n)
            if math.gcd(m, n) == 1]
