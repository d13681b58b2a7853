"""Tension/compression spring weight minimization.

x1 is the wire diameter, x2 the mean coil diameter and x3 the number of
active coils.  The box is the usual Arora formulation.
"""
from egretswarm.problems import Bounds, ObjectiveProblem, safe_ratio

PHI = 1e5

LOWER = [0.05, 0.25, 2.0]
UPPER = [2.0, 1.3, 15.0]

BEST_KNOWN = 0.012743


def objective(x):
    x1, x2, x3 = x
    return (x3 + 2.0) * x2 * x1 ** 2


def g1(x):
    x1, x2, x3 = x
    return 1.0 - safe_ratio(x2 ** 3 * x3, 71785.0 * x1 ** 4)


def g2(x):
    x1, x2, _ = x
    # x2 == x1 zeroes the denominator of the shear-stress term
    return (safe_ratio(4.0 * x2 ** 2 - x1 * x2,
                       12566.0 * (x2 * x1 ** 3 - x1 ** 4)) +
            1.0 / (5108.0 * x1 ** 2) - 1.0)


def g3(x):
    x1, x2, x3 = x
    return 1.0 - safe_ratio(140.45 * x1, x2 ** 2 * x3)


def g4(x):
    x1, x2, _ = x
    return (x1 + x2) / 1.5 - 1.0


def make_problem():
    return ObjectiveProblem("spring", Bounds(LOWER, UPPER), objective,
                            constraints=[g1, g2, g3, g4], phi=PHI,
                            f_min=BEST_KNOWN)


spring_problem = make_problem
