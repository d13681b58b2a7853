"""Himmelblau's nonlinear constrained problem (five variables).

Each of g1, g2, g3 is held inside an interval, which becomes two one-sided
constraints.  g2 uses the classical range [90, 110].
"""
from egretswarm.problems import Bounds, ObjectiveProblem, \
    interval_constraints

PHI = 1e100

LOWER = [78.0, 33.0, 27.0, 27.0, 27.0]
UPPER = [102.0, 45.0, 45.0, 45.0, 45.0]

G1_RANGE = (0.0, 92.0)
G2_RANGE = (90.0, 110.0)
G3_RANGE = (20.0, 25.0)

BEST_KNOWN = -30665.18896


def objective(x):
    x1, _, x3, _, x5 = x
    return (5.3578547 * x3 ** 2 + 0.8356891 * x1 * x5 +
            37.293239 * x1 - 40792.141)


def g1(x):
    x1, x2, x3, x4, x5 = x
    return (85.334407 + 0.0056858 * x2 * x5 + 0.0006262 * x1 * x4 -
            0.0022053 * x3 * x5)


def g2(x):
    x1, x2, x3, _, x5 = x
    return (80.51249 + 0.0071317 * x2 * x5 + 0.0029955 * x1 * x2 +
            0.0021813 * x3 ** 2)


def g3(x):
    x1, _, x3, x4, x5 = x
    return (9.300961 + 0.0047026 * x3 * x5 + 0.0012547 * x1 * x3 +
            0.0019085 * x3 * x4)


def make_problem():
    constraints = (interval_constraints(g1, *G1_RANGE) +
                   interval_constraints(g2, *G2_RANGE) +
                   interval_constraints(g3, *G3_RANGE))
    return ObjectiveProblem("himmelblau", Bounds(LOWER, UPPER), objective,
                            constraints=constraints, phi=PHI,
                            f_min=BEST_KNOWN)


himmelblau_problem = make_problem
