import importlib
import math
import re

import numpy as np

from egretswarm.helpers import ConfigError, DomainError, as_vector, \
    check_finite, check_same_length

# Penalty contributions saturate here; below it the penalized value is
# strictly increasing in phi, above it every infeasible point ties.
PENALTY_CEILING = 1e120

# Stand-in for a constraint that divides by zero.
SATURATED_CONSTRAINT = 1e30

BENCHMARK_KEYS = ["f%d" % i for i in range(1, 8)]
ENGINEERING_KEYS = ["himmelblau", "spring"]
PROBLEM_KEYS = BENCHMARK_KEYS + ENGINEERING_KEYS
PROBLEM_GROUPS = {
    "unimodal": BENCHMARK_KEYS,
    "engineering": ENGINEERING_KEYS,
    "all": PROBLEM_KEYS,
}


class Bounds(object):

    def __init__(self, lower, upper):
        lower = as_vector(lower, "lower")
        upper = as_vector(upper, "upper")
        check_same_length(lower, upper, "lower and upper bounds")
        if len(lower) < 1:
            raise DomainError("bounds need at least one dimension")
        check_finite(lower, "lower")
        check_finite(upper, "upper")
        if np.any(lower >= upper):
            k = int(np.argmax(lower >= upper))
            raise DomainError("lower[%d]=%r is not below upper[%d]=%r"
                              % (k, lower[k], k, upper[k]))
        self.lower = lower
        self.upper = upper
        self.hop = upper - lower

    @classmethod
    def uniform(cls, lo, hi, dim):
        return cls(np.full(dim, float(lo)), np.full(dim, float(hi)))

    def __len__(self):
        return len(self.lower)

    def __repr__(self):
        return "Bounds(%r, %r)" % (list(self.lower), list(self.upper))

    def contains(self, x):
        return bool(np.all(x >= self.lower) and np.all(x <= self.upper))


class Fitness(object):

    __slots__ = ("value", "raw_value", "violation")

    def __init__(self, value, raw_value, violation=0.0):
        self.value = value
        self.raw_value = raw_value
        self.violation = violation

    def __repr__(self):
        return "Fitness(value=%r, raw_value=%r, violation=%r)" % (
            self.value, self.raw_value, self.violation)

    @property
    def feasible(self):
        return self.violation == 0


class ObjectiveProblem(object):
    """A box-bounded minimization problem.

    ``raw`` maps a position vector to a real.  When ``noisy`` is true it is
    called as ``raw(x, rng)`` and must draw its noise from that stream.
    Each entry of ``constraints`` encodes ``g(x) <= 0``; ``phi`` weighs the
    squared violations and is ignored when there are no constraints.
    """

    def __init__(self, name, bounds, raw, constraints=(), phi=0.0,
                 noisy=False, f_min=None, metrics=None):
        if phi < 0 or not math.isfinite(phi):
            raise DomainError("penalty parameter must be finite and >= 0")
        self.name = name
        self.bounds = bounds
        self.dim = len(bounds)
        self.raw = raw
        self.constraints = list(constraints)
        self.phi = float(phi)
        self.noisy = noisy
        self.f_min = f_min
        self.metrics = metrics

    def __repr__(self):
        return "<ObjectiveProblem %s dim=%d constraints=%d>" % (
            self.name, self.dim, len(self.constraints))

    def constraint_values(self, x):
        x = as_vector(x)
        check_same_length(x, self.bounds.lower, "position and problem")
        return np.array([g(x) for g in self.constraints], dtype=float)


def violation_of(values):
    total = 0.0
    for v in values:
        v = float(v)
        if v > 0:
            total += v * v
    return total if math.isfinite(total) else PENALTY_CEILING


def penalty(phi, violation):
    if violation == 0:
        return 0.0
    return min(float(phi) * float(violation), PENALTY_CEILING)


def evaluate(problem, x, rng=None):
    x = as_vector(x)
    if len(x) != problem.dim:
        raise DomainError("%s expects %d coordinates, got %d"
                          % (problem.name, problem.dim, len(x)))
    if problem.noisy and rng is None:
        raise DomainError("%s is noisy and needs a random stream"
                          % problem.name)
    return score(problem, x, rng)


def score(problem, x, rng=None):
    """evaluate() without the argument checks.

    ``x`` must already be a float vector of length ``problem.dim``.
    """
    if problem.noisy:
        raw_value = float(problem.raw(x, rng))
    else:
        raw_value = float(problem.raw(x))
    if problem.constraints:
        violation = violation_of([g(x) for g in problem.constraints])
        fitness = Fitness(raw_value + penalty(problem.phi, violation),
                          raw_value, violation)
    else:
        fitness = Fitness(raw_value, raw_value, 0.0)
    if problem.metrics is not None:
        problem.metrics.record(problem, x, fitness)
    return fitness


def clamp_to_bounds(x, bounds):
    x = as_vector(x)
    check_same_length(x, bounds.lower, "position and bounds")
    if np.any(np.isnan(x)):
        raise DomainError("cannot clamp a position containing NaN")
    return np.minimum(np.maximum(x, bounds.lower), bounds.upper)


def interval_constraints(g, lo, hi):
    """Split lo <= g(x) <= hi into the two one-sided forms lo - g, g - hi."""
    return [lambda x: lo - g(x), lambda x: g(x) - hi]


def safe_ratio(num, den):
    if den == 0:
        return math.copysign(SATURATED_CONSTRAINT, num) if num else 0.0
    return num / den


def parse_problem_keys(keys):
    selected = []
    for key in keys:
        key = key.lower()
        for name in PROBLEM_GROUPS.get(key, [key]):
            if name not in PROBLEM_KEYS:
                raise ConfigError(
                    "unknown problem %r; valid keys are %s"
                    % (key, ", ".join(PROBLEM_KEYS +
                                      sorted(PROBLEM_GROUPS))))
            if name not in selected:
                selected.append(name)
    return selected


def get_problem(key, dim=30, phi=None, metrics=None):
    key = key.lower()
    m = re.match(r'f(\d+)$', key)
    if m and key in BENCHMARK_KEYS:
        module = importlib.import_module("egretswarm.problems.benchmarks")
        problem = module.make_benchmark(int(m.group(1)), dim)
    elif key in ENGINEERING_KEYS:
        module = importlib.import_module("egretswarm.problems.%s" % key)
        problem = module.make_problem()
    else:
        raise ConfigError("unknown problem %r; valid keys are %s"
                          % (key, ", ".join(PROBLEM_KEYS)))
    if phi is not None:
        if phi < 0:
            raise ConfigError("penalty parameter must be >= 0, got %r" % phi)
        problem.phi = float(phi)
    problem.metrics = metrics
    return problem
