"""The seven unimodal benchmarks F1..F7.

All are minimized with F_min = 0 at the origin, except F5 (Rosenbrock)
whose minimum sits at the all-ones vector.
"""
import numpy as np

from egretswarm.helpers import DomainError
from egretswarm.problems import Bounds, ObjectiveProblem


def sphere(x):
    return float(np.dot(x, x))


def sum_product_abs(x):
    a = np.abs(x)
    return float(np.sum(a) + np.prod(a))


def cumulative_sum_squares(x):
    c = np.cumsum(x)
    return float(np.dot(c, c))


def max_abs(x):
    return float(np.max(np.abs(x)))


def rosenbrock(x):
    head, tail = x[:-1], x[1:]
    return float(np.sum(100.0 * (tail - head ** 2) ** 2 + (head - 1.0) ** 2))


def step(x):
    return float(np.sum(np.floor(x + 0.5) ** 2))


def quartic_noise(x, rng):
    i = np.arange(1, len(x) + 1)
    return float(np.sum(i * x ** 4)) + rng.uniform(0.0, 1.0)


# id: (name, function, range half-width, noisy)
BENCHMARKS = {
    1: ("f1", sphere, 100.0, False),
    2: ("f2", sum_product_abs, 10.0, False),
    3: ("f3", cumulative_sum_squares, 100.0, False),
    4: ("f4", max_abs, 100.0, False),
    5: ("f5", rosenbrock, 30.0, False),
    6: ("f6", step, 100.0, False),
    7: ("f7", quartic_noise, 1.28, True),
}


def make_benchmark(id, dim):
    if id not in BENCHMARKS:
        raise DomainError("benchmark id must be in 1..%d, got %r"
                          % (len(BENCHMARKS), id))
    if int(dim) < 1:
        raise DomainError("dimension must be >= 1, got %r" % dim)
    name, raw, width, noisy = BENCHMARKS[id]
    return ObjectiveProblem(name, Bounds.uniform(-width, width, int(dim)),
                            raw, noisy=noisy, f_min=0.0)
