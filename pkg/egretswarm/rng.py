"""Seeded, splittable random streams.

Every draw an optimization run makes goes through a RandomSource, so a run
keyed by (seed, config) repeats bit for bit.  Child streams are derived with
numpy's SeedSequence spawn keys: child ``k`` of a source whose key is ``K``
is ``SeedSequence(seed, spawn_key=K + (k,))``.  The derivation depends only
on the index, so adding squads or trials never reorders existing streams.
"""
import math

import numpy as np

from egretswarm.helpers import DomainError

DEFAULT_SEED = 42

# tan() is unbounded at +-pi/2; staying EPSILON inside keeps |tan| <= ~1e6.
ANGLE_EPSILON = 1e-6
HALF_PI = math.pi / 2


class RandomSource(object):

    def __init__(self, seed=DEFAULT_SEED, spawn_key=()):
        seed = int(seed)
        if seed < 0 or seed >= 2 ** 64:
            raise DomainError("seed must be a 64-bit unsigned integer, got %d"
                              % seed)
        self.seed = seed
        self.spawn_key = tuple(spawn_key)
        self._seq = np.random.SeedSequence(seed, spawn_key=self.spawn_key)
        self._gen = np.random.Generator(np.random.PCG64(self._seq))

    def __repr__(self):
        return "RandomSource(seed=%d, spawn_key=%r)" % (self.seed,
                                                         self.spawn_key)

    def split(self, index):
        return RandomSource(self.seed, self.spawn_key + (int(index),))

    def clone(self):
        other = RandomSource(self.seed, self.spawn_key)
        other._gen.bit_generator.state = self._gen.bit_generator.state
        return other

    def uniform(self, lo, hi):
        _check_interval(lo, hi)
        v = self._gen.uniform(lo, hi)
        return v if v < hi else float(np.nextafter(hi, lo))

    def uniform_vector(self, lo, hi, n):
        _check_interval(lo, hi)
        n = int(n)
        if n < 1:
            raise DomainError("vector length must be >= 1, got %d" % n)
        return _in_interval(self._gen.uniform(lo, hi, size=n), lo, hi)

    def uniform_in(self, lower, upper):
        """One draw per dimension from [lower[k], upper[k])."""
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        if np.any(lower >= upper):
            raise DomainError("empty interval in per-dimension draw")
        return _in_interval(self._gen.uniform(lower, upper), lower, upper)

    def angles(self, n):
        """n angles from the open interval (-pi/2, pi/2)."""
        return self.uniform_vector(-HALF_PI + ANGLE_EPSILON,
                                   HALF_PI - ANGLE_EPSILON, n)


def uniform(src, lo, hi):
    return src.uniform(lo, hi)


def uniform_vector(src, lo, hi, n):
    return src.uniform_vector(lo, hi, n)


def _check_interval(lo, hi):
    if not (math.isfinite(lo) and math.isfinite(hi)):
        raise DomainError("interval bounds must be finite: [%r, %r)"
                          % (lo, hi))
    if lo >= hi:
        raise DomainError("empty interval [%r, %r)" % (lo, hi))


def _in_interval(v, lo, hi):
    # lo + (hi - lo) * u can round up to hi for u just below 1
    return np.where(v >= hi, np.nextafter(hi, lo), v)
