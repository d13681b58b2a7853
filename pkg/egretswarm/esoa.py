"""Egret swarm optimizer.

Each squad keeps a linear estimate ``w . x`` of the fitness at its own
position and learns ``w`` with an adaptive-moment update.  Every iteration
a squad proposes three candidates:

* sit-and-wait: move along the integrated gradient estimate with a step
  that decays exponentially over the run,
* random walk: a heavy-tailed move of ``tan(angle) * hop / (1 + t)``,
* encircle: an affine pull toward the squad best and the global best,

and the discriminant keeps the best candidate if it improves, or with a
fixed probability even when it does not.  Squad bests update as candidates
are judged; the global best is merged once per iteration, after every squad
has moved, so squads only ever see the previous iteration's global best.
"""
import math

import numpy as np

from egretswarm.helpers import ConfigError, DomainError, as_vector, \
    check_finite, check_same_length, debug2, debug3
from egretswarm.metrics import Metrics
from egretswarm.problems import Fitness, evaluate, score

BETA1 = 0.9
BETA2 = 0.99
ADAM_EPSILON = 1e-8

ACCEPT_WORSE = 0.3
R_LIMIT = 0.5
STEP_SCALE = 0.1
DECAY_SCALE = 0.1
DEGENERATE_DISTANCE = 1e-12


class SquadState(object):

    def __init__(self, x, fitness, w):
        n = len(x)
        self.x = x
        self.fitness = fitness
        self.w = w
        self.m = np.zeros(n)
        self.v = np.zeros(n)
        self.d_hat = np.zeros(n)
        self.x_ibest = x.copy()
        self.ibest = fitness
        self.d_ibest = np.zeros(n)

    @property
    def y(self):
        return self.fitness.value

    @property
    def f_ibest(self):
        return self.ibest.value

    def __repr__(self):
        return "<SquadState y=%r f_ibest=%r>" % (self.y, self.f_ibest)


class SwarmState(object):

    def __init__(self, squads, streams, t_max, accept_prob=ACCEPT_WORSE):
        self.squads = squads
        self.streams = streams
        self.t = 0
        self.t_max = t_max
        self.accept_prob = accept_prob
        best = min(range(len(squads)), key=lambda i: squads[i].f_ibest)
        self.x_gbest = squads[best].x_ibest.copy()
        self.gbest = squads[best].ibest
        self.d_gbest = np.zeros(len(self.x_gbest))

    @property
    def f_gbest(self):
        return self.gbest.value

    def merge_best(self):
        for squad in self.squads:
            if squad.f_ibest < self.f_gbest:
                self.x_gbest = squad.x_ibest.copy()
                self.gbest = squad.ibest
                self.d_gbest = squad.d_ibest.copy()


class CandidateSet(object):

    def __init__(self, x_a, y_a, x_b, y_b, x_c, y_c):
        self.positions = [x_a, x_b, x_c]
        self.fitnesses = [_as_fitness(y) for y in (y_a, y_b, y_c)]

    x_a = property(lambda self: self.positions[0])
    x_b = property(lambda self: self.positions[1])
    x_c = property(lambda self: self.positions[2])
    y_a = property(lambda self: self.fitnesses[0].value)
    y_b = property(lambda self: self.fitnesses[1].value)
    y_c = property(lambda self: self.fitnesses[2].value)

    def values(self):
        return [f.value for f in self.fitnesses]


class TrialReport(object):

    def __init__(self, best_position, best, trace, initial_best,
                 evaluations, out_of_bounds, spawn_key=()):
        self.best_position = best_position
        self.best = best
        self.trace = trace
        self.initial_best = initial_best
        self.evaluations = evaluations
        self.out_of_bounds = out_of_bounds
        self.spawn_key = spawn_key

    @property
    def best_fitness(self):
        return self.best.value

    @property
    def final_fitness(self):
        """Raw objective of the best point; equals best_fitness when
        the problem has no constraints or the point is feasible."""
        return self.best.raw_value

    def __eq__(self, other):
        return (isinstance(other, TrialReport) and
                np.array_equal(self.best_position, other.best_position) and
                self.best.value == other.best.value and
                self.best.raw_value == other.best.raw_value and
                self.best.violation == other.best.violation and
                np.array_equal(self.trace, other.trace) and
                self.initial_best == other.initial_best and
                self.evaluations == other.evaluations and
                self.out_of_bounds == other.out_of_bounds)

    def __ne__(self, other):
        return not self == other


def _as_fitness(y):
    if isinstance(y, Fitness):
        return y
    return Fitness(float(y), float(y), 0.0)


def unit_vector(v):
    scale = np.max(np.abs(v)) if len(v) else 0.0
    if scale == 0:
        return np.zeros(len(v))
    u = v / scale
    return u / np.linalg.norm(u)


def estimate(w, x):
    w = as_vector(w, "w")
    x = as_vector(x)
    check_same_length(w, x, "weights and position")
    return float(np.dot(w, x))


def practical_gradient(w, x, y):
    w = check_finite(as_vector(w, "w"), "w")
    x = check_finite(as_vector(x), "x")
    check_same_length(w, x, "weights and position")
    if not math.isfinite(y):
        raise DomainError("fitness must be finite, got %r" % y)
    return _practical_gradient(w, x, y)


def _practical_gradient(w, x, y):
    g_hat = (float(np.dot(w, x)) - y) * x
    return g_hat, unit_vector(g_hat)


def direction_correction(x, f, x_best, f_best, d_best):
    x = as_vector(x)
    x_best = as_vector(x_best, "x_best")
    d_best = as_vector(d_best, "d_best")
    check_same_length(x, x_best, "position and best position")
    check_same_length(x, d_best, "position and best direction")
    return _direction_correction(x, f, x_best, f_best, d_best)


def _direction_correction(x, f, x_best, f_best, d_best):
    diff = x_best - x
    distance = np.linalg.norm(diff)
    if distance < DEGENERATE_DISTANCE:
        return d_best.copy()
    return diff / distance * ((f_best - f) / distance) + d_best


def integrated_gradient(d_hat, d_h, d_g, r_h, r_g):
    for name, r in (("r_h", r_h), ("r_g", r_g)):
        if not 0 <= r < R_LIMIT:
            raise DomainError("%s must lie in [0, %g), got %r"
                              % (name, R_LIMIT, r))
    return _integrated_gradient(as_vector(d_hat, "d_hat"),
                                as_vector(d_h, "d_h"),
                                as_vector(d_g, "d_g"), r_h, r_g)


def _integrated_gradient(d_hat, d_h, d_g, r_h, r_g):
    return (1.0 - r_h - r_g) * d_hat + r_h * d_h + r_g * d_g


def update_weights(squad, g):
    g = check_finite(as_vector(g, "g"), "g")
    check_same_length(squad.w, g, "weights and gradient")
    with np.errstate(over='ignore'):
        return _update_weights(squad, g)


def _update_weights(squad, g):
    squad.m = BETA1 * squad.m + (1.0 - BETA1) * g
    squad.v = BETA2 * squad.v + (1.0 - BETA2) * (g * g)
    squad.w = squad.w - squad.m / np.sqrt(squad.v + ADAM_EPSILON)
    return squad


def _move(x, step, bounds):
    # |step| beyond hop lands outside the box whatever x is, so clipping
    # first leaves the clamped result unchanged.
    hop = bounds.hop
    return np.clip(x + np.clip(step, -hop, hop), bounds.lower, bounds.upper)


# The strategies and step() run once per squad and iteration on state that
# init_swarm() already validated, so they call the unchecked helpers.

def sit_and_wait(squad, swarm, problem, rng):
    _, d_hat = _practical_gradient(squad.w, squad.x, squad.y)
    d_h = _direction_correction(squad.x, squad.y, squad.x_ibest,
                                squad.f_ibest, squad.d_ibest)
    d_g = _direction_correction(squad.x, squad.y, swarm.x_gbest,
                                swarm.f_gbest, swarm.d_gbest)
    r_h = rng.uniform(0.0, R_LIMIT)
    r_g = rng.uniform(0.0, R_LIMIT)
    g = _integrated_gradient(d_hat, d_h, d_g, r_h, r_g)
    squad.d_hat = d_hat
    _update_weights(squad, g)

    decay = math.exp(-swarm.t / (DECAY_SCALE * swarm.t_max))
    step = (decay * STEP_SCALE) * problem.bounds.hop * g
    x_a = _move(squad.x, step, problem.bounds)
    return x_a, score(problem, x_a, rng)


def random_walk(squad, swarm, problem, rng):
    r_b = rng.angles(len(squad.x))
    step = np.tan(r_b) * problem.bounds.hop / (1.0 + swarm.t)
    x_b = _move(squad.x, step, problem.bounds)
    return x_b, score(problem, x_b, rng)


def encircle(squad, swarm, problem, rng):
    r_h = rng.uniform(0.0, R_LIMIT)
    r_g = rng.uniform(0.0, R_LIMIT)
    x = squad.x
    x_c = ((1.0 - r_h - r_g) * x + r_h * (squad.x_ibest - x) +
           r_g * (swarm.x_gbest - x))
    bounds = problem.bounds
    x_c = np.clip(x_c, bounds.lower, bounds.upper)
    return x_c, score(problem, x_c, rng)


def discriminant(squad, cands, rng, accept_prob=ACCEPT_WORSE):
    values = cands.values()
    if not all(math.isfinite(y) for y in values):
        raise DomainError("candidate fitnesses must be finite: %r"
                          % values)
    c = min(range(len(values)), key=values.__getitem__)
    chosen = cands.fitnesses[c]
    if chosen.value < squad.y:
        accepted = True
    else:
        accepted = rng.uniform(0.0, 1.0) < accept_prob
        if accepted:
            debug3('squad accepts a worse move to %r (from %r)\n'
                   % (chosen.value, squad.y))
    if accepted:
        squad.x = cands.positions[c]
        squad.fitness = chosen
    if chosen.value < squad.f_ibest:
        squad.x_ibest = cands.positions[c].copy()
        squad.ibest = chosen
        squad.d_ibest = squad.d_hat.copy()
    debug3('candidate %s: %r, accepted=%s\n' % ("abc"[c], chosen.value,
                                                accepted))
    return squad


def step(swarm, problem):
    """Advance every squad by one iteration, then merge the global best.

    Squad ``i`` draws only from ``swarm.streams[i]``.
    """
    if swarm.t >= swarm.t_max:
        raise DomainError("swarm already ran %d of %d iterations"
                          % (swarm.t, swarm.t_max))
    for squad, rng in zip(swarm.squads, swarm.streams):
        x_a, y_a = sit_and_wait(squad, swarm, problem, rng)
        x_b, y_b = random_walk(squad, swarm, problem, rng)
        x_c, y_c = encircle(squad, swarm, problem, rng)
        discriminant(squad, CandidateSet(x_a, y_a, x_b, y_b, x_c, y_c),
                     rng, swarm.accept_prob)
    swarm.merge_best()
    swarm.t += 1
    return swarm


def check_config(config):
    if int(config.population) < 1:
        raise ConfigError("population must be >= 1, got %r"
                          % config.population)
    if int(config.max_iterations) < 1:
        raise ConfigError("max_iterations must be >= 1, got %r"
                          % config.max_iterations)
    accept_prob = getattr(config, "accept_prob", ACCEPT_WORSE)
    if not 0 <= accept_prob <= 1:
        raise ConfigError("acceptance probability must lie in [0, 1], "
                          "got %r" % accept_prob)


def init_swarm(problem, config, rng):
    bounds = problem.bounds
    streams = [rng.split(i) for i in range(int(config.population))]
    squads = []
    for stream in streams:
        x = stream.uniform_in(bounds.lower, bounds.upper)
        w = stream.uniform_vector(-1.0, 1.0, problem.dim)
        squads.append(SquadState(x, evaluate(problem, x, stream), w))
    return SwarmState(squads, streams, int(config.max_iterations),
                      getattr(config, "accept_prob", ACCEPT_WORSE))


def optimize(problem, config, rng):
    """Run one trial; ``problem.metrics`` is left as the caller set it."""
    check_config(config)
    owned = problem.metrics is None
    if owned:
        problem.metrics = Metrics()
    metrics = problem.metrics
    evaluations, out_of_bounds = metrics.evaluations, metrics.out_of_bounds
    try:
        with np.errstate(over='ignore', invalid='ignore'):
            swarm = init_swarm(problem, config, rng)
            initial_best = swarm.f_gbest
            trace = np.empty(swarm.t_max)
            while swarm.t < swarm.t_max:
                step(swarm, problem)
                trace[swarm.t - 1] = swarm.f_gbest
                debug2('%s t=%d f_gbest=%r\n' % (problem.name, swarm.t,
                                                 swarm.f_gbest))
    finally:
        if owned:
            problem.metrics = None

    return TrialReport(swarm.x_gbest.copy(), swarm.gbest, trace,
                       initial_best,
                       metrics.evaluations - evaluations,
                       metrics.out_of_bounds - out_of_bounds,
                       rng.spawn_key)
