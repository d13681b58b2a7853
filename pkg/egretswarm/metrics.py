import numpy as np

from egretswarm.helpers import log, debug1


class Metrics(object):

    def __init__(self):
        self.evaluations = 0  # Initial population included.
        self.out_of_bounds = 0  # Requested outside the box.
        self.infeasible = 0  # Positive constraint violation.
        self.first_out_of_bounds = None  # Kept for the log.

    def record(self, problem, x, fitness):
        self.evaluations += 1
        if fitness.violation > 0:
            self.infeasible += 1
        bounds = problem.bounds
        if np.any(x < bounds.lower) or np.any(x > bounds.upper):
            self.out_of_bounds += 1
            if self.first_out_of_bounds is None:
                self.first_out_of_bounds = np.array(x, copy=True)

    def log_metrics(self, name):
        debug1('%s: %d evaluations, %d infeasible, %d out of bounds\n'
               % (name, self.evaluations, self.infeasible,
                  self.out_of_bounds))
        if self.out_of_bounds:
            log('%s: evaluated %d positions outside the bounds, first %r\n'
                % (name, self.out_of_bounds,
                   list(self.first_out_of_bounds)))
