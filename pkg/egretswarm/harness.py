import copy
import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor

import numpy as np

import egretswarm.esoa as esoa
from egretswarm.helpers import ConfigError, DomainError, OutputError, \
    debug1, log
from egretswarm.metrics import Metrics
from egretswarm.problems import ENGINEERING_KEYS, PROBLEM_KEYS, get_problem
from egretswarm.rng import DEFAULT_SEED, RandomSource

CSV_HEADER = ["iteration", "best_fitness"]
TABLE_HEADER = "%-12s %24s %24s %24s %24s\n" % ("problem", "best", "worst",
                                               "ave", "std")


class RunConfig(object):

    def __init__(self, problem="f1", dim=30, population=50,
                 max_iterations=500, trials=30, seed=DEFAULT_SEED,
                 output_dir="results", accept_prob=esoa.ACCEPT_WORSE,
                 phi=None, jobs=1):
        self.problem = problem
        self.dim = dim
        self.population = population
        self.max_iterations = max_iterations
        self.trials = trials
        self.seed = seed
        self.output_dir = output_dir
        self.accept_prob = accept_prob
        self.phi = phi
        self.jobs = jobs

    def __repr__(self):
        return "RunConfig(%s)" % ", ".join(
            "%s=%r" % kv for kv in sorted(vars(self).items()))

    def for_problem(self, problem):
        other = copy.copy(self)
        other.problem = problem
        return other

    def validate(self):
        if self.problem not in PROBLEM_KEYS:
            raise ConfigError("unknown problem %r; valid keys are %s"
                              % (self.problem, ", ".join(PROBLEM_KEYS)))
        for name in ("dim", "population", "max_iterations", "trials",
                     "jobs"):
            if int(getattr(self, name)) < 1:
                raise ConfigError("%s must be >= 1, got %r"
                                  % (name, getattr(self, name)))
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.phi is not None and self.phi < 0:
            raise ConfigError("penalty parameter must be >= 0")
        esoa.check_config(self)


class SummaryStats(object):

    def __init__(self, best, worst, ave, std, best_index=0):
        self.best = best
        self.worst = worst
        self.ave = ave
        self.std = std
        self.best_index = best_index

    def __repr__(self):
        return "SummaryStats(best=%r, worst=%r, ave=%r, std=%r)" % (
            self.best, self.worst, self.ave, self.std)


def run_trial(config, k):
    problem = get_problem(config.problem, config.dim, config.phi, Metrics())
    report = esoa.optimize(problem, config, RandomSource(config.seed).split(k))
    problem.metrics.log_metrics("%s trial %d" % (config.problem, k))
    debug1('%s trial %d: best %r (raw %r, violation %r)\n'
           % (config.problem, k, report.best.value, report.best.raw_value,
              report.best.violation))
    return report


def _run_trial_args(args):
    return run_trial(*args)


def run_trials(config):
    config.validate()
    jobs = [(config, k) for k in range(int(config.trials))]
    if config.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as executor:
            return list(executor.map(_run_trial_args, jobs))
    return [run_trial(*job) for job in jobs]


def _rank(report):
    # feasible first, then least violating, then lowest raw objective
    violation = report.best.violation
    return (violation > 0, violation, report.final_fitness)


def summarize(reports):
    """Best/worst/ave/std of the trials' raw objective values.

    ``best`` is the raw value of the best trial, the feasible one with the
    lowest objective if any trial ended feasible, otherwise the least
    violating one.  The other statistics cover every trial.
    """
    if not reports:
        raise DomainError("cannot summarize an empty list of reports")
    values = np.array([r.final_fitness for r in reports], dtype=float)
    best_index = min(range(len(reports)), key=lambda i: _rank(reports[i]))
    best, worst = float(values[best_index]), float(np.max(values))
    if np.all(values == values[0]):
        ave, std = best, 0.0
    else:
        ave = min(max(float(np.mean(values)), best), worst)
        std = float(np.std(values, ddof=1))
    return SummaryStats(best, worst, ave, std, best_index)


def format_row(name, stats):
    return "%-12s %24.16e %24.16e %24.16e %24.16e\n" % (
        name, stats.best, stats.worst, stats.ave, stats.std)


def _write_text(path, text):
    try:
        with io.open(path, "w", encoding="utf-8", newline="") as f:
            f.write(text)
    except (IOError, OSError) as e:
        raise OutputError(path, e)


def write_convergence_csv(report, path):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for i, value in enumerate(report.trace, 1):
        writer.writerow([i, "%.16e" % value])
    _write_text(path, buf.getvalue())


def read_convergence_csv(path):
    with io.open(path, encoding="utf-8", newline="") as f:
        rows = list(csv.reader(f))
    if not rows or rows[0] != CSV_HEADER:
        raise DomainError("%s is not a convergence trace" % path)
    return np.array([float(value) for _, value in rows[1:]])


def write_summary_json(config, stats, report, path, f_min=None):
    """Write the run summary; ``report`` is the trial holding the best and
    ``f_min`` the known optimum of the problem, if there is one."""
    summary = {
        "problem": config.problem,
        "dim": len(report.best_position),
        "population": config.population,
        "max_iterations": config.max_iterations,
        "trials": config.trials,
        "seed": config.seed,
        "accept_prob": config.accept_prob,
        "best": stats.best,
        "worst": stats.worst,
        "ave": stats.ave,
        "std": stats.std,
        "best_position": [float(v) for v in report.best_position],
        "value": report.best.value,
        "raw_value": report.best.raw_value,
        "violation": report.best.violation,
        "evaluations": report.evaluations,
        "spawn_key": [int(k) for k in report.spawn_key],
        "f_min": f_min,
    }
    _write_text(path, json.dumps(summary, indent=2) + "\n")


def output_paths(config):
    out = config.output_dir
    trials = [os.path.join(out, "%s_trial%d.csv" % (config.problem, k))
              for k in range(int(config.trials))]
    return trials, os.path.join(out, "%s_summary.json" % config.problem)


def run_experiment(config):
    """Run, summarize and write one problem; returns (reports, stats)."""
    config.validate()
    reports = run_trials(config)
    stats = summarize(reports)
    best = reports[stats.best_index]
    if config.problem in ENGINEERING_KEYS:
        log('%s best point: raw %r, violation %r\n'
            % (config.problem, best.best.raw_value, best.best.violation))
    if best.best.violation > 0:
        log('warning: best %s point is infeasible (violation %r)\n'
            % (config.problem, best.best.violation))
    out = config.output_dir
    try:
        if not os.path.isdir(out):
            os.makedirs(out)
    except OSError as e:
        raise OutputError(out, e)
    trial_paths, summary_path = output_paths(config)
    for report, path in zip(reports, trial_paths):
        write_convergence_csv(report, path)
    f_min = get_problem(config.problem, config.dim).f_min
    if f_min is not None:
        debug1('%s best %r, known optimum %r\n'
               % (config.problem, stats.best, f_min))
    write_summary_json(config, stats, best, summary_path, f_min)
    return reports, stats
