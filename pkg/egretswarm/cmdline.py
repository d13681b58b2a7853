import os
import sys
from argparse import ArgumentTypeError
import egretswarm.helpers as helpers
from egretswarm.harness import RunConfig, TABLE_HEADER, format_row, \
    run_experiment
from egretswarm.options import parser, parse_seed
from egretswarm.problems import parse_problem_keys
from egretswarm.helpers import log, ConfigError, Fatal


# Environment variables that override the command line arguments
def apply_env_overrides(opt, environ=os.environ):
    if 'EGRET_VERBOSE_LEVEL' in environ:
        try:
            helpers.verbose = int(environ['EGRET_VERBOSE_LEVEL'])
        except ValueError:
            raise ConfigError('EGRET_VERBOSE_LEVEL must be an integer')
        log('EGRET_VERBOSE_LEVEL env variable was set.  Setting verbose '
            'to %s\n' % helpers.verbose)
    if 'EGRET_SEED' in environ:
        opt.seed = parse_seed(environ['EGRET_SEED'])
        log('EGRET_SEED env variable was set.  Setting --seed to %s\n'
            % opt.seed)
    if 'EGRET_OUTPUT_DIR' in environ:
        opt.output_dir = environ['EGRET_OUTPUT_DIR']
        log('EGRET_OUTPUT_DIR env variable was set.  Setting --out to %s\n'
            % opt.output_dir)
    return opt


def main(argv=None):
    try:
        opt = parser.parse_args(argv)
    except SystemExit as e:
        return e.code

    helpers.verbose = opt.verbose

    try:
        apply_env_overrides(opt)
        base = RunConfig(dim=opt.dim,
                         population=opt.population,
                         max_iterations=opt.max_iterations,
                         trials=opt.trials,
                         seed=opt.seed,
                         output_dir=opt.output_dir,
                         accept_prob=opt.accept_prob,
                         phi=opt.phi,
                         jobs=opt.jobs)
        configs = [base.for_problem(key)
                   for key in parse_problem_keys(opt.problem)]
        for config in configs:
            config.validate()

        sys.stdout.write(TABLE_HEADER)
        for config in configs:
            helpers.logprefix = '%s: ' % config.problem
            _, stats = run_experiment(config)
            sys.stdout.write(format_row(config.problem, stats))
            sys.stdout.flush()
        return 0

    except (ConfigError, ArgumentTypeError) as e:
        log('fatal: %s\n' % e)
        return 2
    except Fatal as e:
        log('fatal: %s\n' % e)
        return 1
    except KeyboardInterrupt:
        log('\n')
        log('Keyboard interrupt: exiting.\n')
        return 1
    finally:
        helpers.logprefix = ''
