import re
from argparse import ArgumentParser, ArgumentTypeError as Fatal
from egretswarm import __version__
from egretswarm.problems import PROBLEM_GROUPS, PROBLEM_KEYS


def parse_list(lst):
    return re.split(r'[\s,]+', lst.strip()) if lst else []


# f1, himmelblau, "f1,f5 spring" or a group name: unimodal, engineering, all
def parse_problems(s):
    keys = parse_list(s.lower())
    if not keys:
        raise Fatal('no problem given')
    for key in keys:
        if key not in PROBLEM_KEYS and key not in PROBLEM_GROUPS:
            raise Fatal('unknown problem %r; valid keys are %s'
                        % (key, ', '.join(PROBLEM_KEYS +
                                          sorted(PROBLEM_GROUPS))))
    return keys


def parse_positive(s):
    try:
        n = int(s)
    except ValueError:
        raise Fatal('%r is not an integer' % s)
    if n < 1:
        raise Fatal('%d is not a positive integer' % n)
    return n


def parse_seed(s):
    try:
        n = int(s, 0)
    except ValueError:
        raise Fatal('%r is not an integer' % s)
    if not 0 <= n < 2 ** 64:
        raise Fatal('seed %d is not a 64-bit unsigned integer' % n)
    return n


def parse_probability(s):
    try:
        p = float(s)
    except ValueError:
        raise Fatal('%r is not a number' % s)
    if not 0 <= p <= 1:
        raise Fatal('%r is not between 0 and 1' % p)
    return p


def parse_phi(s):
    try:
        phi = float(s)
    except ValueError:
        raise Fatal('%r is not a number' % s)
    if not 0 <= phi < float('inf'):
        raise Fatal('penalty %r must be finite and >= 0' % phi)
    return phi


parser = ArgumentParser(
    prog="egretswarm",
    usage="%(prog)s --problem KEY[,KEY...] [--dim N] [--pop N] [--iters N] "
          "[--trials N] [--seed N] [--out DIR]",
    fromfile_prefix_chars="@"
)
parser.add_argument(
    "--problem",
    metavar="KEY[,KEY]",
    required=True,
    type=parse_problems,
    help="""
    problems to optimize: %s, or one of the groups %s
    """ % (", ".join(PROBLEM_KEYS), ", ".join(sorted(PROBLEM_GROUPS)))
)
parser.add_argument(
    "--dim",
    metavar="N",
    type=parse_positive,
    default=30,
    help="""
    dimension of the f1..f7 benchmarks [%(default)s]
    """
)
parser.add_argument(
    "--pop",
    metavar="N",
    dest="population",
    type=parse_positive,
    default=50,
    help="""
    number of egret squads [%(default)s]
    """
)
parser.add_argument(
    "--iters",
    metavar="N",
    dest="max_iterations",
    type=parse_positive,
    default=500,
    help="""
    maximum number of iterations per trial [%(default)s]
    """
)
parser.add_argument(
    "--trials",
    metavar="N",
    type=parse_positive,
    default=30,
    help="""
    number of independently seeded trials per problem [%(default)s]
    """
)
parser.add_argument(
    "--seed",
    metavar="N",
    type=parse_seed,
    default=42,
    help="""
    master seed; trial k uses a stream split off it [%(default)s]
    """
)
parser.add_argument(
    "--out",
    metavar="DIR",
    dest="output_dir",
    default="results",
    help="""
    directory for convergence CSVs and JSON summaries [%(default)s]
    """
)
parser.add_argument(
    "--accept-prob",
    metavar="P",
    type=parse_probability,
    default=0.3,
    help="""
    probability of accepting a worse candidate [%(default)s]
    """
)
parser.add_argument(
    "--phi",
    metavar="PHI",
    type=parse_phi,
    help="""
    override the penalty parameter of the constrained problems
    """
)
parser.add_argument(
    "-j", "--jobs",
    metavar="N",
    type=parse_positive,
    default=1,
    help="""
    run trials in this many worker processes [%(default)s]
    """
)
parser.add_argument(
    "-v", "--verbose",
    action="count",
    default=0,
    help="""
    increase debug message verbosity
    """
)
parser.add_argument(
    "-V", "--version",
    action="version",
    version=__version__,
    help="""
    print the %(prog)s version number and exit
    """
)
