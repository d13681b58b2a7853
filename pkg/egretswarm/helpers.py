import sys

import numpy as np

logprefix = ''
verbose = 0


def log(s):
    global logprefix
    try:
        sys.stdout.flush()
        if s.find("\n") != -1:
            prefix = logprefix
            s = s.rstrip("\n")
            for line in s.split("\n"):
                sys.stderr.write(prefix + line + "\n")
                prefix = "---> "
        else:
            sys.stderr.write(logprefix + s)
        sys.stderr.flush()
    except IOError:
        # stderr may be a closed pipe
        pass


def debug1(s):
    if verbose >= 1:
        log(s)


def debug2(s):
    if verbose >= 2:
        log(s)


def debug3(s):
    if verbose >= 3:
        log(s)


class Fatal(Exception):
    pass


class DomainError(Fatal, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class ConfigError(Fatal):
    """A run configuration is unusable; raised before any evaluation."""


class OutputError(Fatal):

    def __init__(self, path, error):
        Fatal.__init__(self, "unable to write %s: %s" % (path, error))
        self.path = path


def as_vector(x, name="x"):
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise DomainError("%s must be a vector, got shape %r"
                          % (name, v.shape))
    return v


def check_finite(x, name="x"):
    if not np.all(np.isfinite(x)):
        raise DomainError("%s contains non-finite values" % name)
    return x


def check_same_length(a, b, what="vectors"):
    if len(a) != len(b):
        raise DomainError("%s differ in length: %d != %d"
                          % (what, len(a), len(b)))
