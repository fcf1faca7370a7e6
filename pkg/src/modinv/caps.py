"""Global size caps.

Every cap has a module-level default; functions take an explicit override and
fall back to these values.  The CLI rewrites them from ``--cap-*`` flags.
"""

GROUP_ORDER = 512
MODULE_DIM = 64
MONOMIALS = 10**6
GROEBNER_SIZE = 10**5


def resolve(value, default):
    return default if value is None else value
