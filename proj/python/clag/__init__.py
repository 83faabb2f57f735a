"""Cameron-Liebler sets of k-spaces in AG(n,q) and PG(n,q).

Reports come back as dicts in the same layout the ``clag`` command line
writes. Exact rationals are kept as "p/q" strings there; ``fraction`` and
``fraction_matrix`` convert them.
"""

import json
from fractions import Fraction

from . import _core
from ._core import ClagError, KSet, Space, complement, embed_to_pg, point_pencil, project, set_difference, set_union

__all__ = [
    "ClagError", "KSet", "Space", "cli", "complement", "eigenspace_profile", "embed_to_pg", "fraction",
    "fraction_matrix", "gaussian_binomial", "inner_distribution", "is_cameron_liebler", "point_pencil", "project",
    "scheme", "search", "set_difference", "set_union", "spread_count", "spread_type_I", "spread_type_II",
    "spread_type_III",
]


def fraction(text):
    return Fraction(text)


def fraction_matrix(rows):
    return [[Fraction(v) for v in row] for row in rows]


def gaussian_binomial(a, b, q):
    return int(_core.gaussian_binomial(a, b, q))


def is_cameron_liebler(kset):
    return json.loads(_core.is_cameron_liebler(kset))


def inner_distribution(kset, hyperplanes=False):
    return [Fraction(v) for v in _core.inner_distribution(kset, hyperplanes)]


def eigenspace_profile(kset, hyperplanes=False):
    return list(_core.eigenspace_profile(kset, hyperplanes))


def scheme(n, q, hyperplanes=False, brute_force=False):
    return json.loads(_core.scheme(n, q, hyperplanes, brute_force))


def search(n, q, k, x, count_only=False, threads=1, seed=1):
    return json.loads(_core.search(n, q, k, x, count_only, threads, seed))


def spread_type_I(q, n, k, affine=False):
    return json.loads(_core.spread_type_I(q, n, k, affine))


def spread_type_II(space, at_infinity):
    return json.loads(_core.spread_type_II(space, at_infinity))


def spread_type_III(space, axis, choices):
    return json.loads(_core.spread_type_III(space, axis, choices))


def spread_count(space, k):
    return _core.spread_count(space, k)


def cli(*args):
    """Runs a command line in-process; returns (exit code, stdout, stderr)."""
    return _core.cli([str(a) for a in args])
