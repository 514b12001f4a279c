"""Young-type integration on self-similar subsets of an interval.

Exact values cross the boundary as "p/q" strings; `fraction` converts them
to `fractions.Fraction`.
"""

from fractions import Fraction

try:
    from ._fy import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # in-tree build: the extension sits on sys.path
    from _fy import *  # noqa: F401,F403

__version__ = "0.1.0"


def fraction(value):
    """Fraction from an exact "p/q" string (floats pass through exactly)."""
    if isinstance(value, str):
        return Fraction(value)
    return Fraction(value)
