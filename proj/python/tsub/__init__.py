"""Short subdivisions in tournaments.

The compiled extension does the work; this package re-exports it. Finder and
oracle results are dicts whose ``witness`` entry has the same shape as the
witness JSON written by the command-line tool.
"""

from ._tsub import *  # noqa: F401,F403
from ._tsub import TsubError, Tournament  # noqa: F401
