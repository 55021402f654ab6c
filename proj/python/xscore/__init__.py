"""Cross-dataset robustness scoring for model accuracy matrices.

Normalizes model x dataset accuracy grids against per-dataset extrema,
ranks models by xScore (mean normalized accuracy minus a variance
penalty), scores new models against frozen anchors, searches for compact
proxy dataset subsets by brute force, and quantifies accuracy/element
associations.
"""

from ._xscore import *  # noqa: F401,F403
from ._xscore import __version__  # noqa: F401
