"""Hotel recommendation engine.

Turns heterogeneous review data (text reviews, ranks, votes, video views)
from multiple sources into per-hotel polarity scores, fuzzy recommendation
classes and guest-type-aware ranked recommendation lists.
"""

__version__ = "0.1.0"
