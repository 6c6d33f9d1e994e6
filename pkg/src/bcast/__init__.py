"""Independent broadcasts on circulant graphs C(n; 1, a).

Exact solvers, closed-form predictions, explicit witness constructions and a
verification harness that cross-checks all three.
"""

from bcast.broadcast import Broadcast
from bcast.graph_core import CirculantGraph, DistanceOracle, build_circulant

__all__ = ["Broadcast", "CirculantGraph", "DistanceOracle", "build_circulant"]
__version__ = "0.1.0"
