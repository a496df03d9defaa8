"""graphvec: distributed representations of graphs from substructure patterns.

Two-stage toolkit: decompose graphs into discrete patterns (WL rooted
subgraphs, shortest paths, graphlets, anonymous walks), then either
compare the pattern histograms with graph kernels or train
negative-sampling embedding models on pattern co-occurrence to get dense
vectors for patterns or whole graphs.
"""

from .graphs import (Graph, GraphDataset, GraphError, bfs_distances,
                     connected_components, permute)

__version__ = "0.1.0"

__all__ = ["Graph", "GraphDataset", "GraphError", "bfs_distances",
           "connected_components", "permute", "__version__"]
