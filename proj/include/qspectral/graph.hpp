#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qspectral/dataset.hpp"

namespace qspectral {

/// Mutual (d-1)-nearest-neighbor graph with unit edge weights.
struct SimilarityGraph {
    int n_nodes = 0;
    int d = 2;  // neighborhood parameter; every degree is <= d-1
    std::vector<std::pair<int, int>> edges;  // i < j, sorted

    std::vector<std::vector<int>> adjacency() const;
};

/// Builds the mutual (d-1)-NN graph under the Euclidean metric.
/// Neighbor-ranking ties break toward the lower point index.
SimilarityGraph build_knn_graph(const Dataset& data, int d);

struct ComponentLabeling {
    int count = 0;
    std::vector<int> labels;  // component ids in order of first appearance
};

ComponentLabeling connected_components(const SimilarityGraph& graph);

void export_edge_list(const SimilarityGraph& graph, const std::string& path);

}  // namespace qspectral
