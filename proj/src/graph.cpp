#include "qspectral/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <stdexcept>

namespace qspectral {

std::vector<std::vector<int>> SimilarityGraph::adjacency() const {
    std::vector<std::vector<int>> adj(n_nodes);
    for (const auto& [i, j] : edges) {
        adj[i].push_back(j);
        adj[j].push_back(i);
    }
    for (auto& list : adj) std::sort(list.begin(), list.end());
    return adj;
}

SimilarityGraph build_knn_graph(const Dataset& data, int d) {
    const int n = data.n_points();
    if (d < 2) throw std::invalid_argument("build_knn_graph: d must be >= 2");
    if (d >= n)
        throw std::invalid_argument("build_knn_graph: d must be < n_points");

    // (d-1) nearest neighbors per point, ties broken by lower index.
    std::vector<std::set<int>> nearest(n);
    std::vector<std::pair<double, int>> order(n - 1);
    for (int i = 0; i < n; ++i) {
        int m = 0;
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double dist2 =
                (data.points.row(i) - data.points.row(j)).squaredNorm();
            order[m++] = {dist2, j};
        }
        std::sort(order.begin(), order.end());
        for (int r = 0; r < d - 1; ++r) nearest[i].insert(order[r].second);
    }

    SimilarityGraph graph;
    graph.n_nodes = n;
    graph.d = d;
    for (int i = 0; i < n; ++i)
        for (int j : nearest[i])
            if (j > i && nearest[j].count(i)) graph.edges.emplace_back(i, j);
    std::sort(graph.edges.begin(), graph.edges.end());
    return graph;
}

ComponentLabeling connected_components(const SimilarityGraph& graph) {
    const auto adj = graph.adjacency();
    ComponentLabeling out;
    out.labels.assign(graph.n_nodes, -1);
    for (int start = 0; start < graph.n_nodes; ++start) {
        if (out.labels[start] != -1) continue;
        const int id = out.count++;
        std::vector<int> stack = {start};
        out.labels[start] = id;
        while (!stack.empty()) {
            const int u = stack.back();
            stack.pop_back();
            for (int v : adj[u]) {
                if (out.labels[v] == -1) {
                    out.labels[v] = id;
                    stack.push_back(v);
                }
            }
        }
    }
    return out;
}

void export_edge_list(const SimilarityGraph& graph, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("export_edge_list: cannot write " + path);
    for (const auto& [i, j] : graph.edges) out << i << ',' << j << '\n';
}

}  // namespace qspectral
