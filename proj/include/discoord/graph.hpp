#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "discoord/errors.hpp"

namespace discoord {

// Node ids are 1-based and contiguous: 1..node_count.
using NodeId = int;

// Canonical undirected edge, always stored with a < b.
struct Edge {
    NodeId a;
    NodeId b;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(NodeId i, NodeId j) {
    return i < j ? Edge{i, j} : Edge{j, i};
}

// Immutable undirected topology. Adjacency lists and the canonical edge list
// are kept sorted, so every downstream iteration order is independent of the
// order edges were supplied in.
class Graph {
public:
    Graph(int node_count, const std::vector<std::pair<NodeId, NodeId>>& edge_list)
        : node_count_(node_count), adj_(node_count > 0 ? static_cast<std::size_t>(node_count) : 0) {
        if (node_count < 1) throw NodeOutOfRangeError(node_count);
        edges_.reserve(edge_list.size());
        for (auto [i, j] : edge_list) {
            check_node(i);
            check_node(j);
            if (i == j) throw SelfLoopError(i);
            edges_.push_back(make_edge(i, j));
        }
        std::sort(edges_.begin(), edges_.end());
        for (std::size_t k = 1; k < edges_.size(); ++k) {
            if (edges_[k] == edges_[k - 1]) throw DuplicateEdgeError(edges_[k].a, edges_[k].b);
        }
        for (const Edge& e : edges_) {
            adj_[static_cast<std::size_t>(e.a - 1)].push_back(e.b);
            adj_[static_cast<std::size_t>(e.b - 1)].push_back(e.a);
        }
        for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
    }

    int node_count() const { return node_count_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    // Canonical edges, sorted by (a, b).
    std::span<const Edge> edges() const { return edges_; }

    // Neighbor ids of node i, ascending. Never contains i.
    std::span<const NodeId> neighbors(NodeId i) const {
        check_node(i);
        return adj_[static_cast<std::size_t>(i - 1)];
    }

    int degree(NodeId i) const { return static_cast<int>(neighbors(i).size()); }

    bool has_edge(NodeId i, NodeId j) const {
        check_node(i);
        check_node(j);
        if (i == j) return false;
        auto nbrs = neighbors(i);
        return std::binary_search(nbrs.begin(), nbrs.end(), j);
    }

    // Index of the canonical edge {i,j} in edges(), or -1 when absent.
    int edge_index(NodeId i, NodeId j) const {
        check_node(i);
        check_node(j);
        Edge e = make_edge(i, j);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
        if (it == edges_.end() || *it != e) return -1;
        return static_cast<int>(it - edges_.begin());
    }

    // True iff every node is reachable from node 1.
    bool is_connected() const {
        if (node_count_ == 1) return true;
        std::vector<char> seen(static_cast<std::size_t>(node_count_), 0);
        std::vector<NodeId> stack{1};
        seen[0] = 1;
        int visited = 1;
        while (!stack.empty()) {
            NodeId i = stack.back();
            stack.pop_back();
            for (NodeId j : neighbors(i)) {
                if (!seen[static_cast<std::size_t>(j - 1)]) {
                    seen[static_cast<std::size_t>(j - 1)] = 1;
                    ++visited;
                    stack.push_back(j);
                }
            }
        }
        return visited == node_count_;
    }

    // Column weight of the generation mixing iteration: 1/(1+|N_j|). The column
    // for node j places this weight on j and on each neighbor of j, so every
    // column sums to 1 and per-node sums are conserved.
    double generation_weight(NodeId j) const {
        return 1.0 / (1.0 + static_cast<double>(degree(j)));
    }

    // Metropolis weight a_ij = 1/(1+max(|N_i|,|N_j|)); symmetric in (i,j).
    double metropolis_weight(NodeId i, NodeId j) const {
        if (!has_edge(i, j)) throw NotAnEdgeError(i, j);
        return 1.0 / (1.0 + static_cast<double>(std::max(degree(i), degree(j))));
    }

private:
    void check_node(NodeId i) const {
        if (i < 1 || i > node_count_) throw NodeOutOfRangeError(i);
    }

    int node_count_;
    std::vector<Edge> edges_;
    std::vector<std::vector<NodeId>> adj_;
};

inline Graph build_graph(int node_count, const std::vector<std::pair<NodeId, NodeId>>& edge_list) {
    return Graph(node_count, edge_list);
}

}  // namespace discoord
