#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "discoord/distribution.hpp"
#include "discoord/format.hpp"
#include "discoord/generation.hpp"
#include "discoord/graph.hpp"

namespace discoord {

// CSV writers for sampled iteration state. Each phase has its own column
// schema; values use shortest round-trip formatting.

// Rows: round,node,z,w. The header goes out just before the first sampled
// row, so several trace sections can share one stream without interleaving.
class GenerationTrace {
public:
    explicit GenerationTrace(std::ostream& out) : out_(out) {}

    void operator()(const GenerationState& st) {
        if (!header_written_) {
            out_ << "round,node,z,w\n";
            header_written_ = true;
        }
        for (std::size_t i = 0; i < st.z.size(); ++i) {
            out_ << st.round << ',' << (i + 1) << ',' << format_shortest(st.z[i]) << ','
                 << format_shortest(st.w[i]) << '\n';
        }
    }

private:
    std::ostream& out_;
    bool header_written_ = false;
};

// Rows: round,node,g followed (after finish()) by round,edge,h with edges
// labelled "a-b". The h section is buffered so each section stays contiguous.
class DistributionTrace {
public:
    DistributionTrace(std::ostream& out, const Graph& graph) : out_(out), graph_(graph) {}

    void operator()(const DistributionState& st) {
        if (!header_written_) {
            out_ << "round,node,g\n";
            header_written_ = true;
        }
        for (std::size_t i = 0; i < st.g.size(); ++i) {
            out_ << st.round << ',' << (i + 1) << ',' << format_shortest(st.g[i]) << '\n';
        }
        auto edges = graph_.edges();
        for (std::size_t k = 0; k < edges.size(); ++k) {
            edge_rows_.push_back(std::to_string(st.round) + ',' + std::to_string(edges[k].a) + '-' +
                                 std::to_string(edges[k].b) + ',' + format_shortest(st.h[k]));
        }
    }

    void finish() {
        if (edge_rows_.empty()) return;
        out_ << "round,edge,h\n";
        for (const std::string& row : edge_rows_) out_ << row << '\n';
        edge_rows_.clear();
    }

private:
    std::ostream& out_;
    const Graph& graph_;
    std::vector<std::string> edge_rows_;
    bool header_written_ = false;
};

}  // namespace discoord
