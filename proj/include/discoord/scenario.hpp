#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "discoord/errors.hpp"
#include "discoord/graph.hpp"

namespace discoord {

// A dispatch problem instance: who is connected to whom, how much energy each
// node starts with and wants, and how much each node may generate.
struct Scenario {
    Graph graph;
    std::vector<double> initial;  // E_i^o
    std::vector<double> desired;  // E_i^d
    std::vector<double> lower;    // generation lower bound per node
    std::vector<double> upper;    // generation upper bound per node

    Scenario(Graph g, std::vector<double> initial_, std::vector<double> desired_,
             std::vector<double> lower_, std::vector<double> upper_)
        : graph(std::move(g)),
          initial(std::move(initial_)),
          desired(std::move(desired_)),
          lower(std::move(lower_)),
          upper(std::move(upper_)) {
        auto want = static_cast<std::size_t>(graph.node_count());
        if (initial.size() != want) throw LengthMismatchError("initial", initial.size(), want);
        if (desired.size() != want) throw LengthMismatchError("desired", desired.size(), want);
        if (lower.size() != want) throw LengthMismatchError("lower", lower.size(), want);
        if (upper.size() != want) throw LengthMismatchError("upper", upper.size(), want);
    }

    int node_count() const { return graph.node_count(); }
};

enum class RegimeTag { Balanced, UnderDemand, OverDemand };

inline const char* to_string(RegimeTag tag) {
    switch (tag) {
        case RegimeTag::Balanced: return "Balanced";
        case RegimeTag::UnderDemand: return "UnderDemand";
        case RegimeTag::OverDemand: return "OverDemand";
    }
    return "?";
}

// Where the total demand sits relative to the feasible generation band
// [Σ(initial+lower), Σ(initial+upper)].
struct DemandRegime {
    RegimeTag tag;
    bool no_generation_needed;  // Σ initial == Σ desired (within tolerance)
};

// Sums are user-entered decimals; equality at the band edges is legitimate.
inline constexpr double kClassificationTolerance = 1e-9;

// Checks structural validity (finite values, ordered bounds, connectivity) and
// classifies the demand regime. Unbalanced scenarios are classified, never
// rejected: the solvers handle them by saturating generation.
inline DemandRegime validate(const Scenario& s) {
    const int n = s.node_count();
    auto check_finite = [&](const std::vector<double>& v, const char* field) {
        for (int i = 0; i < n; ++i) {
            if (!std::isfinite(v[static_cast<std::size_t>(i)]))
                throw NonFiniteValueError(i + 1, field);
        }
    };
    check_finite(s.initial, "initial");
    check_finite(s.desired, "desired");
    check_finite(s.lower, "lower");
    check_finite(s.upper, "upper");
    for (int i = 0; i < n; ++i) {
        auto k = static_cast<std::size_t>(i);
        if (s.lower[k] > s.upper[k]) throw BoundViolationError(i + 1);
    }
    if (!s.graph.is_connected()) throw DisconnectedGraphError();

    double sum_initial = std::accumulate(s.initial.begin(), s.initial.end(), 0.0);
    double sum_desired = std::accumulate(s.desired.begin(), s.desired.end(), 0.0);
    double sum_floor = sum_initial + std::accumulate(s.lower.begin(), s.lower.end(), 0.0);
    double sum_ceil = sum_initial + std::accumulate(s.upper.begin(), s.upper.end(), 0.0);

    RegimeTag tag = RegimeTag::Balanced;
    if (sum_desired < sum_floor - kClassificationTolerance) {
        tag = RegimeTag::UnderDemand;
    } else if (sum_desired > sum_ceil + kClassificationTolerance) {
        tag = RegimeTag::OverDemand;
    }
    bool no_gen = std::abs(sum_initial - sum_desired) <= kClassificationTolerance;
    return DemandRegime{tag, no_gen};
}

namespace detail {

inline int line_of_byte(std::string_view text, std::size_t byte) {
    std::size_t end = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(end), '\n'));
}

inline std::vector<double> number_list(const nlohmann::ordered_json& j, const char* field,
                                       std::size_t want) {
    if (!j.is_array()) throw ScenarioError(std::string("field '") + field + "' must be a list of numbers");
    std::vector<double> out;
    out.reserve(j.size());
    for (const auto& v : j) {
        if (!v.is_number()) throw ScenarioError(std::string("field '") + field + "' must be a list of numbers");
        out.push_back(v.get<double>());
    }
    if (out.size() != want) throw LengthMismatchError(field, out.size(), want);
    return out;
}

}  // namespace detail

// Scenario file schema: a JSON object with exactly the fields
//   nodes   - positive integer
//   edges   - list of [a, b] pairs, 1-based
//   initial, desired, lower, upper - number lists of length `nodes`
// Unknown top-level fields are rejected to surface typos.
inline Scenario parse_scenario(std::string_view text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(detail::line_of_byte(text, e.byte), e.what());
    }
    if (!doc.is_object()) throw ScenarioError("scenario file must be a JSON object");

    static constexpr const char* kFields[] = {"nodes", "edges", "initial", "desired", "lower", "upper"};
    for (const auto& item : doc.items()) {
        if (std::find_if(std::begin(kFields), std::end(kFields),
                         [&](const char* f) { return item.key() == f; }) == std::end(kFields))
            throw UnknownFieldError(item.key());
    }
    for (const char* f : kFields) {
        if (!doc.contains(f)) throw MissingFieldError(f);
    }

    const auto& jn = doc["nodes"];
    if (!jn.is_number_integer() || jn.get<long long>() < 1)
        throw ScenarioError("field 'nodes' must be a positive integer");
    int n = jn.get<int>();

    const auto& je = doc["edges"];
    if (!je.is_array()) throw ScenarioError("field 'edges' must be a list of [a,b] pairs");
    std::vector<std::pair<NodeId, NodeId>> edge_list;
    edge_list.reserve(je.size());
    for (const auto& e : je) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
            throw ScenarioError("field 'edges' must be a list of [a,b] pairs");
        edge_list.emplace_back(e[0].get<int>(), e[1].get<int>());
    }

    auto want = static_cast<std::size_t>(n);
    Graph graph(n, edge_list);
    return Scenario(std::move(graph), detail::number_list(doc["initial"], "initial", want),
                    detail::number_list(doc["desired"], "desired", want),
                    detail::number_list(doc["lower"], "lower", want),
                    detail::number_list(doc["upper"], "upper", want));
}

// Inverse of parse_scenario: parse_scenario(serialize_scenario(s)) == s.
// nlohmann prints doubles with shortest round-trip precision, so values
// survive exactly.
inline std::string serialize_scenario(const Scenario& s) {
    nlohmann::ordered_json doc;
    doc["nodes"] = s.node_count();
    auto edges = nlohmann::ordered_json::array();
    for (const Edge& e : s.graph.edges()) edges.push_back({e.a, e.b});
    doc["edges"] = std::move(edges);
    doc["initial"] = s.initial;
    doc["desired"] = s.desired;
    doc["lower"] = s.lower;
    doc["upper"] = s.upper;
    return doc.dump(2) + "\n";
}

}  // namespace discoord
