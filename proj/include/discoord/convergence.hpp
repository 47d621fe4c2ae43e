#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>

namespace discoord {

// Finite stopping rule for the consensus iterations: stop once the max-norm
// per-round change of every tracked vector falls below `tolerance`, give up
// after `max_rounds`. trace_every selects which rounds observers see.
struct ConvergenceConfig {
    double tolerance = 1e-10;
    std::int64_t max_rounds = 1'000'000;
    std::optional<std::int64_t> trace_every;

    void check() const {
        if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
        if (max_rounds < 1) throw std::invalid_argument("max_rounds must be >= 1");
        if (trace_every && *trace_every < 1) throw std::invalid_argument("trace_every must be >= 1");
    }

    bool sample_at(std::int64_t round) const {
        return trace_every && round % *trace_every == 0;
    }
};

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace discoord
