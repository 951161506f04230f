// Copyright 2026 The hocr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License"); you
// may not use this file except in compliance with the License. You may
// obtain a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Prototype matchers: Euclidean nearest neighbour over zoning vectors, a
// Hamming net with a Maxnet winner-take-all layer over binary vectors, and
// a fuzzy-neural-network style similarity over fuzzy maps.
//
// Every classifier walks the prototypes in store order and keeps the first
// best candidate, so exact ties resolve to the earliest prototype.

#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "hocr/error.hpp"
#include "hocr/features.hpp"

namespace hocr {

enum class Script : std::uint8_t { Arabic = 0, Indian = 1 };

inline std::string_view to_string(Script s) noexcept {
    return s == Script::Arabic ? "arabic" : "indian";
}

inline std::optional<Script> parse_script(std::string_view s) noexcept {
    if (s == "arabic") return Script::Arabic;
    if (s == "indian") return Script::Indian;
    return std::nullopt;
}

/// One of the 20 classes: a script and a digit value 0-9.
struct ClassLabel {
    Script script = Script::Arabic;
    int digit = 0;

    friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
    friend auto operator<=>(const ClassLabel&, const ClassLabel&) = default;
};

inline ClassLabel make_label(Script script, int digit) {
    if (digit < 0 || digit > 9) throw PreconditionError("digit must be in [0, 9], got " + std::to_string(digit));
    return ClassLabel{script, digit};
}

inline std::string to_string(const ClassLabel& l) {
    return "(" + std::string(to_string(l.script)) + "," + std::to_string(l.digit) + ")";
}

struct Prototype {
    ClassLabel label;
    std::string typeset;
    BinaryFeature binary;
    ZoningFeature zoning;
    FuzzyFeature fuzzy;

    friend bool operator==(const Prototype&, const Prototype&) = default;
};

/// Uniform classifier output. `score` is a distance for the Euclidean matcher
/// (lower is better) and a similarity for the others (higher is better).
struct RankedResult {
    ClassLabel label;
    std::string typeset;
    std::size_t index = 0;  // position of the winner in the store
    double score = 0.0;
    double runner_up_score = 0.0;

    friend bool operator==(const RankedResult&, const RankedResult&) = default;
};

struct MaxnetConfig {
    double epsilon = 0.01;
    int max_iters = 10000;
};

struct MaxnetResult {
    std::size_t winner = 0;
    int iterations = 0;
};

inline double euclidean_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw DimensionError("vector lengths differ: " + std::to_string(p.size()) + " vs " +
                             std::to_string(q.size()));
    }
    if (p.empty()) throw DimensionError("euclidean distance needs at least one component");
    double sum = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double d = p[i] - q[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

namespace detail {

inline void require_prototypes(std::span<const Prototype> protos) {
    if (protos.empty()) throw ConfigError("prototype store is empty");
}

inline RankedResult make_result(const Prototype& p, std::size_t index, double score, double runner_up) {
    return RankedResult{p.label, p.typeset, index, score, runner_up};
}

} // namespace detail

/// Nearest zoning prototype. Runner-up is the second smallest distance, or
/// +infinity when the store holds a single prototype.
inline RankedResult classify_euclidean(const ZoningFeature& f, std::span<const Prototype> protos) {
    detail::require_prototypes(protos);
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    double second_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < protos.size(); ++j) {
        const double d = euclidean_distance(f.values, protos[j].zoning.values);
        if (d < best_d) {
            second_d = best_d;
            best_d = d;
            best = j;
        } else if (d < second_d) {
            second_d = d;
        }
    }
    return detail::make_result(protos[best], best, best_d, second_d);
}

/// net_j = n/2 + (1/2) * sum_i x_i c_ji with bipolar x and c, i.e. n - HD(x, c_j).
inline std::vector<int> hamming_activations(const BinaryFeature& x, std::span<const Prototype> protos) {
    detail::require_prototypes(protos);
    constexpr int n = kGlyphCells;
    std::vector<int> net;
    net.reserve(protos.size());
    for (const auto& proto : protos) {
        int dot = 0;  // sum of x_i * c_ji over bipolar values
        for (std::size_t i = 0; i < x.values.size(); ++i) {
            dot += x.values[i] == proto.binary.values[i] ? 1 : -1;
        }
        // b_j = n/2 and w_ji = c_ji/2; n + dot is always even.
        net.push_back((n + dot) / 2);
    }
    return net;
}

/// Winner-take-all recurrence y_j <- max(0, y_j - eps * sum_{k != j} y_k),
/// run until a single entry stays positive.
inline MaxnetResult maxnet(std::span<const double> net, const MaxnetConfig& cfg = {}) {
    const std::size_t m = net.size();
    if (m == 0) throw DegenerateInputError("maxnet input is empty");
    if (cfg.max_iters <= 0) throw ConfigError("maxnet max_iters must be positive");
    const double bound = m > 1 ? 1.0 / static_cast<double>(m - 1) : std::numeric_limits<double>::infinity();
    if (!(cfg.epsilon > 0.0) || !(cfg.epsilon < bound)) {
        throw ConfigError("maxnet epsilon " + std::to_string(cfg.epsilon) + " outside (0, 1/(M-1)) for M = " +
                          std::to_string(m));
    }
    std::vector<double> y(net.begin(), net.end());
    for (double v : y) {
        if (!std::isfinite(v) || v < 0.0) throw PreconditionError("maxnet activations must be finite and nonnegative");
    }

    auto positives = [&] {
        std::size_t count = 0;
        std::size_t last = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (y[j] > 0.0) {
                ++count;
                last = j;
            }
        }
        return std::pair{count, last};
    };

    auto [alive, winner] = positives();
    if (alive == 0) throw DegenerateInputError("maxnet input is all zero");
    int iterations = 0;
    while (alive > 1) {
        if (iterations == cfg.max_iters) {
            throw ConvergenceError("maxnet did not converge within " + std::to_string(cfg.max_iters) +
                                   " iterations (epsilon " + std::to_string(cfg.epsilon) + ")");
        }
        double total = 0.0;
        for (double v : y) total += v;
        for (auto& v : y) {
            // (1 + eps) * y - eps * total is monotone in y, so the ordering of
            // survivors is preserved exactly under rounding.
            const double next = (1.0 + cfg.epsilon) * v - cfg.epsilon * total;
            v = next > 0.0 ? next : 0.0;
        }
        ++iterations;
        std::tie(alive, winner) = positives();
        if (alive == 0) {
            throw ConvergenceError("maxnet suppressed every activation (epsilon " + std::to_string(cfg.epsilon) + ")");
        }
    }
    return MaxnetResult{winner, iterations};
}

/// Hamming net followed by Maxnet. Exact net ties are broken towards store
/// order by a sub-unit perturbation before the competition starts.
inline RankedResult classify_hamming(const BinaryFeature& x, std::span<const Prototype> protos,
                                     const MaxnetConfig& cfg = {}) {
    const auto net = hamming_activations(x, protos);
    const std::size_t m = net.size();
    // Integer nets differ by at least 1; the perturbation stays below 1/2.
    const double step = 1.0 / (2.0 * static_cast<double>(m));
    std::vector<double> y(m);
    for (std::size_t j = 0; j < m; ++j) y[j] = net[j] + static_cast<double>(m - 1 - j) * step;

    const std::size_t winner = m > 1 ? maxnet(y, cfg).winner : 0;
    double runner_up = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        if (j != winner) runner_up = std::max(runner_up, static_cast<double>(net[j]));
    }
    return detail::make_result(protos[winner], winner, net[winner], runner_up);
}

/// Pluggable fuzzy similarity: 1 - mean absolute difference, in [0, 1].
struct MeanAbsoluteAgreement {
    double operator()(const FuzzyFeature& s, const FuzzyFeature& proto) const noexcept {
        double l1 = 0.0;
        for (std::size_t i = 0; i < s.values.size(); ++i) l1 += std::abs(s.values[i] - proto.values[i]);
        return 1.0 - l1 / static_cast<double>(kGlyphCells);
    }
};

inline double fnn_similarity(const FuzzyFeature& s, const FuzzyFeature& proto) noexcept {
    return MeanAbsoluteAgreement{}(s, proto);
}

/// Fuzzified input against every learned pattern, defuzzified by argmax.
template <typename Similarity = MeanAbsoluteAgreement>
RankedResult classify_fnn(const FuzzyFeature& s, std::span<const Prototype> protos, Similarity similarity = {}) {
    detail::require_prototypes(protos);
    std::size_t best = 0;
    double best_s = -std::numeric_limits<double>::infinity();
    double second_s = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < protos.size(); ++j) {
        const double v = similarity(s, protos[j].fuzzy);
        if (v > best_s) {
            second_s = best_s;
            best_s = v;
            best = j;
        } else if (v > second_s) {
            second_s = v;
        }
    }
    if (protos.size() == 1) second_s = 0.0;
    return detail::make_result(protos[best], best, best_s, second_s);
}

} // namespace hocr
