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

// The three per-glyph feature vectors: raw binary pixels, zoning ink
// densities, and the max-membership fuzzy map.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "hocr/error.hpp"
#include "hocr/preprocess.hpp"

namespace hocr {

/// Row-major copy of a glyph's 500 cells.
struct BinaryFeature {
    std::array<std::uint8_t, kGlyphCells> values{};
    friend bool operator==(const BinaryFeature&, const BinaryFeature&) = default;
};

/// Ink density per window, row-major over the window grid.
struct ZoningFeature {
    std::vector<double> values;
    friend bool operator==(const ZoningFeature&, const ZoningFeature&) = default;
};

/// S(i, j) in (0, 1], equal to 1 exactly on ink cells.
struct FuzzyFeature {
    std::array<double, kGlyphCells> values{};
    friend bool operator==(const FuzzyFeature&, const FuzzyFeature&) = default;
};

struct FuzzyParams {
    double beta = 0.3;
};

/// Window grid for zoning. Rows must divide 25 and columns must divide 20.
struct ZoningGrid {
    int rows = 5;
    int cols = 5;

    int window_rows() const noexcept { return kGlyphRows / rows; }
    int window_cols() const noexcept { return kGlyphCols / cols; }
    int size() const noexcept { return rows * cols; }
};

inline constexpr int kZoningFeatures = 25;

inline BinaryFeature binary_features(const Glyph& g) {
    BinaryFeature f;
    f.values = g.bits();
    return f;
}

inline ZoningFeature zoning_features(const Glyph& g, const ZoningGrid& grid = {}) {
    if (grid.rows <= 0 || grid.cols <= 0 || kGlyphRows % grid.rows != 0 || kGlyphCols % grid.cols != 0) {
        throw ConfigError("zoning grid " + std::to_string(grid.rows) + "x" + std::to_string(grid.cols) +
                          " does not partition a 25x20 glyph into equal windows");
    }
    const int wr = grid.window_rows();
    const int wc = grid.window_cols();
    const double area = wr * wc;
    ZoningFeature f;
    f.values.assign(static_cast<std::size_t>(grid.size()), 0.0);
    for (int zr = 0; zr < grid.rows; ++zr) {
        for (int zc = 0; zc < grid.cols; ++zc) {
            int ink = 0;
            for (int r = zr * wr; r < (zr + 1) * wr; ++r) {
                for (int c = zc * wc; c < (zc + 1) * wc; ++c) ink += g.at(r, c);
            }
            f.values[static_cast<std::size_t>(zr * grid.cols + zc)] = ink / area;
        }
    }
    return f;
}

/// Membership weight exp(-beta^2 (m^2 + n^2)) for a (row, column) offset.
inline double fuzzy_weight(int m, int n, const FuzzyParams& p = {}) noexcept {
    return std::exp(-p.beta * p.beta * static_cast<double>(m * m + n * n));
}

namespace detail {

// One pass of the Felzenszwalb-Huttenlocher squared distance transform over
// `n` samples spaced `stride` apart in `data`.
inline void distance_transform_1d(double* data, int n, int stride) {
    constexpr int kMax = kGlyphRows > kGlyphCols ? kGlyphRows : kGlyphCols;
    std::array<double, kMax> f{};
    std::array<double, kMax> d{};
    std::array<int, kMax> v{};
    std::array<double, kMax + 1> z{};
    for (int q = 0; q < n; ++q) f[static_cast<std::size_t>(q)] = data[q * stride];

    int k = 0;
    v[0] = 0;
    z[0] = -std::numeric_limits<double>::infinity();
    z[1] = std::numeric_limits<double>::infinity();
    auto meet = [&](int q, int p) {
        const auto qi = static_cast<std::size_t>(q);
        const auto pi = static_cast<std::size_t>(p);
        return ((f[qi] + q * q) - (f[pi] + p * p)) / (2.0 * (q - p));
    };
    for (int q = 1; q < n; ++q) {
        double s = meet(q, v[static_cast<std::size_t>(k)]);
        while (s <= z[static_cast<std::size_t>(k)]) {
            --k;
            s = meet(q, v[static_cast<std::size_t>(k)]);
        }
        ++k;
        v[static_cast<std::size_t>(k)] = q;
        z[static_cast<std::size_t>(k)] = s;
        z[static_cast<std::size_t>(k + 1)] = std::numeric_limits<double>::infinity();
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[static_cast<std::size_t>(k + 1)] < q) ++k;
        const int p = v[static_cast<std::size_t>(k)];
        d[static_cast<std::size_t>(q)] = (q - p) * (q - p) + f[static_cast<std::size_t>(p)];
    }
    for (int q = 0; q < n; ++q) data[q * stride] = d[static_cast<std::size_t>(q)];
}

} // namespace detail

/// Squared Euclidean distance from every cell to the nearest ink cell.
inline std::array<double, kGlyphCells> squared_distance_to_ink(const Glyph& g) {
    // Large but finite so the envelope arithmetic never produces inf - inf.
    constexpr double kFar = 1e12;
    std::array<double, kGlyphCells> dist{};
    for (int i = 0; i < kGlyphCells; ++i) dist[static_cast<std::size_t>(i)] = g.bits()[static_cast<std::size_t>(i)] ? 0.0 : kFar;
    for (int c = 0; c < kGlyphCols; ++c) detail::distance_transform_1d(dist.data() + c, kGlyphRows, kGlyphCols);
    for (int r = 0; r < kGlyphRows; ++r) detail::distance_transform_1d(dist.data() + r * kGlyphCols, kGlyphCols, 1);
    return dist;
}

/// S(i, j) = max over cells (x, y) of w[i - x, j - y] * f(x, y). For binary f this
/// is exp(-beta^2 * D^2) with D the distance to the nearest ink cell.
inline FuzzyFeature fuzzy_features(const Glyph& g, const FuzzyParams& p = {}) {
    if (!(p.beta > 0.0) || !std::isfinite(p.beta)) {
        throw ConfigError("fuzzy beta must be a positive finite number");
    }
    const auto dist = squared_distance_to_ink(g);
    FuzzyFeature f;
    const double b2 = p.beta * p.beta;
    for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = std::exp(-b2 * dist[i]);
    return f;
}

} // namespace hocr
