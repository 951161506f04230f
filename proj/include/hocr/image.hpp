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

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hocr/error.hpp"

namespace hocr {

/// Row-major raster. Pixel (x, y) lives at y * width + x. `Tag` keeps
/// grayscale and binary rasters from being mixed up.
template <typename T, typename Tag>
class Raster {
public:
    using value_type = T;

    Raster() = default;

    Raster(int width, int height, T fill = T{})
        : width_(width), height_(height) {
        if (width <= 0 || height <= 0) {
            throw DimensionError("raster dimensions must be positive, got " +
                                 std::to_string(width) + "x" + std::to_string(height));
        }
        data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
    }

    Raster(int width, int height, std::vector<T> data)
        : width_(width), height_(height), data_(std::move(data)) {
        if (width <= 0 || height <= 0) {
            throw DimensionError("raster dimensions must be positive, got " +
                                 std::to_string(width) + "x" + std::to_string(height));
        }
        if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
            throw DimensionError("raster payload has " + std::to_string(data_.size()) +
                                 " values, expected " + std::to_string(width * height));
        }
    }

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return data_.empty(); }
    std::size_t size() const noexcept { return data_.size(); }

    T& at(int x, int y) { return data_[index(x, y)]; }
    const T& at(int x, int y) const { return data_[index(x, y)]; }

    bool contains(int x, int y) const noexcept {
        return x >= 0 && y >= 0 && x < width_ && y < height_;
    }

    std::span<T> pixels() noexcept { return data_; }
    std::span<const T> pixels() const noexcept { return data_; }

    std::span<const T> row(int y) const {
        return std::span<const T>(data_).subspan(index(0, y), static_cast<std::size_t>(width_));
    }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<T> data_;
};

struct GrayTag {};
struct BinaryTag {};

/// 8-bit grayscale, 0 = black ink, 255 = white paper.
using GrayImage = Raster<std::uint8_t, GrayTag>;

/// 1 = foreground (ink), 0 = background.
using BinaryImage = Raster<std::uint8_t, BinaryTag>;

struct Region {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    int right() const noexcept { return x + w; }
    int bottom() const noexcept { return y + h; }
    bool empty() const noexcept { return w <= 0 || h <= 0; }

    friend bool operator==(const Region&, const Region&) = default;
};

/// Intersection of `r` with the image rectangle; may be empty.
inline Region clip(const Region& r, int width, int height) noexcept {
    const int x0 = std::max(r.x, 0);
    const int y0 = std::max(r.y, 0);
    const int x1 = std::min(r.right(), width);
    const int y1 = std::min(r.bottom(), height);
    return Region{x0, y0, std::max(0, x1 - x0), std::max(0, y1 - y0)};
}

inline std::size_t ink_count(const BinaryImage& img) noexcept {
    std::size_t n = 0;
    for (auto v : img.pixels()) n += v != 0;
    return n;
}

} // namespace hocr
