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

// Page preprocessing: mean-threshold binarization, postal-code band
// localization, connected-component segmentation and 25x20 normalization.

#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hocr/error.hpp"
#include "hocr/image.hpp"

namespace hocr {

inline constexpr int kGlyphRows = 25;
inline constexpr int kGlyphCols = 20;
inline constexpr int kGlyphCells = kGlyphRows * kGlyphCols;

/// One normalized numeral: 25 rows x 20 columns, 1 = ink, never blank.
class Glyph {
public:
    using Bits = std::array<std::uint8_t, kGlyphCells>;

    explicit Glyph(const Bits& bits) : bits_(bits) {
        std::size_t ink = 0;
        for (auto b : bits_) {
            if (b > 1) throw PreconditionError("glyph cells must be 0 or 1");
            ink += b;
        }
        if (ink == 0) throw PreconditionError("glyph has no foreground cell");
    }

    std::uint8_t at(int row, int col) const noexcept {
        return bits_[static_cast<std::size_t>(row * kGlyphCols + col)];
    }

    const Bits& bits() const noexcept { return bits_; }

    std::size_t ink_count() const noexcept {
        return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
    }

    friend bool operator==(const Glyph&, const Glyph&) = default;

private:
    Bits bits_;
};

enum class Connectivity { Four = 4, Eight = 8 };

/// Segmentation tunables.
struct PreprocessConfig {
    int min_component_area = 4;
    double merge_overlap_fraction = 0.5;
    Connectivity connectivity = Connectivity::Four;
};

/// A segmented character: its box in page coordinates and the ink of its
/// member components cropped to that box.
struct CharacterCrop {
    Region bounds;
    BinaryImage bits;
};

/// Threshold T = floor(mean intensity); p >= T is background, p < T is ink.
inline BinaryImage binarize(const GrayImage& image) {
    std::uint64_t sum = 0;
    for (auto p : image.pixels()) sum += p;
    const auto threshold = static_cast<std::uint32_t>(sum / image.size());
    BinaryImage out(image.width(), image.height());
    auto src = image.pixels();
    auto dst = out.pixels();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] < threshold ? 1 : 0;
    return out;
}

/// With a hint, returns it clipped to the image. Otherwise returns the box of
/// the bottom-most run of inked rows at least `min_band_rows` tall, widened to
/// the ink column extent of that run.
inline Region locate_code_region(const BinaryImage& image, std::optional<Region> hint = std::nullopt,
                                 int min_band_rows = 3) {
    if (hint) {
        const Region clipped = clip(*hint, image.width(), image.height());
        if (clipped.empty()) throw NoContentError("region hint lies outside the image");
        return clipped;
    }
    std::vector<int> profile(static_cast<std::size_t>(image.height()), 0);
    bool any_ink = false;
    for (int y = 0; y < image.height(); ++y) {
        for (auto v : image.row(y)) profile[static_cast<std::size_t>(y)] += v;
        any_ink = any_ink || profile[static_cast<std::size_t>(y)] > 0;
    }
    if (!any_ink) throw NoContentError("image contains no ink");

    std::optional<std::pair<int, int>> band;  // [first, last]
    for (int y = 0; y < image.height();) {
        if (profile[static_cast<std::size_t>(y)] == 0) {
            ++y;
            continue;
        }
        const int first = y;
        while (y < image.height() && profile[static_cast<std::size_t>(y)] > 0) ++y;
        if (y - first >= min_band_rows) band = {first, y - 1};
    }
    if (!band) throw NoContentError("no text band of at least " + std::to_string(min_band_rows) + " rows");

    int left = image.width();
    int right = -1;
    for (int y = band->first; y <= band->second; ++y) {
        for (int x = 0; x < image.width(); ++x) {
            if (image.at(x, y)) {
                left = std::min(left, x);
                right = std::max(right, x);
            }
        }
    }
    return Region{left, band->first, right - left + 1, band->second - band->first + 1};
}

namespace detail {

struct Component {
    Region box;
    std::vector<std::pair<int, int>> cells;  // (x, y) page coordinates
};

inline std::vector<Component> label_components(const BinaryImage& image, const Region& region,
                                                Connectivity connectivity) {
    BinaryImage seen(image.width(), image.height());
    std::vector<Component> components;
    std::vector<std::pair<int, int>> stack;
    static constexpr std::array<std::pair<int, int>, 8> kOffsets{
        {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}};
    const std::size_t neighbours = connectivity == Connectivity::Four ? 4 : 8;

    for (int y = region.y; y < region.bottom(); ++y) {
        for (int x = region.x; x < region.right(); ++x) {
            if (!image.at(x, y) || seen.at(x, y)) continue;
            Component c;
            int x0 = x, x1 = x, y0 = y, y1 = y;
            seen.at(x, y) = 1;
            stack.push_back({x, y});
            while (!stack.empty()) {
                const auto [cx, cy] = stack.back();
                stack.pop_back();
                c.cells.push_back({cx, cy});
                x0 = std::min(x0, cx);
                x1 = std::max(x1, cx);
                y0 = std::min(y0, cy);
                y1 = std::max(y1, cy);
                for (std::size_t k = 0; k < neighbours; ++k) {
                    const int nx = cx + kOffsets[k].first;
                    const int ny = cy + kOffsets[k].second;
                    if (nx < region.x || ny < region.y || nx >= region.right() || ny >= region.bottom()) {
                        continue;
                    }
                    if (image.at(nx, ny) && !seen.at(nx, ny)) {
                        seen.at(nx, ny) = 1;
                        stack.push_back({nx, ny});
                    }
                }
            }
            c.box = Region{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
            components.push_back(std::move(c));
        }
    }
    return components;
}

inline bool columns_overlap(const Region& a, const Region& b, double fraction) noexcept {
    const int overlap = std::min(a.right(), b.right()) - std::max(a.x, b.x);
    if (overlap <= 0) return false;
    return overlap >= fraction * std::min(a.w, b.w);
}

inline Region unite(const Region& a, const Region& b) noexcept {
    const int x0 = std::min(a.x, b.x);
    const int y0 = std::min(a.y, b.y);
    return Region{x0, y0, std::max(a.right(), b.right()) - x0, std::max(a.bottom(), b.bottom()) - y0};
}

} // namespace detail

/// Splits `region` into characters ordered left to right (ties: top edge).
/// Components under `min_component_area` are dropped as noise; components
/// whose column spans overlap by at least `merge_overlap_fraction` of the
/// narrower width are merged into one character.
inline std::vector<CharacterCrop> segment_characters(const BinaryImage& image, const Region& region,
                                                     const PreprocessConfig& cfg = {}) {
    if (region.empty() || clip(region, image.width(), image.height()) != region) {
        throw PreconditionError("segmentation region must lie inside the image");
    }
    auto components = detail::label_components(image, region, cfg.connectivity);
    std::erase_if(components, [&](const detail::Component& c) {
        return c.cells.size() < static_cast<std::size_t>(cfg.min_component_area);
    });
    if (components.empty()) throw NoContentError("no character components survive the noise filter");

    for (bool merged = true; merged;) {
        merged = false;
        for (std::size_t i = 0; i < components.size() && !merged; ++i) {
            for (std::size_t j = i + 1; j < components.size(); ++j) {
                if (detail::columns_overlap(components[i].box, components[j].box,
                                            cfg.merge_overlap_fraction)) {
                    components[i].box = detail::unite(components[i].box, components[j].box);
                    auto& dst = components[i].cells;
                    dst.insert(dst.end(), components[j].cells.begin(), components[j].cells.end());
                    components.erase(components.begin() + static_cast<std::ptrdiff_t>(j));
                    merged = true;
                    break;
                }
            }
        }
    }

    std::sort(components.begin(), components.end(), [](const auto& a, const auto& b) {
        return a.box.x != b.box.x ? a.box.x < b.box.x : a.box.y < b.box.y;
    });

    std::vector<CharacterCrop> crops;
    crops.reserve(components.size());
    for (const auto& c : components) {
        BinaryImage bits(c.box.w, c.box.h);
        for (const auto& [x, y] : c.cells) bits.at(x - c.box.x, y - c.box.y) = 1;
        crops.push_back({c.box, std::move(bits)});
    }
    return crops;
}

/// Tight ink bounding box of a binary image, or nullopt when it is blank.
inline std::optional<Region> ink_bounds(const BinaryImage& image) noexcept {
    int x0 = image.width(), y0 = image.height(), x1 = -1, y1 = -1;
    for (int y = 0; y < image.height(); ++y) {
        for (int x = 0; x < image.width(); ++x) {
            if (image.at(x, y)) {
                x0 = std::min(x0, x);
                x1 = std::max(x1, x);
                y0 = std::min(y0, y);
                y1 = std::max(y1, y);
            }
        }
    }
    if (x1 < 0) return std::nullopt;
    return Region{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

/// Resamples a character crop nearest-neighbour to 25x20: cell (r, c) reads
/// (floor(r*H/25), floor(c*W/20)). Crops from segment_characters are already
/// tight around their ink, so no further trimming happens here.
inline Glyph normalize(const BinaryImage& crop) {
    if (!ink_bounds(crop)) throw PreconditionError("cannot normalize an all-background crop");
    Glyph::Bits bits{};
    for (int r = 0; r < kGlyphRows; ++r) {
        const int sy = r * crop.height() / kGlyphRows;
        for (int c = 0; c < kGlyphCols; ++c) {
            const int sx = c * crop.width() / kGlyphCols;
            bits[static_cast<std::size_t>(r * kGlyphCols + c)] = crop.at(sx, sy) ? 1 : 0;
        }
    }
    return Glyph(bits);
}

inline BinaryImage to_binary_image(const Glyph& glyph) {
    return BinaryImage(kGlyphCols, kGlyphRows, std::vector<std::uint8_t>(glyph.bits().begin(), glyph.bits().end()));
}

} // namespace hocr
