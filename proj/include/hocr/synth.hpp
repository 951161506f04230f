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

// Synthetic postal-code line images built from the training glyphs, with
// scan-like degradations: rescaling, small skew, a global brightness
// offset and salt noise.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hocr/classifiers.hpp"
#include "hocr/error.hpp"
#include "hocr/image.hpp"
#include "hocr/imageio.hpp"
#include "hocr/pipeline.hpp"

namespace hocr {

struct DegradationSpec {
    std::vector<int> scale_percents{100, 200, 300, 400};
    double skew_degrees = 2.0;          // angles drawn uniformly from [-skew, +skew]
    double salt_noise_fraction = 0.002; // per-pixel flip probability
    int brightness_shift = 20;          // offsets drawn uniformly from [-shift, +shift]
    std::uint64_t seed = 42;
    int codes_per_scale = 60;
    int code_length = 5;
};

inline void validate(const DegradationSpec& spec) {
    if (spec.scale_percents.empty()) throw ConfigError("at least one scale percent is required");
    for (int p : spec.scale_percents) {
        if (p <= 0 || p > 1000) throw ConfigError("scale percent " + std::to_string(p) + " outside (0, 1000]");
    }
    if (!(spec.skew_degrees >= 0.0 && spec.skew_degrees <= 2.0)) throw ConfigError("skew must lie within [0, 2] degrees");
    if (!(spec.salt_noise_fraction >= 0.0 && spec.salt_noise_fraction <= 1.0)) {
        throw ConfigError("salt noise fraction must lie in [0, 1]");
    }
    if (spec.brightness_shift < 0 || spec.brightness_shift > 255) throw ConfigError("brightness shift must lie in [0, 255]");
    if (spec.codes_per_scale <= 0) throw ConfigError("codes per scale must be positive");
    if (spec.code_length <= 0) throw ConfigError("code length must be positive");
}

/// Nearest-neighbour rescale by an integer percentage.
inline GrayImage scale_nearest(const GrayImage& img, int percent) {
    const int w = std::max(1, img.width() * percent / 100);
    const int h = std::max(1, img.height() * percent / 100);
    GrayImage out(w, h);
    for (int y = 0; y < h; ++y) {
        const int sy = static_cast<int>(static_cast<long long>(y) * img.height() / h);
        for (int x = 0; x < w; ++x) {
            const int sx = static_cast<int>(static_cast<long long>(x) * img.width() / w);
            out.at(x, y) = img.at(sx, sy);
        }
    }
    return out;
}

/// Nearest-neighbour rotation about the image centre, same canvas, paper-filled.
inline GrayImage rotate_nearest(const GrayImage& img, double degrees, std::uint8_t fill = 255) {
    if (degrees == 0.0) return img;
    const double a = degrees * std::numbers::pi / 180.0;
    const double c = std::cos(a);
    const double s = std::sin(a);
    const double cx = img.width() / 2.0;
    const double cy = img.height() / 2.0;
    GrayImage out(img.width(), img.height(), fill);
    for (int y = 0; y < img.height(); ++y) {
        for (int x = 0; x < img.width(); ++x) {
            const double dx = x + 0.5 - cx;
            const double dy = y + 0.5 - cy;
            const int sx = static_cast<int>(std::floor(cx + c * dx + s * dy));
            const int sy = static_cast<int>(std::floor(cy - s * dx + c * dy));
            if (img.contains(sx, sy)) out.at(x, y) = img.at(sx, sy);
        }
    }
    return out;
}

inline GrayImage shift_brightness(GrayImage img, int delta) {
    for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(std::clamp(p + delta, 0, 255));
    return img;
}

/// Salt noise: each pixel independently turns paper-white with probability `fraction`.
template <typename Rng>
GrayImage salt_noise(GrayImage img, double fraction, Rng& rng) {
    if (fraction <= 0.0) return img;
    std::bernoulli_distribution flip(fraction);
    for (auto& p : img.pixels()) {
        if (flip(rng)) p = 255;
    }
    return img;
}

/// Places glyph images side by side (top aligned) inside a white margin.
inline GrayImage compose_line(const std::vector<GrayImage>& glyphs, int margin = 6) {
    if (glyphs.empty()) throw PreconditionError("cannot compose an empty code line");
    int width = 2 * margin;
    int height = 0;
    for (const auto& g : glyphs) {
        width += g.width();
        height = std::max(height, g.height());
    }
    GrayImage line(width, height + 2 * margin, 255);
    int x0 = margin;
    for (const auto& g : glyphs) {
        for (int y = 0; y < g.height(); ++y) {
            for (int x = 0; x < g.width(); ++x) line.at(x0 + x, margin + y) = g.at(x, y);
        }
        x0 += g.width();
    }
    return line;
}

struct ManifestEntry {
    std::string filename;  // relative to the dataset root
    Script script = Script::Arabic;
    std::string digits;    // ASCII digit values
    std::string resolution;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

inline constexpr std::string_view kManifestName = "labels.tsv";
inline constexpr std::string_view kManifestHeader = "filename\tscript\tdigits\tresolution";

inline std::string resolution_tag(int percent) { return std::to_string(percent) + "%"; }

/// Size-12 glyph images per (typeset, class) read from a training glyph directory.
struct GlyphBank {
    std::vector<std::string> typesets;
    std::map<std::pair<std::string, ClassLabel>, GrayImage> images;

    const GrayImage& at(const std::string& typeset, const ClassLabel& label) const {
        return images.at({typeset, label});
    }
};

inline GlyphBank load_glyph_bank(const std::filesystem::path& glyph_dir, const std::vector<std::string>& typesets,
                                 int size = kBaseFontSize) {
    GlyphBank bank;
    bank.typesets = typesets;
    std::vector<std::string> missing;
    for (const auto& typeset : typesets) {
        for (Script script : {Script::Arabic, Script::Indian}) {
            for (int digit = 0; digit < 10; ++digit) {
                const TrainingKey key{typeset, size, ClassLabel{script, digit}};
                const auto path = glyph_dir / (glyph_file_stem(key) + ".pgm");
                if (!std::filesystem::exists(path)) {
                    missing.push_back(path.filename().string());
                    continue;
                }
                bank.images.emplace(std::pair{typeset, key.label}, load_image(path));
            }
        }
    }
    if (!missing.empty()) {
        std::string names;
        for (const auto& m : missing) names += (names.empty() ? "" : ", ") + m;
        throw IncompleteTrainingSetError("glyph directory is missing: " + names);
    }
    return bank;
}

/// Renders the degraded corpus into `out_dir/<percent>/code_NNNN.pgm` plus
/// the manifest. Output is a pure function of the bank and the spec.
inline std::vector<ManifestEntry> generate_dataset(const GlyphBank& bank, const std::filesystem::path& out_dir,
                                                   const DegradationSpec& spec) {
    validate(spec);
    if (bank.typesets.empty()) throw ConfigError("glyph bank has no typesets");
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<std::size_t> pick_typeset(0, bank.typesets.size() - 1);
    std::uniform_int_distribution<int> pick_script(0, 1);
    std::uniform_int_distribution<int> pick_digit(0, 9);
    std::uniform_real_distribution<double> pick_angle(-spec.skew_degrees, spec.skew_degrees);
    std::uniform_int_distribution<int> pick_shift(-spec.brightness_shift, spec.brightness_shift);

    std::vector<ManifestEntry> manifest;
    for (int percent : spec.scale_percents) {
        const auto subdir = std::to_string(percent);
        std::filesystem::create_directories(out_dir / subdir);
        for (int i = 0; i < spec.codes_per_scale; ++i) {
            const auto& typeset = bank.typesets[pick_typeset(rng)];
            const Script script = pick_script(rng) == 0 ? Script::Arabic : Script::Indian;
            std::vector<GrayImage> glyphs;
            std::string digits;
            for (int k = 0; k < spec.code_length; ++k) {
                const int digit = pick_digit(rng);
                digits += static_cast<char>('0' + digit);
                glyphs.push_back(bank.at(typeset, ClassLabel{script, digit}));
            }
            const double angle = spec.skew_degrees > 0.0 ? pick_angle(rng) : 0.0;
            const int shift = spec.brightness_shift > 0 ? pick_shift(rng) : 0;

            GrayImage img = scale_nearest(compose_line(glyphs), percent);
            img = rotate_nearest(img, angle);
            img = shift_brightness(std::move(img), shift);
            img = salt_noise(std::move(img), spec.salt_noise_fraction, rng);

            char name[32];
            std::snprintf(name, sizeof name, "code_%04d.pgm", i);
            const auto rel = subdir + "/" + name;
            save_pgm(img, out_dir / rel);
            manifest.push_back({rel, script, digits, resolution_tag(percent)});
        }
    }

    std::ofstream out(out_dir / kManifestName, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write manifest in '" + out_dir.string() + "'");
    out << kManifestHeader << '\n';
    for (const auto& e : manifest) {
        out << e.filename << '\t' << to_string(e.script) << '\t' << e.digits << '\t' << e.resolution << '\n';
    }
    if (!out) throw IoError("write failed for manifest in '" + out_dir.string() + "'");
    return manifest;
}

inline std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dataset_dir) {
    const auto path = dataset_dir / kManifestName;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("missing manifest '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line) || line != kManifestHeader) {
        throw FormatError("manifest '" + path.string() + "' lacks the header row");
    }
    std::vector<ManifestEntry> entries;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (std::size_t tab; (tab = line.find('\t', start)) != std::string::npos; start = tab + 1) {
            cols.push_back(line.substr(start, tab - start));
        }
        cols.push_back(line.substr(start));
        const auto script = cols.size() == 4 ? parse_script(cols[1]) : std::nullopt;
        if (!script || cols[2].empty() ||
            !std::all_of(cols[2].begin(), cols[2].end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw FormatError("manifest line " + std::to_string(line_no) + " is malformed");
        }
        entries.push_back({cols[0], *script, cols[2], cols[3]});
    }
    return entries;
}

} // namespace hocr
