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

// Training (prototype construction), the multistage accept/reject decision,
// postal-code assembly and codebook validation.

#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "hocr/classifiers.hpp"
#include "hocr/error.hpp"
#include "hocr/features.hpp"
#include "hocr/image.hpp"
#include "hocr/imageio.hpp"
#include "hocr/preprocess.hpp"
#include "hocr/store.hpp"

namespace hocr {

/// Every tunable of the recognition chain.
struct PipelineConfig {
    FuzzyParams fuzzy;
    MaxnetConfig maxnet;
    PreprocessConfig preprocess;
    /// Agreement on digit value alone (e.g. Arabic 9 with Indian 9) instead of the full class.
    bool digit_level_match = false;
};

inline void validate(const PipelineConfig& cfg) {
    if (!(cfg.fuzzy.beta > 0.0) || !std::isfinite(cfg.fuzzy.beta)) throw ConfigError("beta must be positive");
    if (!(cfg.maxnet.epsilon > 0.0) || !std::isfinite(cfg.maxnet.epsilon)) throw ConfigError("epsilon must be positive");
    if (cfg.maxnet.max_iters <= 0) throw ConfigError("max_iters must be positive");
    if (cfg.preprocess.min_component_area < 1) throw ConfigError("min_component_area must be at least 1");
    if (!(cfg.preprocess.merge_overlap_fraction > 0.0) || cfg.preprocess.merge_overlap_fraction > 1.0) {
        throw ConfigError("merge_overlap_fraction must be in (0, 1]");
    }
}

inline std::string to_config_text(const PipelineConfig& cfg) {
    std::ostringstream out;
    out.precision(17);
    out << "beta=" << cfg.fuzzy.beta << '\n'
        << "epsilon=" << cfg.maxnet.epsilon << '\n'
        << "max_iters=" << cfg.maxnet.max_iters << '\n'
        << "min_component_area=" << cfg.preprocess.min_component_area << '\n'
        << "merge_overlap_fraction=" << cfg.preprocess.merge_overlap_fraction << '\n'
        << "connectivity=" << static_cast<int>(cfg.preprocess.connectivity) << '\n'
        << "digit_level_match=" << (cfg.digit_level_match ? "true" : "false") << '\n';
    return out.str();
}

/// Applies `key=value` lines on top of `base`. Blank lines and '#' comments are skipped.
inline PipelineConfig parse_config(std::string_view text, PipelineConfig base = {}) {
    auto trim = [](std::string_view s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        return s;
    };
    auto as_double = [](std::string_view key, std::string_view v) {
        double out = 0.0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || ptr != v.data() + v.size()) {
            throw ConfigError("config key '" + std::string(key) + "': '" + std::string(v) + "' is not a number");
        }
        return out;
    };
    auto as_int = [](std::string_view key, std::string_view v) {
        int out = 0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || ptr != v.data() + v.size()) {
            throw ConfigError("config key '" + std::string(key) + "': '" + std::string(v) + "' is not an integer");
        }
        return out;
    };

    PipelineConfig cfg = base;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key=value");
        }
        const auto key = trim(line.substr(0, eq));
        const auto value = trim(line.substr(eq + 1));
        if (key == "beta") {
            cfg.fuzzy.beta = as_double(key, value);
        } else if (key == "epsilon") {
            cfg.maxnet.epsilon = as_double(key, value);
        } else if (key == "max_iters") {
            cfg.maxnet.max_iters = as_int(key, value);
        } else if (key == "min_component_area") {
            cfg.preprocess.min_component_area = as_int(key, value);
        } else if (key == "merge_overlap_fraction") {
            cfg.preprocess.merge_overlap_fraction = as_double(key, value);
        } else if (key == "connectivity") {
            const int c = as_int(key, value);
            if (c != 4 && c != 8) throw ConfigError("connectivity must be 4 or 8");
            cfg.preprocess.connectivity = c == 4 ? Connectivity::Four : Connectivity::Eight;
        } else if (key == "digit_level_match") {
            if (value == "true" || value == "1") {
                cfg.digit_level_match = true;
            } else if (value == "false" || value == "0") {
                cfg.digit_level_match = false;
            } else {
                throw ConfigError("digit_level_match must be true or false");
            }
        } else {
            throw ConfigError("unknown config key '" + std::string(key) + "'");
        }
    }
    validate(cfg);
    return cfg;
}

// ---------------------------------------------------------------------------
// Training

inline constexpr std::array<int, 5> kFontSizes{12, 14, 16, 18, 20};
inline constexpr int kBaseFontSize = 12;
inline constexpr std::size_t kTrainingTypesets = 4;

struct TrainingKey {
    std::string typeset;
    int size = kBaseFontSize;
    ClassLabel label;

    friend bool operator==(const TrainingKey&, const TrainingKey&) = default;
    friend auto operator<=>(const TrainingKey& a, const TrainingKey& b) {
        return std::tie(a.typeset, a.size, a.label) <=> std::tie(b.typeset, b.size, b.label);
    }
};

/// File stem used for a training glyph: `<typeset>_<size>_<script>_<digit>`.
inline std::string glyph_file_stem(const TrainingKey& key) {
    return key.typeset + "_" + std::to_string(key.size) + "_" + std::string(to_string(key.label.script)) + "_" +
           std::to_string(key.label.digit);
}

/// Normalized training glyphs keyed by typeset, point size and class.
class TrainingSet {
public:
    void add(TrainingKey key, Glyph glyph) { glyphs_.insert_or_assign(std::move(key), std::move(glyph)); }

    const Glyph* find(const TrainingKey& key) const {
        const auto it = glyphs_.find(key);
        return it == glyphs_.end() ? nullptr : &it->second;
    }

    std::set<std::string> typesets() const {
        std::set<std::string> names;
        for (const auto& [key, glyph] : glyphs_) names.insert(key.typeset);
        return names;
    }

    std::size_t size() const noexcept { return glyphs_.size(); }

    /// Keys of the full grid (every typeset seen x 5 sizes x 20 classes) that have no glyph.
    std::vector<TrainingKey> missing() const {
        std::vector<TrainingKey> out;
        for (const auto& typeset : typesets()) {
            for (int size : kFontSizes) {
                for (Script script : {Script::Arabic, Script::Indian}) {
                    for (int digit = 0; digit < 10; ++digit) {
                        TrainingKey key{typeset, size, ClassLabel{script, digit}};
                        if (!find(key)) out.push_back(std::move(key));
                    }
                }
            }
        }
        return out;
    }

private:
    std::map<TrainingKey, Glyph> glyphs_;
};

/// Normalized glyph from a single-character training image.
inline Glyph glyph_from_image(const GrayImage& image, const PreprocessConfig& cfg = {}) {
    const auto bin = binarize(image);
    const auto crops = segment_characters(bin, Region{0, 0, bin.width(), bin.height()}, cfg);
    if (crops.size() != 1) {
        throw PreconditionError("training image holds " + std::to_string(crops.size()) + " characters, expected 1");
    }
    return normalize(crops.front().bits);
}

/// Parses `<typeset>_<size>_<script>_<digit>`; the typeset may itself contain '_'.
inline std::optional<TrainingKey> parse_glyph_file_stem(std::string_view stem) {
    std::array<std::string_view, 3> tail;
    for (int k = 2; k >= 0; --k) {
        const auto cut = stem.rfind('_');
        if (cut == std::string_view::npos) return std::nullopt;
        tail[static_cast<std::size_t>(k)] = stem.substr(cut + 1);
        stem = stem.substr(0, cut);
    }
    if (stem.empty()) return std::nullopt;
    int size = 0;
    const auto [ptr, ec] = std::from_chars(tail[0].data(), tail[0].data() + tail[0].size(), size);
    if (ec != std::errc{} || ptr != tail[0].data() + tail[0].size()) return std::nullopt;
    const auto script = parse_script(tail[1]);
    if (!script || tail[2].size() != 1 || tail[2][0] < '0' || tail[2][0] > '9') return std::nullopt;
    return TrainingKey{std::string(stem), size, ClassLabel{*script, tail[2][0] - '0'}};
}

/// Loads every `<stem>.pgm` / `<stem>.bmp` training image found in `dir`.
/// Files whose names do not follow the stem convention are ignored.
inline TrainingSet load_training_set(const std::filesystem::path& dir, const PreprocessConfig& cfg = {}) {
    if (!std::filesystem::is_directory(dir)) throw IoError("glyph directory '" + dir.string() + "' not found");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto ext = entry.path().extension();
        if (entry.is_regular_file() && (ext == ".pgm" || ext == ".bmp")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    TrainingSet train;
    for (const auto& path : files) {
        auto key = parse_glyph_file_stem(path.stem().string());
        if (!key || std::find(kFontSizes.begin(), kFontSizes.end(), key->size) == kFontSizes.end()) continue;
        try {
            train.add(std::move(*key), glyph_from_image(load_image(path), cfg));
        } catch (const PreconditionError& e) {
            throw NoContentError("training glyph '" + path.filename().string() + "': " + e.what());
        } catch (const NoContentError& e) {
            throw NoContentError("training glyph '" + path.filename().string() + "': " + e.what());
        }
    }
    return train;
}

/// Per (typeset, class): binary and zoning prototypes from the size-12 glyph,
/// fuzzy prototype as the mean fuzzy map over all five sizes. Output is
/// ordered by (typeset, script, digit).
inline PrototypeStore build_prototypes(const TrainingSet& train, const FuzzyParams& fuzzy = {},
                                       std::size_t expected_typesets = kTrainingTypesets) {
    const auto typesets = train.typesets();
    if (typesets.size() != expected_typesets) {
        throw IncompleteTrainingSetError("training set has " + std::to_string(typesets.size()) +
                                         " typesets, expected " + std::to_string(expected_typesets));
    }
    if (const auto gaps = train.missing(); !gaps.empty()) {
        std::string names;
        for (const auto& key : gaps) names += (names.empty() ? "" : ", ") + glyph_file_stem(key);
        throw IncompleteTrainingSetError("training set is missing " + std::to_string(gaps.size()) +
                                         " glyph(s): " + names);
    }

    std::vector<Prototype> protos;
    for (const auto& typeset : typesets) {
        for (Script script : {Script::Arabic, Script::Indian}) {
            for (int digit = 0; digit < 10; ++digit) {
                const ClassLabel label{script, digit};
                const Glyph& base = *train.find({typeset, kBaseFontSize, label});
                Prototype p;
                p.label = label;
                p.typeset = typeset;
                p.binary = binary_features(base);
                p.zoning = zoning_features(base);
                for (int size : kFontSizes) {
                    const auto f = fuzzy_features(*train.find({typeset, size, label}), fuzzy);
                    for (std::size_t i = 0; i < f.values.size(); ++i) p.fuzzy.values[i] += f.values[i];
                }
                for (auto& v : p.fuzzy.values) v /= static_cast<double>(kFontSizes.size());
                protos.push_back(std::move(p));
            }
        }
    }
    return PrototypeStore(std::move(protos));
}

// ---------------------------------------------------------------------------
// Decision

enum class DecisionStatus { Accepted, Rejected };
enum class DecisionStage { TwoWayAgreement, FnnArbitration };

inline std::string_view to_string(DecisionStatus s) noexcept {
    return s == DecisionStatus::Accepted ? "accepted" : "rejected";
}

inline std::string_view to_string(DecisionStage s) noexcept {
    return s == DecisionStage::TwoWayAgreement ? "two-way-agreement" : "fnn-arbitration";
}

/// Outcome for one glyph with the diagnostics of every classifier that ran.
struct Decision {
    DecisionStatus status = DecisionStatus::Rejected;
    std::optional<ClassLabel> label;  // present iff accepted
    DecisionStage stage = DecisionStage::TwoWayAgreement;
    RankedResult hamming;
    RankedResult euclidean;
    std::optional<RankedResult> fnn;  // present iff the third stage ran

    bool accepted() const noexcept { return status == DecisionStatus::Accepted; }
};

/// How many times each feature kind was extracted.
struct ExtractionCounters {
    std::size_t binary = 0;
    std::size_t zoning = 0;
    std::size_t fuzzy = 0;
};

inline bool labels_match(const ClassLabel& a, const ClassLabel& b, bool digit_level) noexcept {
    return digit_level ? a.digit == b.digit : a == b;
}

/// The accept/reject rule. `run_fnn` is only invoked when the first two
/// classifiers disagree.
template <typename RunFnn>
Decision arbitrate(RankedResult hamming, RankedResult euclidean, RunFnn&& run_fnn, bool digit_level = false) {
    Decision d;
    d.hamming = std::move(hamming);
    d.euclidean = std::move(euclidean);
    if (labels_match(d.hamming.label, d.euclidean.label, digit_level)) {
        d.status = DecisionStatus::Accepted;
        d.stage = DecisionStage::TwoWayAgreement;
        d.label = d.hamming.label;
        return d;
    }
    d.stage = DecisionStage::FnnArbitration;
    d.fnn = std::forward<RunFnn>(run_fnn)();
    if (labels_match(d.fnn->label, d.hamming.label, digit_level) ||
        labels_match(d.fnn->label, d.euclidean.label, digit_level)) {
        d.status = DecisionStatus::Accepted;
        d.label = d.fnn->label;
    } else {
        d.status = DecisionStatus::Rejected;
    }
    return d;
}

inline Decision decide(const Glyph& g, const PrototypeStore& store, const PipelineConfig& cfg = {},
                       ExtractionCounters* counters = nullptr) {
    const auto protos = store.prototypes();
    auto c1 = classify_hamming(binary_features(g), protos, cfg.maxnet);
    auto c2 = classify_euclidean(zoning_features(g), protos);
    if (counters) {
        ++counters->binary;
        ++counters->zoning;
    }
    return arbitrate(
        std::move(c1), std::move(c2),
        [&] {
            if (counters) ++counters->fuzzy;
            return classify_fnn(fuzzy_features(g, cfg.fuzzy), protos);
        },
        cfg.digit_level_match);
}

// ---------------------------------------------------------------------------
// Postal codes

struct PostalCodeResult {
    std::vector<Decision> decisions;
    std::vector<Region> bounds;  // page coordinates, parallel to `decisions`
    std::string text;            // ASCII digit values, '?' for rejects
    bool all_accepted = false;
};

/// UTF-8 rendering in each accepted character's own script (U+0660.. for Indian).
inline std::string script_text(const PostalCodeResult& r) {
    std::string out;
    for (const auto& d : r.decisions) {
        if (!d.accepted()) {
            out += '?';
        } else if (d.label->script == Script::Arabic) {
            out += static_cast<char>('0' + d.label->digit);
        } else {
            out += static_cast<char>(0xD9);
            out += static_cast<char>(0xA0 + d.label->digit);
        }
    }
    return out;
}

/// Runs a code image through the full chain: binarize, locate, segment, normalize, decide.
inline PostalCodeResult recognize_code(const GrayImage& image, const PrototypeStore& store,
                                       std::optional<Region> hint = std::nullopt, const PipelineConfig& cfg = {},
                                       ExtractionCounters* counters = nullptr) {
    const auto bin = binarize(image);
    const auto region = locate_code_region(bin, hint);
    const auto crops = segment_characters(bin, region, cfg.preprocess);
    PostalCodeResult result;
    result.all_accepted = true;
    for (std::size_t i = 0; i < crops.size(); ++i) {
        std::optional<Glyph> glyph;
        try {
            glyph.emplace(normalize(crops[i].bits));
        } catch (const PreconditionError& e) {
            throw NoContentError("character " + std::to_string(i) + ": " + e.what());
        }
        auto d = decide(*glyph, store, cfg, counters);
        result.text += d.accepted() ? static_cast<char>('0' + d.label->digit) : '?';
        result.all_accepted = result.all_accepted && d.accepted();
        result.bounds.push_back(crops[i].bounds);
        result.decisions.push_back(std::move(d));
    }
    return result;
}

/// Maps ASCII digits and Arabic-Indic digits (U+0660..U+0669) to ASCII digit values.
inline std::string normalize_digits(std::string_view digits) {
    std::string out;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const auto ch = static_cast<unsigned char>(digits[i]);
        if (ch >= '0' && ch <= '9') {
            out += static_cast<char>(ch);
        } else if (ch == '?') {
            throw UnresolvedCodeError("postal code '" + std::string(digits) + "' contains rejected characters");
        } else if (ch == 0xD9 && i + 1 < digits.size() && static_cast<unsigned char>(digits[i + 1]) >= 0xA0 &&
                   static_cast<unsigned char>(digits[i + 1]) <= 0xA9) {
            out += static_cast<char>('0' + (static_cast<unsigned char>(digits[i + 1]) - 0xA0));
            ++i;
        } else {
            throw PreconditionError("postal code '" + std::string(digits) + "' contains a non-digit character");
        }
    }
    return out;
}

using Codebook = std::set<std::string>;

inline bool validate_code(std::string_view digits, const Codebook& codebook) {
    return codebook.contains(normalize_digits(digits));
}

/// One code per line; blank lines and '#' comments are skipped.
inline Codebook parse_codebook(std::istream& in) {
    Codebook book;
    std::string line;
    while (std::getline(in, line)) {
        std::string_view s = line;
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
        if (s.empty() || s.front() == '#') continue;
        book.insert(normalize_digits(s));
    }
    return book;
}

inline Codebook load_codebook(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open codebook '" + path.string() + "'");
    return parse_codebook(in);
}

} // namespace hocr
