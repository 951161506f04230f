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

// Scores a labelled code-image corpus per resolution for the hybrid decision
// and for each classifier used on its own.

#pragma once

#include <array>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hocr/classifiers.hpp"
#include "hocr/error.hpp"
#include "hocr/imageio.hpp"
#include "hocr/pipeline.hpp"
#include "hocr/store.hpp"
#include "hocr/synth.hpp"

namespace hocr {

enum class Method { Hamming, Euclidean, Fnn, Hybrid };

inline constexpr std::array<Method, 4> kMethods{Method::Hamming, Method::Euclidean, Method::Fnn, Method::Hybrid};

inline std::string_view to_string(Method m) noexcept {
    switch (m) {
    case Method::Hamming: return "hamming";
    case Method::Euclidean: return "euclidean";
    case Method::Fnn: return "fnn";
    default: return "hybrid";
    }
}

/// Character tallies for one method. Solo classifiers never reject.
struct MethodCounts {
    std::size_t recognized = 0;
    std::size_t misclassified = 0;
    std::size_t rejected = 0;

    std::size_t total() const noexcept { return recognized + misclassified + rejected; }

    /// Recognized over characters that were not rejected (0 when all were rejected).
    double rate_excluding_rejects() const noexcept {
        const std::size_t n = recognized + misclassified;
        return n ? 100.0 * static_cast<double>(recognized) / static_cast<double>(n) : 0.0;
    }

    /// Recognized over all characters, rejects counted as failures.
    double rate_counting_rejects() const noexcept {
        const std::size_t n = total();
        return n ? 100.0 * static_cast<double>(recognized) / static_cast<double>(n) : 0.0;
    }

    double reject_rate() const noexcept {
        const std::size_t n = total();
        return n ? 100.0 * static_cast<double>(rejected) / static_cast<double>(n) : 0.0;
    }

    friend bool operator==(const MethodCounts&, const MethodCounts&) = default;
};

struct ResolutionReport {
    std::string resolution;
    std::size_t images = 0;
    std::size_t characters = 0;
    std::size_t segmentation_failures = 0;  // images whose segment count differed from the label
    std::array<MethodCounts, 4> methods{};

    MethodCounts& operator[](Method m) noexcept { return methods[static_cast<std::size_t>(m)]; }
    const MethodCounts& operator[](Method m) const noexcept { return methods[static_cast<std::size_t>(m)]; }
};

struct EvalReport {
    std::vector<ResolutionReport> rows;  // manifest order of first appearance
    ResolutionReport overall{"all"};
};

/// One character as seen by the evaluator; handed to an optional observer.
struct CharacterOutcome {
    const ManifestEntry* entry = nullptr;
    std::size_t position = 0;
    ClassLabel expected;
    std::optional<Decision> decision;      // absent when segmentation failed
    std::optional<RankedResult> fnn_solo;  // absent when segmentation failed
};

using OutcomeObserver = std::function<void(const CharacterOutcome&)>;

namespace detail {

inline void tally(MethodCounts& c, bool correct) { ++(correct ? c.recognized : c.misclassified); }

} // namespace detail

/// Evaluates every manifest image. An image whose segmentation yields a
/// different character count than its label contributes all of its
/// characters as rejected (hybrid) and misclassified (solo classifiers).
inline EvalReport evaluate_dataset(const PrototypeStore& store, const std::filesystem::path& dataset_dir,
                                   const PipelineConfig& cfg = {}, const OutcomeObserver& observe = {}) {
    validate(cfg);
    const auto manifest = read_manifest(dataset_dir);
    const auto protos = store.prototypes();
    EvalReport report;

    auto row_for = [&](const std::string& res) -> ResolutionReport& {
        for (auto& r : report.rows) {
            if (r.resolution == res) return r;
        }
        report.rows.push_back(ResolutionReport{res});
        return report.rows.back();
    };

    for (const auto& entry : manifest) {
        ResolutionReport& row = row_for(entry.resolution);
        ++row.images;
        row.characters += entry.digits.size();
        const auto image = load_image(dataset_dir / entry.filename);

        std::vector<CharacterCrop> crops;
        try {
            const auto bin = binarize(image);
            crops = segment_characters(bin, locate_code_region(bin, std::nullopt), cfg.preprocess);
        } catch (const NoContentError&) {
            crops.clear();
        }

        if (crops.size() != entry.digits.size()) {
            ++row.segmentation_failures;
            for (std::size_t k = 0; k < entry.digits.size(); ++k) {
                row[Method::Hamming].misclassified++;
                row[Method::Euclidean].misclassified++;
                row[Method::Fnn].misclassified++;
                row[Method::Hybrid].rejected++;
                if (observe) observe({&entry, k, ClassLabel{entry.script, entry.digits[k] - '0'}, {}, {}});
            }
            continue;
        }

        for (std::size_t k = 0; k < crops.size(); ++k) {
            const ClassLabel expected{entry.script, entry.digits[k] - '0'};
            const Glyph glyph = normalize(crops[k].bits);
            const Decision d = decide(glyph, store, cfg);
            const RankedResult fnn = d.fnn ? *d.fnn : classify_fnn(fuzzy_features(glyph, cfg.fuzzy), protos);

            auto correct = [&](const ClassLabel& got) { return labels_match(got, expected, cfg.digit_level_match); };
            detail::tally(row[Method::Hamming], correct(d.hamming.label));
            detail::tally(row[Method::Euclidean], correct(d.euclidean.label));
            detail::tally(row[Method::Fnn], correct(fnn.label));
            if (d.accepted()) {
                detail::tally(row[Method::Hybrid], correct(*d.label));
            } else {
                ++row[Method::Hybrid].rejected;
            }
            if (observe) observe({&entry, k, expected, d, fnn});
        }
    }

    for (const auto& r : report.rows) {
        report.overall.images += r.images;
        report.overall.characters += r.characters;
        report.overall.segmentation_failures += r.segmentation_failures;
        for (Method m : kMethods) {
            report.overall[m].recognized += r[m].recognized;
            report.overall[m].misclassified += r[m].misclassified;
            report.overall[m].rejected += r[m].rejected;
        }
    }
    return report;
}

inline constexpr std::string_view kReportHeader =
    "resolution\tmethod\tcharacters\trecognized\tmisclassified\trejected\trate_excluding_rejects\trate_counting_rejects";

inline std::string report_tsv(const EvalReport& report) {
    std::string out(kReportHeader);
    out += '\n';
    auto emit = [&](const ResolutionReport& r) {
        for (Method m : kMethods) {
            const auto& c = r[m];
            char rates[64];
            std::snprintf(rates, sizeof rates, "%.2f\t%.2f", c.rate_excluding_rejects(), c.rate_counting_rejects());
            out += r.resolution + '\t' + std::string(to_string(m)) + '\t' + std::to_string(c.total()) + '\t' +
                   std::to_string(c.recognized) + '\t' + std::to_string(c.misclassified) + '\t' +
                   std::to_string(c.rejected) + '\t' + rates + '\n';
        }
    };
    for (const auto& r : report.rows) emit(r);
    emit(report.overall);
    return out;
}

/// Human-readable table: per resolution, the hybrid outcome and each solo accuracy.
inline std::string report_summary(const EvalReport& report) {
    std::string out;
    char line[256];
    std::snprintf(line, sizeof line, "%-10s %6s %6s | %8s %8s %8s %9s | %8s %8s %8s\n", "resolution", "images",
                  "chars", "hyb-ok", "hyb-err", "hyb-rej", "hyb-rate", "hamming", "euclid", "fnn");
    out += line;
    auto emit = [&](const ResolutionReport& r) {
        const auto& h = r[Method::Hybrid];
        std::snprintf(line, sizeof line, "%-10s %6zu %6zu | %8zu %8zu %8zu %8.2f%% | %7.2f%% %7.2f%% %7.2f%%\n",
                      r.resolution.c_str(), r.images, r.characters, h.recognized, h.misclassified, h.rejected,
                      h.rate_excluding_rejects(), r[Method::Hamming].rate_counting_rejects(),
                      r[Method::Euclidean].rate_counting_rejects(), r[Method::Fnn].rate_counting_rejects());
        out += line;
    };
    for (const auto& r : report.rows) emit(r);
    emit(report.overall);
    if (report.overall.segmentation_failures) {
        out += std::to_string(report.overall.segmentation_failures) +
               " image(s) segmented into the wrong number of characters\n";
    }
    return out;
}

} // namespace hocr
