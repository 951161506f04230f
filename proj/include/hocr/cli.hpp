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

// Command implementations behind the `hocr` tool. Each command writes to the
// given streams and returns a process exit status:
//   0 success, 1 recognition incomplete or code invalid, 2 usage error,
//   3 I/O or format error.

#pragma once

#include <charconv>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <system_error>

#include "hocr/error.hpp"
#include "hocr/evaluate.hpp"
#include "hocr/imageio.hpp"
#include "hocr/pipeline.hpp"
#include "hocr/store.hpp"
#include "hocr/synth.hpp"

namespace hocr {

enum ExitStatus : int { kExitOk = 0, kExitIncomplete = 1, kExitUsage = 2, kExitIo = 3 };

/// Parses `x,y,w,h`; throws ConfigError on anything else.
inline Region parse_region(std::string_view text) {
    int v[4] = {};
    const char* p = text.data();
    const char* end = text.data() + text.size();
    for (int k = 0; k < 4; ++k) {
        const auto [ptr, ec] = std::from_chars(p, end, v[k]);
        if (ec != std::errc{}) throw ConfigError("region '" + std::string(text) + "' is not x,y,w,h");
        p = ptr;
        if (k < 3) {
            if (p == end || *p != ',') throw ConfigError("region '" + std::string(text) + "' is not x,y,w,h");
            ++p;
        }
    }
    if (p != end) throw ConfigError("region '" + std::string(text) + "' is not x,y,w,h");
    if (v[2] <= 0 || v[3] <= 0) throw ConfigError("region width and height must be positive");
    return Region{v[0], v[1], v[2], v[3]};
}

/// Runs `body`, mapping library errors onto exit statuses with a message on `err`.
template <typename Body>
int run_command(std::ostream& err, Body&& body) {
    try {
        return std::forward<Body>(body)();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

inline int cmd_train(const std::filesystem::path& glyph_dir, const std::filesystem::path& out_path,
                     const PipelineConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        validate(cfg);
        const auto store = build_prototypes(load_training_set(glyph_dir, cfg.preprocess), cfg.fuzzy);
        save_store(store, out_path);
        out << "trained " << store.size() << " prototypes (" << store.typesets().size() << " typesets) -> "
            << out_path.string() << '\n';
        return kExitOk;
    });
}

inline int cmd_recognize(const std::filesystem::path& store_path, const std::filesystem::path& image_path,
                         std::optional<Region> region, const std::optional<std::filesystem::path>& codebook_path,
                         const PipelineConfig& cfg, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        validate(cfg);
        const auto store = load_store(store_path);
        std::optional<Codebook> codebook;
        if (codebook_path) codebook = load_codebook(*codebook_path);
        const auto result = recognize_code(load_image(image_path), store, region, cfg);

        out << "text: " << result.text << '\n';
        out << "script: " << script_text(result) << '\n';
        for (std::size_t i = 0; i < result.decisions.size(); ++i) {
            const auto& d = result.decisions[i];
            const auto& b = result.bounds[i];
            out << "char " << i << ": " << to_string(d.status) << ' ' << to_string(d.stage) << ' '
                << (d.label ? to_string(*d.label) : std::string("-")) << " hamming=" << to_string(d.hamming.label)
                << " euclidean=" << to_string(d.euclidean.label)
                << " fnn=" << (d.fnn ? to_string(d.fnn->label) : std::string("-")) << " box=" << b.x << ',' << b.y
                << ',' << b.w << ',' << b.h << '\n';
        }

        bool ok = result.all_accepted;
        if (codebook) {
            if (!result.all_accepted) {
                out << "codebook: unresolved\n";
            } else {
                const bool valid = validate_code(result.text, *codebook);
                out << "codebook: " << (valid ? "valid" : "invalid") << '\n';
                ok = valid;
            }
        }
        return ok ? kExitOk : kExitIncomplete;
    });
}

inline int cmd_gen_dataset(const std::filesystem::path& glyph_dir, const std::filesystem::path& out_dir,
                           const DegradationSpec& spec, std::ostream& out, std::ostream& err) {
    return run_command(err, [&] {
        validate(spec);
        // The same completeness check as training, so a broken grid fails identically.
        const auto store = build_prototypes(load_training_set(glyph_dir));
        const auto bank = load_glyph_bank(glyph_dir, store.typesets());
        const auto manifest = generate_dataset(bank, out_dir, spec);
        out << "wrote " << manifest.size() << " code images in " << spec.scale_percents.size()
            << " resolution(s) to " << out_dir.string() << '\n';
        return kExitOk;
    });
}

inline int cmd_evaluate(const std::filesystem::path& store_path, const std::filesystem::path& dataset_dir,
                        const std::filesystem::path& report_path, const PipelineConfig& cfg, std::ostream& out,
                        std::ostream& err) {
    return run_command(err, [&] {
        const auto store = load_store(store_path);
        const auto report = evaluate_dataset(store, dataset_dir, cfg);
        std::ofstream file(report_path, std::ios::binary | std::ios::trunc);
        if (!file) throw IoError("cannot write report '" + report_path.string() + "'");
        file << report_tsv(report);
        if (!file) throw IoError("write failed for report '" + report_path.string() + "'");
        out << report_summary(report);
        out << "report: " << report_path.string() << '\n';
        return kExitOk;
    });
}

} // namespace hocr
