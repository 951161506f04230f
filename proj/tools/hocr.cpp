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

// hocr: train prototypes, recognize postal-code images, generate degraded
// datasets and evaluate recognition rates.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hocr/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Hybrid printed-digit recognizer for postal codes"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::string> config_path;
    std::optional<double> beta;
    std::optional<double> epsilon;
    std::optional<int> max_iters;
    bool digit_level = false;
    app.add_option("--config", config_path, "key=value configuration file");
    app.add_option("--beta", beta, "fuzzy membership decay (default 0.3)");
    app.add_option("--epsilon", epsilon, "maxnet lateral inhibition (default 0.01)");
    app.add_option("--max-iters", max_iters, "maxnet iteration cap (default 10000)");
    app.add_flag("--digit-level-match", digit_level, "agreement on digit value only, ignoring script");

    std::string glyph_dir;
    std::string store_path;
    std::string out_path;
    std::string image_path;
    std::string dataset_dir;
    std::optional<std::string> region_text;
    std::optional<std::string> codebook_path;
    std::optional<std::string> report_path;
    hocr::DegradationSpec spec;

    auto* train = app.add_subcommand("train", "build the prototype store from a glyph directory");
    train->add_option("glyph-dir", glyph_dir, "directory of <typeset>_<size>_<script>_<digit>.pgm")->required();
    train->add_option("out", out_path, "store file to write")->required();

    auto* recognize = app.add_subcommand("recognize", "recognize the postal code in an image");
    recognize->add_option("store", store_path, "prototype store")->required();
    recognize->add_option("image", image_path, "PGM or BMP image")->required();
    recognize->add_option("--region", region_text, "code region x,y,w,h (skips localization)");
    recognize->add_option("--codebook", codebook_path, "file of valid codes, one per line");

    auto* gen = app.add_subcommand("gen-dataset", "render a degraded, labelled code-image corpus");
    gen->add_option("glyph-dir", glyph_dir, "training glyph directory")->required();
    gen->add_option("out-dir", out_path, "output directory")->required();
    gen->add_option("--seed", spec.seed, "random seed")->capture_default_str();
    gen->add_option("--scales", spec.scale_percents, "scale percents")->delimiter(',')->capture_default_str();
    gen->add_option("--skew", spec.skew_degrees, "max skew in degrees")->capture_default_str();
    gen->add_option("--noise", spec.salt_noise_fraction, "salt noise probability")->capture_default_str();
    gen->add_option("--brightness", spec.brightness_shift, "max brightness offset")->capture_default_str();
    gen->add_option("--codes", spec.codes_per_scale, "codes per scale")->capture_default_str();

    auto* evaluate = app.add_subcommand("evaluate", "score a labelled dataset");
    evaluate->add_option("store", store_path, "prototype store")->required();
    evaluate->add_option("dataset", dataset_dir, "directory holding labels.tsv")->required();
    evaluate->add_option("--out", report_path, "report TSV (default <dataset>/report.tsv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? hocr::kExitOk : hocr::kExitUsage;
    }

    hocr::PipelineConfig cfg;
    const int cfg_status = hocr::run_command(std::cerr, [&] {
        if (config_path) {
            std::ifstream in(*config_path);
            if (!in) throw hocr::IoError("cannot open config '" + *config_path + "'");
            const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
            cfg = hocr::parse_config(text, cfg);
        }
        if (beta) cfg.fuzzy.beta = *beta;
        if (epsilon) cfg.maxnet.epsilon = *epsilon;
        if (max_iters) cfg.maxnet.max_iters = *max_iters;
        if (digit_level) cfg.digit_level_match = true;
        hocr::validate(cfg);
        return hocr::kExitOk;
    });
    if (cfg_status != hocr::kExitOk) return cfg_status;

    if (*train) return hocr::cmd_train(glyph_dir, out_path, cfg, std::cout, std::cerr);
    if (*recognize) {
        std::optional<hocr::Region> region;
        if (region_text) {
            const int rc = hocr::run_command(std::cerr, [&] {
                region = hocr::parse_region(*region_text);
                return hocr::kExitOk;
            });
            if (rc != hocr::kExitOk) return rc;
        }
        std::optional<std::filesystem::path> codebook;
        if (codebook_path) codebook = *codebook_path;
        return hocr::cmd_recognize(store_path, image_path, region, codebook, cfg, std::cout, std::cerr);
    }
    if (*gen) return hocr::cmd_gen_dataset(glyph_dir, out_path, spec, std::cout, std::cerr);
    const std::filesystem::path report =
        report_path ? std::filesystem::path(*report_path) : std::filesystem::path(dataset_dir) / "report.tsv";
    return hocr::cmd_evaluate(store_path, dataset_dir, report, cfg, std::cout, std::cerr);
}
