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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <string>

#include "hocr/cli.hpp"
#include "test_support.hpp"

namespace {

using hocr::testing::TempDir;

std::string slurp(const std::filesystem::path& p) {
    const auto bytes = hocr::read_file_bytes(p);
    return {bytes.begin(), bytes.end()};
}

struct Trained {
    TempDir dir;
    std::filesystem::path store = dir.path() / "store.txt";
    Trained() {
        std::ostringstream out;
        std::ostringstream err;
        if (hocr::cmd_train(hocr::testing::fixture_dir(), store, {}, out, err) != hocr::kExitOk) {
            throw std::runtime_error("training failed: " + err.str());
        }
    }
};

hocr::GrayImage sans_code(const std::string& digits) {
    std::vector<hocr::GrayImage> glyphs;
    for (char c : digits) {
        const hocr::TrainingKey key{"sans", 12, {hocr::Script::Arabic, c - '0'}};
        glyphs.push_back(hocr::load_image(hocr::testing::fixture_dir() / (hocr::glyph_file_stem(key) + ".pgm")));
    }
    return hocr::compose_line(glyphs);
}

TEST(Cli, ParseRegion) {
    const auto r = hocr::parse_region("3,4,50,20");
    EXPECT_EQ(r.x, 3);
    EXPECT_EQ(r.y, 4);
    EXPECT_EQ(r.w, 50);
    EXPECT_EQ(r.h, 20);
    EXPECT_EQ(hocr::parse_region("-2,0,1,1").x, -2);
    for (const char* bad : {"", "1,2,3", "1,2,3,4,5", "a,b,c,d", "1,2,0,4", "1,2,3,4 ", "1;2;3;4"}) {
        EXPECT_THROW(hocr::parse_region(bad), hocr::ConfigError) << bad;
    }
}

TEST(Cli, TrainIsByteReproducible) {
    Trained a;
    Trained b;
    EXPECT_EQ(slurp(a.store), slurp(b.store));
    EXPECT_EQ(hocr::load_store(a.store).size(), 80u);
}

TEST(Cli, TrainReportsMissingGlyphs) {
    TempDir empty;
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(hocr::cmd_train(empty.path(), empty.path() / "s.txt", {}, out, err), hocr::kExitIo);
    EXPECT_NE(err.str().find("error:"), std::string::npos);
    EXPECT_FALSE(std::filesystem::exists(empty.path() / "s.txt"));
}

TEST(Cli, RecognizeCleanCode) {
    Trained t;
    hocr::save_pgm(sans_code("40213"), t.dir.path() / "code.pgm");
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(hocr::cmd_recognize(t.store, t.dir.path() / "code.pgm", std::nullopt, std::nullopt, {}, out, err),
              hocr::kExitOk)
        << err.str();
    EXPECT_NE(out.str().find("text: 40213\n"), std::string::npos) << out.str();
    EXPECT_NE(out.str().find("char 4: accepted two-way-agreement"), std::string::npos) << out.str();
}

TEST(Cli, RecognizeAgainstCodebook) {
    Trained t;
    hocr::save_pgm(sans_code("11564"), t.dir.path() / "code.pgm");
    std::ofstream(t.dir.path() / "codes.txt") << "11564\n90210\n";
    std::ofstream(t.dir.path() / "other.txt") << "90210\n";
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(hocr::cmd_recognize(t.store, t.dir.path() / "code.pgm", std::nullopt, t.dir.path() / "codes.txt", {},
                                  out, err),
              hocr::kExitOk);
    EXPECT_NE(out.str().find("codebook: valid\n"), std::string::npos);
    std::ostringstream out2;
    EXPECT_EQ(hocr::cmd_recognize(t.store, t.dir.path() / "code.pgm", std::nullopt, t.dir.path() / "other.txt", {},
                                  out2, err),
              hocr::kExitIncomplete);
    EXPECT_NE(out2.str().find("codebook: invalid\n"), std::string::npos);
}

TEST(Cli, ErrorsMapToExitCodes) {
    Trained t;
    hocr::save_pgm(sans_code("7"), t.dir.path() / "code.pgm");
    std::ostringstream out;
    std::ostringstream err;
    EXPECT_EQ(hocr::cmd_recognize(t.store, t.dir.path() / "absent.pgm", std::nullopt, std::nullopt, {}, out, err),
              hocr::kExitIo);
    EXPECT_EQ(hocr::cmd_recognize(t.dir.path() / "absent.txt", t.dir.path() / "code.pgm", std::nullopt,
                                  std::nullopt, {}, out, err),
              hocr::kExitIo);
    hocr::PipelineConfig bad;
    bad.maxnet.epsilon = 0.5;
    EXPECT_EQ(hocr::cmd_recognize(t.store, t.dir.path() / "code.pgm", std::nullopt, std::nullopt, bad, out, err),
              hocr::kExitUsage);
    std::ofstream(t.dir.path() / "garbage.pgm") << "GIF89a";
    EXPECT_EQ(hocr::cmd_recognize(t.store, t.dir.path() / "garbage.pgm", std::nullopt, std::nullopt, {}, out, err),
              hocr::kExitIo);
    hocr::save_pgm(hocr::GrayImage(30, 30, 255), t.dir.path() / "blank.pgm");
    EXPECT_EQ(hocr::cmd_recognize(t.store, t.dir.path() / "blank.pgm", std::nullopt, std::nullopt, {}, out, err),
              hocr::kExitIo);
}

TEST(Cli, GenerateThenEvaluate) {
    Trained t;
    hocr::DegradationSpec spec;
    spec.codes_per_scale = 4;
    spec.scale_percents = {100, 200};
    std::ostringstream out;
    std::ostringstream err;
    const auto data = t.dir.path() / "data";
    ASSERT_EQ(hocr::cmd_gen_dataset(hocr::testing::fixture_dir(), data, spec, out, err), hocr::kExitOk) << err.str();
    EXPECT_NE(out.str().find("wrote 8 code images"), std::string::npos);
    ASSERT_EQ(hocr::cmd_evaluate(t.store, data, data / "report.tsv", {}, out, err), hocr::kExitOk) << err.str();
    const auto report = slurp(data / "report.tsv");
    EXPECT_EQ(report.substr(0, report.find('\n')), hocr::kReportHeader);
    EXPECT_NE(report.find("all\thybrid\t40\t"), std::string::npos) << report;

    spec.skew_degrees = 3.0;
    EXPECT_EQ(hocr::cmd_gen_dataset(hocr::testing::fixture_dir(), data, spec, out, err), hocr::kExitUsage);
    EXPECT_EQ(hocr::cmd_evaluate(t.store, t.dir.path() / "nodata", data / "r.tsv", {}, out, err), hocr::kExitIo);
}

} // namespace
