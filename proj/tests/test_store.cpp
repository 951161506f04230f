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

#include <random>
#include <sstream>
#include <string>

#include "hocr/store.hpp"
#include "test_support.hpp"

namespace {

using hocr::testing::TempDir;

std::string replace_first(std::string s, const std::string& from, const std::string& to) {
    const auto at = s.find(from);
    if (at != std::string::npos) s.replace(at, from.size(), to);
    return s;
}

TEST(StoreFormat, HeaderAndLayout) {
    std::mt19937_64 rng(101);
    const auto store = hocr::testing::random_store(rng, 1);
    const auto text = hocr::serialize_store(store);
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "HYBRID-OCR-PROTOS 1");
    std::getline(in, line);
    EXPECT_EQ(line, "count 20");
    std::getline(in, line);
    EXPECT_EQ(line, "proto ts0 arabic 0");
    std::getline(in, line);
    EXPECT_EQ(line.rfind("binary ", 0), 0u);
    EXPECT_EQ(line.size(), std::string("binary").size() + 2 * 500);
    std::getline(in, line);
    EXPECT_EQ(line.rfind("zoning ", 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, "fuzzy");
    std::getline(in, line);
    // 20 decimals with six fractional digits each.
    std::istringstream row(line);
    std::string tok;
    int n = 0;
    while (row >> tok) {
        ++n;
        EXPECT_EQ(tok.size() - tok.find('.') - 1, 6u) << tok;
    }
    EXPECT_EQ(n, 20);
}

TEST(StoreFormat, RoundTripIsIdentity) {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 20; ++trial) {
        const auto store = hocr::testing::random_store(rng);
        EXPECT_EQ(hocr::parse_store(hocr::serialize_store(store)), store);
    }
}

TEST(StoreFormat, RoundTripThroughFiles) {
    TempDir dir;
    std::mt19937_64 rng(107);
    const auto store = hocr::testing::random_store(rng);
    hocr::save_store(store, dir / "s.txt");
    const auto loaded = hocr::load_store(dir / "s.txt");
    EXPECT_EQ(loaded, store);
    EXPECT_EQ(loaded.typesets(), (std::vector<std::string>{"ts0", "ts1", "ts2", "ts3"}));
    EXPECT_EQ(loaded.version(), 1);
}

TEST(StoreFormat, TrainedStoreSerializationIsStable) {
    // Trained values are not on the 1e-6 grid, but one save/load quantizes
    // them and from then on the text is a fixed point.
    const auto text = hocr::serialize_store(hocr::testing::fixture_store());
    EXPECT_EQ(hocr::serialize_store(hocr::parse_store(text)), text);
}

TEST(StoreFormat, CountLargerThanRecordsIsCorrupt) {
    std::mt19937_64 rng(109);
    const auto text = hocr::serialize_store(hocr::testing::random_store(rng));
    EXPECT_THROW(hocr::parse_store(replace_first(text, "count 80", "count 81")), hocr::CorruptStoreError);
}

TEST(StoreFormat, TrailingRecordIsCorrupt) {
    std::mt19937_64 rng(113);
    const auto text = hocr::serialize_store(hocr::testing::random_store(rng));
    EXPECT_THROW(hocr::parse_store(replace_first(text, "count 80", "count 79")), hocr::CorruptStoreError);
}

TEST(StoreFormat, VersionMismatch) {
    std::mt19937_64 rng(127);
    const auto text = hocr::serialize_store(hocr::testing::random_store(rng, 1));
    EXPECT_THROW(hocr::parse_store(replace_first(text, "HYBRID-OCR-PROTOS 1", "HYBRID-OCR-PROTOS 2")),
                 hocr::StoreVersionError);
    EXPECT_THROW(hocr::parse_store(replace_first(text, "HYBRID-OCR-PROTOS", "OTHER")), hocr::CorruptStoreError);
}

TEST(StoreFormat, FuzzyAboveOneIsRangeError) {
    std::mt19937_64 rng(131);
    auto store_protos = std::vector<hocr::Prototype>{hocr::testing::random_prototype(rng, "t", {})};
    store_protos[0].fuzzy.values[0] = 0.5;
    const auto text = hocr::serialize_store(hocr::PrototypeStore(store_protos));
    EXPECT_THROW(hocr::parse_store(replace_first(text, "fuzzy\n0.500000", "fuzzy\n1.000001")),
                 hocr::StoreRangeError);
    EXPECT_THROW(hocr::parse_store(replace_first(text, "fuzzy\n0.500000", "fuzzy\nnan")), hocr::StoreError);
    EXPECT_THROW(hocr::parse_store(replace_first(text, "fuzzy\n0.500000", "fuzzy\ninf")), hocr::StoreError);
}

TEST(StoreFormat, MalformedValuesAreTyped) {
    std::mt19937_64 rng(137);
    const auto text = hocr::serialize_store(hocr::PrototypeStore({hocr::testing::random_prototype(rng, "t", {})}));
    auto bad_bit = text;
    bad_bit[bad_bit.find("binary ") + 7] = '2';
    EXPECT_THROW(hocr::parse_store(bad_bit), hocr::StoreError);
    EXPECT_THROW(hocr::parse_store(replace_first(text, "arabic", "latin")), hocr::CorruptStoreError);
    EXPECT_THROW(hocr::parse_store(replace_first(text, "zoning ", "zoning 0.5 ")), hocr::CorruptStoreError);
    EXPECT_THROW(hocr::parse_store(text.substr(0, text.size() / 2)), hocr::CorruptStoreError);
    EXPECT_THROW(hocr::parse_store(std::string_view{}), hocr::CorruptStoreError);
}

TEST(StoreFormat, DuplicatePrototypeIsCorrupt) {
    std::mt19937_64 rng(139);
    const auto p = hocr::testing::random_prototype(rng, "t", {});
    EXPECT_THROW(hocr::PrototypeStore({p, p}), hocr::ConfigError);
    const auto one = hocr::serialize_store(hocr::PrototypeStore({p}));
    const auto body = one.substr(one.find("proto "));
    EXPECT_THROW(hocr::parse_store(replace_first(one, "count 1", "count 2") + body), hocr::CorruptStoreError);
}

TEST(Store, RejectsBadTypesetNamesAndZoningLength) {
    hocr::Prototype p;
    p.zoning.values.assign(25, 0.0);
    p.typeset = "two words";
    EXPECT_THROW(hocr::PrototypeStore({p}), hocr::ConfigError);
    p.typeset = "";
    EXPECT_THROW(hocr::PrototypeStore({p}), hocr::ConfigError);
    p.typeset = "ok";
    p.zoning.values.resize(24);
    EXPECT_THROW(hocr::PrototypeStore({p}), hocr::DimensionError);
}

TEST(Store, MissingFileIsIoError) {
    EXPECT_THROW(hocr::load_store("/nonexistent-dir/store.txt"), hocr::IoError);
}

} // namespace
