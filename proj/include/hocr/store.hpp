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

// Prototype store and its line-oriented text format:
//
//   HYBRID-OCR-PROTOS 1
//   count <M>
//   proto <typeset> <script> <digit>      -+
//   binary <500 x 0/1>                      |
//   zoning <25 decimals>                    |  repeated M times
//   fuzzy                                   |
//   <25 lines of 20 decimals>              -+
//
// Decimals carry six fractional digits.

#pragma once

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hocr/classifiers.hpp"
#include "hocr/error.hpp"

namespace hocr {

inline constexpr std::string_view kStoreMagic = "HYBRID-OCR-PROTOS";
inline constexpr int kStoreVersion = 1;

/// Immutable, ordered prototype collection. Order is the tie-break authority
/// of every classifier and the serialization order.
class PrototypeStore {
public:
    PrototypeStore() = default;

    explicit PrototypeStore(std::vector<Prototype> prototypes) : prototypes_(std::move(prototypes)) {
        std::set<std::pair<std::string, ClassLabel>> seen;
        for (const auto& p : prototypes_) {
            if (p.typeset.empty() ||
                std::any_of(p.typeset.begin(), p.typeset.end(), [](unsigned char ch) { return std::isspace(ch); })) {
                throw ConfigError("typeset name '" + p.typeset + "' must be a non-empty token");
            }
            if (!seen.insert({p.typeset, p.label}).second) {
                throw ConfigError("duplicate prototype " + p.typeset + " " + to_string(p.label));
            }
            if (p.zoning.values.size() != static_cast<std::size_t>(kZoningFeatures)) {
                throw DimensionError("prototype " + p.typeset + " " + to_string(p.label) + " has " +
                                     std::to_string(p.zoning.values.size()) + " zoning values");
            }
        }
    }

    int version() const noexcept { return kStoreVersion; }
    std::span<const Prototype> prototypes() const noexcept { return prototypes_; }
    std::size_t size() const noexcept { return prototypes_.size(); }
    bool empty() const noexcept { return prototypes_.empty(); }

    /// Typeset names in order of first appearance.
    std::vector<std::string> typesets() const {
        std::vector<std::string> names;
        for (const auto& p : prototypes_) {
            if (std::find(names.begin(), names.end(), p.typeset) == names.end()) names.push_back(p.typeset);
        }
        return names;
    }

    friend bool operator==(const PrototypeStore&, const PrototypeStore&) = default;

private:
    std::vector<Prototype> prototypes_;
};

namespace detail {

inline void put_decimal(std::string& out, double v) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.6f", v);
    out.append(buf, static_cast<std::size_t>(n));
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

class StoreParser {
public:
    explicit StoreParser(std::istream& in) : in_(in) {}

    std::vector<std::string_view> next(const char* what) {
        if (!std::getline(in_, line_)) {
            throw CorruptStoreError("store truncated at line " + std::to_string(line_no_ + 1) + ": expected " + what);
        }
        ++line_no_;
        return split_fields(line_);
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw CorruptStoreError("store line " + std::to_string(line_no_) + ": " + msg);
    }

    [[noreturn]] void range_fail(const std::string& msg) const {
        throw StoreRangeError("store line " + std::to_string(line_no_) + ": " + msg);
    }

    double unit_decimal(std::string_view token) const {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
        if (ec != std::errc{} || ptr != token.data() + token.size()) {
            fail("malformed decimal '" + std::string(token) + "'");
        }
        if (!std::isfinite(v)) range_fail("non-finite value '" + std::string(token) + "'");
        if (v < 0.0 || v > 1.0) range_fail("value '" + std::string(token) + "' outside [0, 1]");
        return v;
    }

    bool at_end() {
        std::string rest;
        while (std::getline(in_, rest)) {
            if (!split_fields(rest).empty()) return false;
        }
        return true;
    }

private:
    std::istream& in_;
    std::string line_;
    int line_no_ = 0;
};

} // namespace detail

inline std::string serialize_store(const PrototypeStore& store) {
    std::string out;
    out += std::string(kStoreMagic) + " " + std::to_string(kStoreVersion) + "\n";
    out += "count " + std::to_string(store.size()) + "\n";
    for (const auto& p : store.prototypes()) {
        out += "proto " + p.typeset + " " + std::string(to_string(p.label.script)) + " " +
               std::to_string(p.label.digit) + "\n";
        out += "binary";
        for (auto b : p.binary.values) {
            out += ' ';
            out += b ? '1' : '0';
        }
        out += "\nzoning";
        for (double v : p.zoning.values) {
            out += ' ';
            detail::put_decimal(out, v);
        }
        out += "\nfuzzy\n";
        for (int r = 0; r < kGlyphRows; ++r) {
            for (int c = 0; c < kGlyphCols; ++c) {
                if (c) out += ' ';
                detail::put_decimal(out, p.fuzzy.values[static_cast<std::size_t>(r * kGlyphCols + c)]);
            }
            out += '\n';
        }
    }
    return out;
}

inline PrototypeStore parse_store(std::istream& in) {
    detail::StoreParser parser(in);

    auto header = parser.next("header");
    if (header.size() != 2 || header[0] != kStoreMagic) parser.fail("missing HYBRID-OCR-PROTOS header");
    if (header[1] != std::to_string(kStoreVersion)) {
        throw StoreVersionError("unsupported store version '" + std::string(header[1]) + "' (expected " +
                                std::to_string(kStoreVersion) + ")");
    }

    auto count_line = parser.next("count");
    std::size_t count = 0;
    if (count_line.size() != 2 || count_line[0] != "count") parser.fail("expected 'count <M>'");
    {
        const auto tok = count_line[1];
        const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), count);
        if (ec != std::errc{} || ptr != tok.data() + tok.size()) parser.fail("malformed count");
    }

    std::vector<Prototype> protos;
    protos.reserve(std::min<std::size_t>(count, 4096));
    for (std::size_t k = 0; k < count; ++k) {
        Prototype p;
        auto head = parser.next("proto record");
        if (head.size() != 4 || head[0] != "proto") parser.fail("expected 'proto <typeset> <script> <digit>'");
        p.typeset = std::string(head[1]);
        const auto script = parse_script(head[2]);
        if (!script) parser.fail("unknown script '" + std::string(head[2]) + "'");
        if (head[3].size() != 1 || head[3][0] < '0' || head[3][0] > '9') {
            parser.fail("digit must be 0-9, got '" + std::string(head[3]) + "'");
        }
        p.label = ClassLabel{*script, head[3][0] - '0'};

        auto bin = parser.next("binary line");
        if (bin.empty() || bin[0] != "binary") parser.fail("expected 'binary' line");
        if (bin.size() != 1 + static_cast<std::size_t>(kGlyphCells)) {
            parser.fail("binary line has " + std::to_string(bin.size() - 1) + " values, expected 500");
        }
        for (std::size_t i = 0; i < static_cast<std::size_t>(kGlyphCells); ++i) {
            if (bin[i + 1] == "0") {
                p.binary.values[i] = 0;
            } else if (bin[i + 1] == "1") {
                p.binary.values[i] = 1;
            } else {
                parser.range_fail("binary value '" + std::string(bin[i + 1]) + "' is not 0 or 1");
            }
        }

        auto zon = parser.next("zoning line");
        if (zon.empty() || zon[0] != "zoning") parser.fail("expected 'zoning' line");
        if (zon.size() != 1 + static_cast<std::size_t>(kZoningFeatures)) {
            parser.fail("zoning line has " + std::to_string(zon.size() - 1) + " values, expected 25");
        }
        for (std::size_t i = 1; i < zon.size(); ++i) p.zoning.values.push_back(parser.unit_decimal(zon[i]));

        auto fuz = parser.next("fuzzy line");
        if (fuz.size() != 1 || fuz[0] != "fuzzy") parser.fail("expected 'fuzzy' line");
        for (int r = 0; r < kGlyphRows; ++r) {
            auto row = parser.next("fuzzy row");
            if (row.size() != static_cast<std::size_t>(kGlyphCols)) {
                parser.fail("fuzzy row has " + std::to_string(row.size()) + " values, expected 20");
            }
            for (int c = 0; c < kGlyphCols; ++c) {
                p.fuzzy.values[static_cast<std::size_t>(r * kGlyphCols + c)] =
                    parser.unit_decimal(row[static_cast<std::size_t>(c)]);
            }
        }
        protos.push_back(std::move(p));
    }
    if (!parser.at_end()) parser.fail("trailing content after " + std::to_string(count) + " prototypes");
    try {
        return PrototypeStore(std::move(protos));
    } catch (const ConfigError& e) {
        throw CorruptStoreError(e.what());
    }
}

inline PrototypeStore parse_store(std::string_view text) {
    std::istringstream in{std::string(text)};
    return parse_store(in);
}

inline void save_store(const PrototypeStore& store, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    const auto text = serialize_store(store);
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

inline PrototypeStore load_store(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    return parse_store(in);
}

} // namespace hocr
