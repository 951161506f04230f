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

// Minimal raster codecs: PGM (P5 binary, P2 ASCII) and uncompressed BMP
// (8-bit palette or 24-bit) in, PGM P5 out. Density/resolution fields in
// either format are ignored.

#pragma once

#include <cctype>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hocr/error.hpp"
#include "hocr/image.hpp"

namespace hocr {

/// Integer luma rule, truncating: (299 R + 587 G + 114 B) / 1000.
constexpr std::uint8_t luma(std::uint8_t r, std::uint8_t g, std::uint8_t b) noexcept {
    return static_cast<std::uint8_t>((299u * r + 587u * g + 114u * b) / 1000u);
}

namespace detail {

class PnmHeaderReader {
public:
    explicit PnmHeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes), pos_(2) {}

    // Reads one whitespace-delimited unsigned integer, skipping '#' comments.
    long next_int(const char* field) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) {
            throw CorruptFileError(std::string("PGM header truncated before ") + field);
        }
        if (bytes_[pos_] == '-') {
            throw CorruptFileError(std::string("PGM ") + field + " must be positive");
        }
        if (!std::isdigit(bytes_[pos_])) {
            throw CorruptFileError(std::string("PGM ") + field + " is not a number");
        }
        long value = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000L) {
                throw CorruptFileError(std::string("PGM ") + field + " out of range");
            }
            ++pos_;
        }
        return value;
    }

    // Binary payload starts after exactly one whitespace byte following maxval.
    std::size_t payload_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) {
            throw CorruptFileError("PGM header missing separator before payload");
        }
        return pos_ + 1;
    }

    std::size_t position() const noexcept { return pos_; }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::uint8_t> bytes_;
    std::size_t pos_;
};

inline std::uint8_t rescale(long value, long maxval) noexcept {
    if (maxval == 255) return static_cast<std::uint8_t>(value);
    return static_cast<std::uint8_t>((value * 255 + maxval / 2) / maxval);
}

inline GrayImage decode_pgm(std::span<const std::uint8_t> bytes) {
    const bool binary = bytes[1] == '5';
    PnmHeaderReader header(bytes);
    const long width = header.next_int("width");
    const long height = header.next_int("height");
    const long maxval = header.next_int("maxval");
    if (width <= 0 || height <= 0) {
        throw CorruptFileError("PGM dimensions must be positive, got " + std::to_string(width) +
                               "x" + std::to_string(height));
    }
    if (maxval <= 0) throw CorruptFileError("PGM maxval must be positive");
    if (maxval > 255) {
        throw FormatError("unsupported PGM maxval " + std::to_string(maxval) +
                          " (only 8-bit samples are supported)");
    }
    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (width > (1L << 20) || height > (1L << 20) || count > (std::size_t{1} << 28)) {
        throw CorruptFileError("PGM dimensions too large");
    }
    std::vector<std::uint8_t> pixels(count);

    if (binary) {
        const std::size_t offset = header.payload_offset();
        if (bytes.size() < offset || bytes.size() - offset < count) {
            throw CorruptFileError("PGM payload truncated: expected " + std::to_string(count) +
                                   " bytes, found " +
                                   std::to_string(bytes.size() > offset ? bytes.size() - offset : 0));
        }
        for (std::size_t i = 0; i < count; ++i) {
            const long v = bytes[offset + i];
            if (v > maxval) throw CorruptFileError("PGM sample exceeds maxval");
            pixels[i] = rescale(v, maxval);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            long v = 0;
            try {
                v = header.next_int("sample");
            } catch (const CorruptFileError&) {
                throw CorruptFileError("PGM payload truncated: expected " + std::to_string(count) +
                                       " samples, found " + std::to_string(i));
            }
            if (v > maxval) throw CorruptFileError("PGM sample exceeds maxval");
            pixels[i] = rescale(v, maxval);
        }
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(pixels));
}

inline std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) noexcept {
    return static_cast<std::uint32_t>(b[at]) | static_cast<std::uint32_t>(b[at + 1]) << 8 |
           static_cast<std::uint32_t>(b[at + 2]) << 16 | static_cast<std::uint32_t>(b[at + 3]) << 24;
}

inline std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) noexcept {
    return static_cast<std::uint16_t>(b[at] | b[at + 1] << 8);
}

inline GrayImage decode_bmp(std::span<const std::uint8_t> bytes) {
    constexpr std::size_t kFileHeader = 14;
    if (bytes.size() < kFileHeader + 40) throw CorruptFileError("BMP headers truncated");

    const std::uint32_t pixel_offset = read_u32(bytes, 10);
    const std::uint32_t info_size = read_u32(bytes, 14);
    if (info_size < 40) {
        throw FormatError("unsupported BMP biSize " + std::to_string(info_size) +
                          " (BITMAPINFOHEADER or later required)");
    }
    const auto width = static_cast<std::int32_t>(read_u32(bytes, 18));
    const auto raw_height = static_cast<std::int32_t>(read_u32(bytes, 22));
    const std::uint16_t bit_count = read_u16(bytes, 28);
    const std::uint32_t compression = read_u32(bytes, 30);
    const std::uint32_t colors_used = read_u32(bytes, 46);

    if (compression != 0) {
        throw FormatError("unsupported BMP biCompression " + std::to_string(compression) +
                          " (only uncompressed BI_RGB)");
    }
    if (bit_count != 8 && bit_count != 24) {
        throw FormatError("unsupported BMP biBitCount " + std::to_string(bit_count) +
                          " (8 or 24 required)");
    }
    if (width <= 0 || raw_height == 0 || raw_height == INT32_MIN) {
        throw CorruptFileError("BMP dimensions must be positive, got " + std::to_string(width) +
                               "x" + std::to_string(raw_height));
    }
    const bool top_down = raw_height < 0;
    const std::int32_t height = top_down ? -raw_height : raw_height;
    if (static_cast<std::int64_t>(width) * height > (1LL << 28)) {
        throw CorruptFileError("BMP dimensions too large");
    }

    std::vector<std::uint8_t> palette;
    if (bit_count == 8) {
        const std::uint32_t entries = colors_used == 0 ? 256u : colors_used;
        if (entries > 256) throw CorruptFileError("BMP biClrUsed exceeds 256");
        const std::size_t at = kFileHeader + info_size;
        if (bytes.size() < at + 4 * static_cast<std::size_t>(entries)) {
            throw CorruptFileError("BMP palette truncated");
        }
        palette.resize(entries);
        for (std::uint32_t i = 0; i < entries; ++i) {
            const std::size_t e = at + 4 * static_cast<std::size_t>(i);
            palette[i] = luma(bytes[e + 2], bytes[e + 1], bytes[e]);
        }
    }

    const std::size_t bytes_per_pixel = bit_count / 8;
    const std::size_t stride = (static_cast<std::size_t>(width) * bytes_per_pixel + 3) & ~std::size_t{3};
    const std::size_t needed = stride * static_cast<std::size_t>(height);
    if (pixel_offset > bytes.size() || bytes.size() - pixel_offset < needed) {
        // The last row is allowed to omit its padding.
        const std::size_t minimal = stride * static_cast<std::size_t>(height - 1) +
                                    static_cast<std::size_t>(width) * bytes_per_pixel;
        if (pixel_offset > bytes.size() || bytes.size() - pixel_offset < minimal) {
            throw CorruptFileError("BMP pixel payload truncated");
        }
    }

    GrayImage out(width, height);
    for (std::int32_t row = 0; row < height; ++row) {
        const std::int32_t y = top_down ? row : height - 1 - row;
        const std::size_t base = pixel_offset + stride * static_cast<std::size_t>(row);
        for (std::int32_t x = 0; x < width; ++x) {
            const std::size_t p = base + static_cast<std::size_t>(x) * bytes_per_pixel;
            if (bit_count == 24) {
                out.at(x, y) = luma(bytes[p + 2], bytes[p + 1], bytes[p]);
            } else {
                const std::uint8_t index = bytes[p];
                if (index >= palette.size()) {
                    throw CorruptFileError("BMP palette index " + std::to_string(index) +
                                           " out of range");
                }
                out.at(x, y) = palette[index];
            }
        }
    }
    return out;
}

} // namespace detail

/// Decodes an in-memory PGM (P5/P2) or BMP file.
inline GrayImage decode_image(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2) throw CorruptFileError("file too short to hold an image header");
    if (bytes[0] == 'P' && (bytes[1] == '5' || bytes[1] == '2')) return detail::decode_pgm(bytes);
    if (bytes[0] == 'B' && bytes[1] == 'M') return detail::decode_bmp(bytes);
    std::string magic;
    for (int i = 0; i < 2; ++i) {
        magic += std::isprint(bytes[i]) ? static_cast<char>(bytes[i]) : '?';
    }
    throw FormatError("unsupported magic '" + magic + "' (expected P5, P2 or BM)");
}

inline std::vector<std::uint8_t> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed for '" + path.string() + "'");
    return bytes;
}

inline GrayImage load_image(const std::filesystem::path& path) {
    return decode_image(read_file_bytes(path));
}

/// P5, maxval 255, header exactly "P5\n<w> <h>\n255\n".
inline std::vector<std::uint8_t> encode_pgm(const GrayImage& image) {
    const std::string header = "P5\n" + std::to_string(image.width()) + " " +
                               std::to_string(image.height()) + "\n255\n";
    std::vector<std::uint8_t> out(header.begin(), header.end());
    out.insert(out.end(), image.pixels().begin(), image.pixels().end());
    return out;
}

inline void save_pgm(const GrayImage& image, const std::filesystem::path& path) {
    const auto bytes = encode_pgm(image);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed for '" + path.string() + "'");
}

} // namespace hocr
