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

// Renders the training glyph grid (4 typesets x 5 point sizes x 20 classes)
// from a small built-in stroke font and writes one PGM per glyph, named
// <typeset>_<size>_<script>_<digit>.pgm.
//
//   make_fixtures <out-dir>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include "hocr/imageio.hpp"
#include "hocr/pipeline.hpp"

namespace {

struct Pt {
    double x;
    double y;
};

struct Stroke {
    std::vector<Pt> pts;
    bool filled = false;  // closed polygon with interior inked
    double weight = 1.0;  // multiplier on the typeset stroke thickness
};

struct Design {
    std::vector<Stroke> strokes;
    std::vector<Stroke> serifs;  // only drawn by serif typesets
};

struct Typeset {
    std::string name;
    double weight;   // stroke thickness as a fraction of body height
    double aspect;   // body width / body height
    double slant;    // horizontal shear per unit height
    bool serifs;
};

const std::vector<Typeset> kTypesets{
    {"bold", 0.19, 0.68, 0.0, false},
    {"italic", 0.11, 0.58, 0.2, false},
    {"sans", 0.12, 0.60, 0.0, false},
    {"serif", 0.075, 0.56, 0.0, true},
};

constexpr double kMinThickness = 2.0;
constexpr int kMargin = 3;

// Elliptical arc in unit glyph coordinates (y grows downward); angles in
// degrees, counter-clockwise as seen on the page.
std::vector<Pt> arc(double cx, double cy, double rx, double ry, double a0, double a1) {
    const int steps = std::max(8, static_cast<int>(std::abs(a1 - a0) / 6.0));
    std::vector<Pt> pts;
    for (int i = 0; i <= steps; ++i) {
        const double a = (a0 + (a1 - a0) * i / steps) * std::numbers::pi / 180.0;
        pts.push_back({cx + rx * std::cos(a), cy - ry * std::sin(a)});
    }
    return pts;
}

Stroke poly(std::vector<Pt> pts, double weight = 1.0) { return Stroke{std::move(pts), false, weight}; }

// Filled polygons keep sharp corners: only a thin outline is stroked.
Stroke fill(std::vector<Pt> pts, double outline = 0.4) { return Stroke{std::move(pts), true, outline}; }

Stroke rotated(Stroke s) {
    for (auto& p : s.pts) p = {1.0 - p.x, 1.0 - p.y};
    return s;
}

Design arabic(int digit) {
    switch (digit) {
    case 0:
        return {{poly(arc(0.5, 0.5, 0.5, 0.5, 90, 450), 0.85)}, {}};
    case 1:
        return {{poly({{0.18, 0.22}, {0.58, 0.0}, {0.58, 1.0}})}, {poly({{0.25, 1.0}, {0.9, 1.0}})}};
    case 2: {
        auto pts = arc(0.5, 0.29, 0.46, 0.29, 165, -35);
        pts.push_back({0.0, 1.0});
        pts.push_back({1.0, 1.0});
        return {{poly(pts)}, {poly({{1.0, 1.0}, {1.0, 0.86}})}};
    }
    case 3:
        return {{poly(arc(0.5, 0.26, 0.43, 0.26, 155, -90)), poly(arc(0.5, 0.73, 0.48, 0.27, 90, -155))}, {}};
    case 4:
        return {{poly({{0.75, 1.0}, {0.75, 0.0}, {0.0, 0.7}, {1.0, 0.7}})}, {poly({{0.55, 1.0}, {0.95, 1.0}})}};
    case 5: {
        Stroke top = poly({{0.92, 0.0}, {0.2, 0.0}, {0.12, 0.46}});
        return {{top, poly(arc(0.5, 0.69, 0.46, 0.31, 140, -145))}, {poly({{0.92, 0.0}, {0.92, 0.1}})}};
    }
    case 6:
        return {{poly(arc(0.5, 0.7, 0.45, 0.3, 0, 360)), poly(arc(0.6, 0.6, 0.55, 0.6, 75, 190))}, {}};
    case 7:
        return {{poly({{0.0, 0.0}, {1.0, 0.0}, {0.35, 1.0}})}, {poly({{0.0, 0.0}, {0.0, 0.14}})}};
    case 8:
        return {{poly(arc(0.5, 0.25, 0.4, 0.25, 0, 360)), poly(arc(0.5, 0.73, 0.47, 0.27, 0, 360))}, {}};
    default: {
        Design six = arabic(6);
        for (auto& s : six.strokes) s = rotated(s);
        return six;
    }
    }
}

Design indian(int digit) {
    switch (digit) {
    case 0:
        return {{fill({{0.5, 0.3}, {0.75, 0.5}, {0.5, 0.7}, {0.25, 0.5}})}, {}};
    case 1:
        return {{fill({{0.34, 0.0}, {0.66, 0.0}, {0.58, 1.0}, {0.42, 1.0}}, 0.6)}, {}};
    case 2:
        return {{poly({{0.38, 1.0}, {0.25, 0.0}}), poly({{0.3, 0.36}, {0.62, 0.3}, {0.95, 0.0}})},
                {poly({{0.25, 1.0}, {0.5, 1.0}})}};
    case 3:
        return {{poly({{0.38, 1.0}, {0.22, 0.0}}), poly({{0.28, 0.36}, {1.0, 0.36}}),
                 poly({{0.62, 0.36}, {0.62, 0.02}}), poly({{1.0, 0.36}, {1.0, 0.0}})},
                {poly({{0.25, 1.0}, {0.5, 1.0}})}};
    case 4:
        return {{poly(arc(0.58, 0.22, 0.4, 0.2, 60, 270)), poly(arc(0.58, 0.68, 0.45, 0.28, 90, 300))}, {}};
    case 5:
    {
        // Ring with a dimple at the top centre.
        auto pts = arc(0.5, 0.64, 0.46, 0.36, 110, 430);
        pts.push_back({0.5, 0.5});
        pts.push_back(pts.front());
        return {{poly(pts, 1.6)}, {}};
    }
    case 6:
        return {{poly({{0.0, 0.14}, {0.22, 0.0}, {0.78, 0.1}, {0.72, 1.0}})}, {poly({{0.6, 1.0}, {0.85, 1.0}})}};
    case 7:
        return {{poly({{0.0, 0.0}, {0.5, 1.0}, {1.0, 0.0}})}, {}};
    case 8:
        return {{poly({{0.0, 1.0}, {0.5, 0.0}, {1.0, 1.0}})}, {poly({{-0.1, 1.0}, {0.1, 1.0}}), poly({{0.9, 1.0}, {1.1, 1.0}})}};
    default:
        return {{poly(arc(0.42, 0.2, 0.38, 0.2, 0, 360)), poly({{0.8, 0.2}, {0.8, 1.0}})}, {}};
    }
}

double segment_distance(Pt p, Pt a, Pt b) {
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double len2 = dx * dx + dy * dy;
    double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double ex = a.x + t * dx - p.x;
    const double ey = a.y + t * dy - p.y;
    return std::sqrt(ex * ex + ey * ey);
}

bool inside(Pt p, const std::vector<Pt>& poly) {
    bool in = false;
    for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
        if ((poly[i].y > p.y) != (poly[j].y > p.y) &&
            p.x < (poly[j].x - poly[i].x) * (p.y - poly[i].y) / (poly[j].y - poly[i].y) + poly[i].x) {
            in = !in;
        }
    }
    return in;
}

/// Body height in pixels for a point size: 25 px at 12 pt, scaled linearly.
int body_height(int point_size) { return static_cast<int>(std::lround(point_size * 25.0 / 12.0)); }

hocr::GrayImage render(const Design& design, const Typeset& ts, int point_size) {
    const int h = body_height(point_size);
    const int body_w = static_cast<int>(std::lround(ts.aspect * h));
    const double thickness = std::max(kMinThickness, ts.weight * h);
    const double pad = thickness / 2.0 + 0.5;
    const int slant_px = static_cast<int>(std::ceil(ts.slant * h));
    const int width = body_w + slant_px + 2 * kMargin;
    const int height = h + 2 * kMargin;

    auto to_px = [&](Pt u) {
        const double y = pad + u.y * (h - 2 * pad);
        const double x = pad + u.x * (body_w - 2 * pad) + ts.slant * (1.0 - u.y) * (h - 2 * pad);
        return Pt{x, y};
    };

    std::vector<Stroke> strokes = design.strokes;
    if (ts.serifs) strokes.insert(strokes.end(), design.serifs.begin(), design.serifs.end());
    for (auto& s : strokes) {
        for (auto& p : s.pts) p = to_px(p);
    }

    hocr::GrayImage img(width, height, 255);
    for (int py = 0; py < h; ++py) {
        for (int px = 0; px < body_w + slant_px; ++px) {
            const Pt c{px + 0.5, py + 0.5};
            bool ink = false;
            for (const auto& s : strokes) {
                const double r = thickness * s.weight / 2.0;
                if (s.filled && inside(c, s.pts)) ink = true;
                const std::size_t n = s.pts.size();
                for (std::size_t i = 0; i + 1 < n && !ink; ++i) ink = segment_distance(c, s.pts[i], s.pts[i + 1]) <= r;
                if (s.filled && !ink && n > 2) ink = segment_distance(c, s.pts[n - 1], s.pts[0]) <= r;
                if (ink) break;
            }
            if (ink) img.at(px + kMargin, py + kMargin) = 0;
        }
    }
    return img;
}

} // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: make_fixtures <out-dir>\n";
        return 2;
    }
    const std::filesystem::path out = argv[1];
    std::filesystem::create_directories(out);
    int written = 0;
    for (const auto& ts : kTypesets) {
        for (int size : hocr::kFontSizes) {
            for (auto script : {hocr::Script::Arabic, hocr::Script::Indian}) {
                for (int digit = 0; digit < 10; ++digit) {
                    const Design d = script == hocr::Script::Arabic ? arabic(digit) : indian(digit);
                    const hocr::TrainingKey key{ts.name, size, hocr::ClassLabel{script, digit}};
                    hocr::save_pgm(render(d, ts, size), out / (hocr::glyph_file_stem(key) + ".pgm"));
                    ++written;
                }
            }
        }
    }
    std::cout << "wrote " << written << " glyphs to " << out.string() << "\n";
    return 0;
}
