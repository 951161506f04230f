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

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "hocr/classifiers.hpp"
#include "test_support.hpp"

namespace {

using hocr::ClassLabel;
using hocr::Prototype;
using hocr::Script;

Prototype proto_with_zoning(std::vector<double> z, ClassLabel label, std::string ts = "t") {
    Prototype p;
    p.label = label;
    p.typeset = std::move(ts);
    p.zoning.values = std::move(z);
    return p;
}

Prototype proto_with_fuzzy(double fill, ClassLabel label) {
    Prototype p;
    p.label = label;
    p.typeset = "t";
    p.fuzzy.values.fill(fill);
    return p;
}

hocr::BinaryFeature flip_bits(hocr::BinaryFeature f, std::initializer_list<std::size_t> idx) {
    for (auto i : idx) f.values[i] ^= 1;
    return f;
}

// ---------------------------------------------------------------- euclidean

TEST(EuclideanDistance, HandValues) {
    const std::vector<double> p{0.25, 0.5};
    EXPECT_EQ(hocr::euclidean_distance(p, p), 0.0);
    EXPECT_EQ(hocr::euclidean_distance(std::vector<double>{0, 0}, std::vector<double>{3, 4}), 5.0);
    EXPECT_NEAR(hocr::euclidean_distance(std::vector<double>{1, 1, 1}, std::vector<double>{0, 0, 0}), 1.7320508,
                1e-7);
}

TEST(EuclideanDistance, LengthMismatchIsDimensionError) {
    EXPECT_THROW(hocr::euclidean_distance(std::vector<double>{1}, std::vector<double>{1, 2}), hocr::DimensionError);
    EXPECT_THROW(hocr::euclidean_distance(std::vector<double>{}, std::vector<double>{}), hocr::DimensionError);
}

TEST(EuclideanDistance, MetricAxiomsOnRandomTriples) {
    std::mt19937_64 rng(59);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<double> p(25), q(25), r(25);
        for (std::size_t i = 0; i < 25; ++i) {
            p[i] = u(rng);
            q[i] = u(rng);
            r[i] = u(rng);
        }
        const double pq = hocr::euclidean_distance(p, q);
        EXPECT_GE(pq, 0.0);
        EXPECT_NEAR(pq, hocr::euclidean_distance(q, p), 1e-9);
        EXPECT_EQ(hocr::euclidean_distance(p, p), 0.0);
        EXPECT_GT(pq, 0.0);
        EXPECT_LE(pq, hocr::euclidean_distance(p, r) + hocr::euclidean_distance(r, q) + 1e-9);
    }
}

TEST(ClassifyEuclidean, ExactMatchScoresZero) {
    std::vector<Prototype> protos{proto_with_zoning({0.1, 0.2}, {Script::Arabic, 1}),
                                  proto_with_zoning({0.5, 0.5}, {Script::Indian, 4})};
    const auto r = hocr::classify_euclidean(hocr::ZoningFeature{{0.5, 0.5}}, protos);
    EXPECT_EQ(r.label, (ClassLabel{Script::Indian, 4}));
    EXPECT_EQ(r.score, 0.0);
    EXPECT_EQ(r.index, 1u);
}

TEST(ClassifyEuclidean, NearestWinsWithRunnerUp) {
    std::vector<Prototype> protos{proto_with_zoning({1.0}, {Script::Arabic, 1}),
                                  proto_with_zoning({2.0}, {Script::Arabic, 2})};
    const auto r = hocr::classify_euclidean(hocr::ZoningFeature{{0.0}}, protos);
    EXPECT_EQ(r.label.digit, 1);
    EXPECT_EQ(r.score, 1.0);
    EXPECT_EQ(r.runner_up_score, 2.0);
}

TEST(ClassifyEuclidean, TiesGoToStoreOrder) {
    std::vector<Prototype> protos{proto_with_zoning({1.0}, {Script::Arabic, 5}),
                                  proto_with_zoning({-1.0}, {Script::Arabic, 3})};
    EXPECT_EQ(hocr::classify_euclidean(hocr::ZoningFeature{{0.0}}, protos).index, 0u);
}

TEST(ClassifyEuclidean, SinglePrototypeRunnerUpIsInfinite) {
    std::vector<Prototype> protos{proto_with_zoning({1.0}, {Script::Arabic, 5})};
    EXPECT_TRUE(std::isinf(hocr::classify_euclidean(hocr::ZoningFeature{{0.0}}, protos).runner_up_score));
}

TEST(ClassifyEuclidean, EmptyStoreIsConfigError) {
    EXPECT_THROW(hocr::classify_euclidean(hocr::ZoningFeature{{0.0}}, {}), hocr::ConfigError);
}

TEST(ClassifyEuclidean, TrainedStoreSelfMatchesArabicSeven) {
    const auto& store = hocr::testing::fixture_store();
    const auto glyph = hocr::glyph_from_image(hocr::load_image(hocr::testing::fixture_dir() / "sans_12_arabic_7.pgm"));
    const auto r = hocr::classify_euclidean(hocr::zoning_features(glyph), store.prototypes());
    EXPECT_EQ(r.label, (ClassLabel{Script::Arabic, 7}));
    EXPECT_EQ(r.typeset, "sans");
    EXPECT_EQ(r.score, 0.0);
}

// ---------------------------------------------------------------- hamming

TEST(HammingActivations, IdentityComplementAndThreeBits) {
    std::mt19937_64 rng(61);
    std::vector<Prototype> protos{hocr::testing::random_prototype(rng, "t", {Script::Arabic, 0})};
    const auto c = protos[0].binary;
    hocr::BinaryFeature complement = c;
    for (auto& v : complement.values) v ^= 1;
    EXPECT_EQ(hocr::hamming_activations(c, protos)[0], 500);
    EXPECT_EQ(hocr::hamming_activations(complement, protos)[0], 0);
    EXPECT_EQ(hocr::hamming_activations(flip_bits(c, {3, 77, 499}), protos)[0], 497);
}

TEST(HammingActivations, EqualsNMinusHammingDistance) {
    std::mt19937_64 rng(67);
    const auto store = hocr::testing::random_store(rng);
    for (int trial = 0; trial < 200; ++trial) {
        const auto x = hocr::testing::random_prototype(rng, "x", {}).binary;
        const auto net = hocr::hamming_activations(x, store.prototypes());
        for (std::size_t j = 0; j < net.size(); ++j) {
            ASSERT_EQ(net[j], 500 - hocr::testing::hamming_distance(x, store.prototypes()[j].binary));
            ASSERT_GE(net[j], 0);
            ASSERT_LE(net[j], 500);
        }
    }
}

TEST(Maxnet, HandIteratedExample) {
    const auto r = hocr::maxnet(std::vector<double>{3, 1, 2}, {0.2, 100});
    EXPECT_EQ(r.winner, 0u);
    EXPECT_EQ(r.iterations, 4);
}

TEST(Maxnet, SingleNonzeroNeedsNoIterations) {
    const auto r = hocr::maxnet(std::vector<double>{0, 0, 7, 0});
    EXPECT_EQ(r.winner, 2u);
    EXPECT_EQ(r.iterations, 0);
}

TEST(Maxnet, MatchesArgmaxOnRandomVectors) {
    std::mt19937_64 rng(71);
    std::uniform_real_distribution<double> u(0.0, 500.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<double> v(80);
        for (auto& x : v) x = u(rng);
        const auto argmax = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
        EXPECT_EQ(hocr::maxnet(v).winner, argmax);
    }
}

TEST(Maxnet, AllZeroIsDegenerate) {
    EXPECT_THROW(hocr::maxnet(std::vector<double>(5, 0.0)), hocr::DegenerateInputError);
    EXPECT_THROW(hocr::maxnet(std::vector<double>{}), hocr::DegenerateInputError);
}

TEST(Maxnet, EpsilonOutsideBoundIsConfigError) {
    // The recurrence's historical -0.2 inhibition is out of range for 80 competitors.
    EXPECT_THROW(hocr::maxnet(std::vector<double>(80, 1.0), {0.2, 100}), hocr::ConfigError);
    EXPECT_THROW(hocr::maxnet(std::vector<double>{1, 2}, {0.0, 100}), hocr::ConfigError);
    EXPECT_THROW(hocr::maxnet(std::vector<double>{1, 2}, {1.0, 100}), hocr::ConfigError);
    EXPECT_NO_THROW(hocr::maxnet(std::vector<double>{1, 2}, {0.99, 100}));
}

TEST(Maxnet, IterationCapIsConvergenceError) {
    EXPECT_THROW(hocr::maxnet(std::vector<double>{100.0, 99.999}, {0.01, 5}), hocr::ConvergenceError);
}

TEST(Maxnet, ExactTieNeverResolves) {
    EXPECT_THROW(hocr::maxnet(std::vector<double>{2.0, 2.0}, {0.5, 100}), hocr::ConvergenceError);
}

TEST(ClassifyHamming, StoredPrototypeScores500) {
    std::mt19937_64 rng(73);
    const auto store = hocr::testing::random_store(rng);
    const auto& target = store.prototypes()[37];
    const auto r = hocr::classify_hamming(target.binary, store.prototypes());
    EXPECT_EQ(r.index, 37u);
    EXPECT_EQ(r.label, target.label);
    EXPECT_EQ(r.score, 500.0);
    EXPECT_LT(r.runner_up_score, 500.0);
}

TEST(ClassifyHamming, CloseToExactlyOnePrototype) {
    std::mt19937_64 rng(79);
    const auto store = hocr::testing::random_store(rng);
    const auto& target = store.prototypes()[12];
    const auto x = flip_bits(target.binary, {1, 20, 40, 60, 80, 100, 120, 140, 160, 180});
    for (std::size_t j = 0; j < store.size(); ++j) {
        if (j != 12) { ASSERT_GE(hocr::testing::hamming_distance(x, store.prototypes()[j].binary), 50); }
    }
    const auto r = hocr::classify_hamming(x, store.prototypes());
    EXPECT_EQ(r.index, 12u);
    EXPECT_EQ(r.score, 490.0);
}

TEST(ClassifyHamming, EquidistantGoesToEarlier) {
    Prototype a, b;
    a.label = {Script::Indian, 2};
    b.label = {Script::Arabic, 1};
    a.typeset = b.typeset = "t";
    b.binary.values[0] = 1;
    a.binary.values[1] = 1;
    std::vector<Prototype> protos{a, b};
    const auto r = hocr::classify_hamming(hocr::BinaryFeature{}, protos);
    EXPECT_EQ(r.index, 0u);
    EXPECT_EQ(r.score, 499.0);
    EXPECT_EQ(r.runner_up_score, 499.0);
}

TEST(ClassifyHamming, MatchesBruteForceOracle) {
    std::mt19937_64 rng(83);
    const auto store = hocr::testing::random_store(rng);
    std::uniform_int_distribution<std::size_t> pick(0, store.size() - 1);
    std::uniform_int_distribution<std::size_t> bit(0, 499);
    for (int trial = 0; trial < 300; ++trial) {
        // Mix uniform vectors with perturbed prototypes so that near-ties occur.
        auto x = hocr::testing::random_prototype(rng, "x", {}).binary;
        if (trial % 2) {
            x = store.prototypes()[pick(rng)].binary;
            for (int k = 0; k < 200; ++k) x.values[bit(rng)] ^= 1;
        }
        EXPECT_EQ(hocr::classify_hamming(x, store.prototypes()).index,
                  hocr::testing::brute_force_hamming_winner(x, store.prototypes()));
    }
}

TEST(ClassifyHamming, SinglePrototypeSkipsMaxnet) {
    std::vector<Prototype> protos(1);
    protos[0].typeset = "t";
    const auto r = hocr::classify_hamming(hocr::BinaryFeature{}, protos);
    EXPECT_EQ(r.index, 0u);
    EXPECT_EQ(r.runner_up_score, 0.0);
}

// ---------------------------------------------------------------- fnn

TEST(FnnSimilarity, HandValues) {
    hocr::FuzzyFeature ones, halves, one_off;
    ones.values.fill(1.0);
    halves.values.fill(0.5);
    one_off = ones;
    one_off.values[7] = 0.5;
    EXPECT_EQ(hocr::fnn_similarity(ones, ones), 1.0);
    EXPECT_DOUBLE_EQ(hocr::fnn_similarity(ones, halves), 0.5);
    EXPECT_DOUBLE_EQ(hocr::fnn_similarity(ones, one_off), 0.999);
}

TEST(FnnSimilarity, SymmetricAndOneOnlyWhenEqual) {
    std::mt19937_64 rng(89);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = hocr::fuzzy_features(hocr::testing::random_glyph(rng, 0.1));
        const auto b = hocr::fuzzy_features(hocr::testing::random_glyph(rng, 0.1));
        EXPECT_EQ(hocr::fnn_similarity(a, b), hocr::fnn_similarity(b, a));
        EXPECT_EQ(hocr::fnn_similarity(a, a), 1.0);
        if (!(a == b)) { EXPECT_LT(hocr::fnn_similarity(a, b), 1.0); }
    }
}

TEST(ClassifyFnn, ExactPrototypeScoresOne) {
    std::vector<Prototype> protos{proto_with_fuzzy(0.2, {Script::Arabic, 1}),
                                  proto_with_fuzzy(0.7, {Script::Indian, 8})};
    const auto r = hocr::classify_fnn(protos[1].fuzzy, protos);
    EXPECT_EQ(r.label, (ClassLabel{Script::Indian, 8}));
    EXPECT_EQ(r.score, 1.0);
}

TEST(ClassifyFnn, HigherSimilarityWins) {
    hocr::FuzzyFeature s;
    s.values.fill(1.0);
    std::vector<Prototype> protos{proto_with_fuzzy(0.9, {Script::Arabic, 1}),
                                  proto_with_fuzzy(0.8, {Script::Arabic, 2})};
    const auto r = hocr::classify_fnn(s, protos);
    EXPECT_EQ(r.index, 0u);
    EXPECT_NEAR(r.score, 0.9, 1e-12);  // 500 summed differences
    EXPECT_NEAR(r.runner_up_score, 0.8, 1e-12);
}

TEST(ClassifyFnn, TiesGoToStoreOrder) {
    hocr::FuzzyFeature s;
    s.values.fill(0.5);
    std::vector<Prototype> protos{proto_with_fuzzy(0.6, {Script::Arabic, 4}),
                                  proto_with_fuzzy(0.4, {Script::Arabic, 2})};
    EXPECT_EQ(hocr::classify_fnn(s, protos).index, 0u);
}

TEST(ClassifyFnn, SimilarityIsPluggable) {
    // A measure that prefers the darkest prototype regardless of the input.
    struct Darkest {
        double operator()(const hocr::FuzzyFeature&, const hocr::FuzzyFeature& p) const { return p.values[0]; }
    };
    hocr::FuzzyFeature s;
    s.values.fill(0.0);
    std::vector<Prototype> protos{proto_with_fuzzy(0.1, {Script::Arabic, 1}),
                                  proto_with_fuzzy(0.9, {Script::Arabic, 2})};
    EXPECT_EQ(hocr::classify_fnn(s, protos).index, 0u);
    EXPECT_EQ(hocr::classify_fnn(s, protos, Darkest{}).index, 1u);
}

TEST(ClassifyFnn, TrainedStoreRecognizesArabicThree) {
    const auto& store = hocr::testing::fixture_store();
    for (const char* ts : {"bold", "italic", "sans", "serif"}) {
        const auto path = hocr::testing::fixture_dir() / (std::string(ts) + "_12_arabic_3.pgm");
        const auto glyph = hocr::glyph_from_image(hocr::load_image(path));
        const auto r = hocr::classify_fnn(hocr::fuzzy_features(glyph), store.prototypes());
        EXPECT_EQ(r.label, (ClassLabel{Script::Arabic, 3})) << ts;
    }
}

TEST(ClassifyFnn, EmptyStoreIsConfigError) {
    EXPECT_THROW(hocr::classify_fnn(hocr::FuzzyFeature{}, {}), hocr::ConfigError);
}

TEST(Classifiers, Deterministic) {
    std::mt19937_64 rng(97);
    const auto store = hocr::testing::random_store(rng);
    const auto g = hocr::testing::random_glyph(rng);
    EXPECT_EQ(hocr::classify_hamming(hocr::binary_features(g), store.prototypes()),
              hocr::classify_hamming(hocr::binary_features(g), store.prototypes()));
    EXPECT_EQ(hocr::classify_euclidean(hocr::zoning_features(g), store.prototypes()),
              hocr::classify_euclidean(hocr::zoning_features(g), store.prototypes()));
    EXPECT_EQ(hocr::classify_fnn(hocr::fuzzy_features(g), store.prototypes()),
              hocr::classify_fnn(hocr::fuzzy_features(g), store.prototypes()));
}

TEST(ClassLabel, ScriptNamesAndDigitRange) {
    EXPECT_EQ(hocr::to_string(Script::Indian), "indian");
    EXPECT_EQ(hocr::parse_script("arabic"), Script::Arabic);
    EXPECT_FALSE(hocr::parse_script("latin").has_value());
    EXPECT_THROW(hocr::make_label(Script::Arabic, 10), hocr::PreconditionError);
    EXPECT_EQ(hocr::to_string(ClassLabel{Script::Indian, 9}), "(indian,9)");
}

} // namespace
