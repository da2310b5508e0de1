#include "fixtures.hpp"

#include "rankforge/similarity.hpp"

#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

using namespace rankforge;

namespace {

/// Compressed lengths looked up from a table; unknown strings cost their length.
class TableCompressor final : public Compressor {
public:
    std::map<std::string, std::size_t, std::less<>> sizes;
    std::size_t compressed_size(std::string_view bytes) const override {
        auto it = sizes.find(bytes);
        return it == sizes.end() ? bytes.size() : it->second;
    }
};

}  // namespace

TEST(Encoding, EmptyUserIsEmptyString) {
    const RatingGraph g(1, 5, {{"a", "x", 0.6, 0}}, {"idle"});
    EXPECT_EQ(encode_user(g, g.user_index("idle")), "");
}

TEST(Encoding, SortedCanonicalForm) {
    const RatingGraph g(1, 5, {{"a", "i2", 0.8, 0}, {"a", "i1", 0.6, 0}});
    EXPECT_EQ(encode_user(g, 0), "i1:3;i2:4;");
    const RatingGraph h(1, 5, {{"a", "i1", 0.6, 0}, {"a", "i2", 0.8, 0}});
    EXPECT_EQ(encode_user(h, 0), encode_user(g, 0));
}

TEST(Confidence, StepAtTheta) {
    EXPECT_DOUBLE_EQ(confidence(1, 3), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(confidence(3, 3), 1.0 / 3.0);
    EXPECT_DOUBLE_EQ(confidence(4, 3), 1.0);
}

TEST(LinearSimilarity, DisjointItemsGiveZero) {
    const RatingGraph g(1, 5, {{"a", "x", 0.6, 0}, {"b", "y", 0.6, 0}});
    EXPECT_DOUBLE_EQ(linear_similarity(g, 0, 1, {}), 0.0);
}

TEST(LinearSimilarity, IdenticalRatingsOnFiveItemsGiveOne) {
    std::vector<RatingEntry> e;
    for (int i = 0; i < 5; ++i) {
        e.push_back({"a", "i" + std::to_string(i), 0.2 * (i + 1), 0});
        e.push_back({"b", "i" + std::to_string(i), 0.2 * (i + 1), 0});
    }
    const RatingGraph g(1, 5, e);
    EXPECT_DOUBLE_EQ(linear_similarity(g, 0, 1, {}), 1.0);
}

TEST(LinearSimilarity, MaximalDisagreementOnOneItem) {
    const RatingGraph g(1, 5, {{"a", "x", 0.2, 0}, {"b", "x", 1.0, 0}});
    EXPECT_DOUBLE_EQ(linear_similarity(g, 0, 1, {}), 0.0);
}

TEST(LinearSimilarity, HandEvaluatedValue) {
    // Common items {x, y}, |diff| = 0.2 and 0.4, span 0.8: (1/3)(1 - 0.6/1.6).
    const RatingGraph g(1, 5, {{"a", "x", 0.4, 0}, {"a", "y", 1.0, 0}, {"b", "x", 0.6, 0}, {"b", "y", 0.6, 0}});
    EXPECT_NEAR(linear_similarity(g, 0, 1, {}), (1.0 / 3.0) * (1.0 - 0.6 / 1.6), 1e-15);
    EXPECT_NEAR(linear_similarity(g, 0, 1, {.theta = 1}), 1.0 - 0.6 / 1.6, 1e-15);
}

TEST(CompressionSimilarity, FormulaWithTableLengths) {
    TableCompressor c;
    c.sizes = {{"u", 10}, {"v", 20}, {"uv", 25}, {"vu", 27}};
    EXPECT_DOUBLE_EQ(compression_similarity("u", "v", true, c), 1.0 - 15.0 / 20.0);
    EXPECT_DOUBLE_EQ(compression_similarity("v", "u", true, c), 1.0 - 17.0 / 20.0);
    EXPECT_DOUBLE_EQ(compression_similarity("u", "v", false, c), 0.0);
}

TEST(CompressionSimilarity, ClampedToUnitInterval) {
    TableCompressor c;
    c.sizes = {{"u", 10}, {"v", 10}, {"uv", 40}, {"vu", 5}};
    EXPECT_DOUBLE_EQ(compression_similarity("u", "v", true, c), 0.0);
    EXPECT_DOUBLE_EQ(compression_similarity("v", "u", true, c), 1.0);
}

TEST(CompressionSimilarity, SelfSimilarityMatchesLengths) {
    const DeflateCompressor z;
    std::string s;
    for (int i = 0; i < 40; ++i) s += "item" + std::to_string(i * 7 % 13) + ":" + std::to_string(1 + i % 5) + ";";
    const double cu = static_cast<double>(z.compressed_size(s));
    const double cuu = static_cast<double>(z.compressed_size(s + s));
    EXPECT_DOUBLE_EQ(compression_similarity(s, s, true, z), 1.0 - (cuu - cu) / cu);
    EXPECT_GT(compression_similarity(s, s, true, z), 0.8);
}

TEST(CompressionSimilarity, IncompressibleStringsNearZero) {
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> byte(0, 255);
    std::string a(4096, '\0'), b(4096, '\0');
    for (auto& ch : a) ch = static_cast<char>(byte(rng));
    for (auto& ch : b) ch = static_cast<char>(byte(rng));
    EXPECT_LT(compression_similarity(a, b, true, DeflateCompressor{}), 0.02);
}

TEST(KolmogorovSimilarity, LengthDifference) {
    TableCompressor c;
    c.sizes = {{"u", 12}, {"v", 21}, {"w", 12}};
    EXPECT_DOUBLE_EQ(kolmogorov_similarity("u", "w", true, c), 1.0);
    EXPECT_DOUBLE_EQ(kolmogorov_similarity("u", "v", true, c), 0.1);
    EXPECT_DOUBLE_EQ(kolmogorov_similarity("u", "v", false, c), 0.0);
}

TEST(SimilarityEngine, SymmetricAndInUnitInterval) {
    std::mt19937_64 rng(23);
    const DeflateCompressor z;
    const auto g = test::random_graph(rng, 14, 10, 0.3);
    for (Measure m : {Measure::ls, Measure::cs, Measure::ks}) {
        SimilarityEngine sim(g, m, {}, z);
        for (Index u = 0; u < g.num_users(); ++u) {
            for (Index v = 0; v < g.num_users(); ++v) {
                const double s = sim(u, v);
                EXPECT_GE(s, 0.0);
                EXPECT_LE(s, 1.0);
                EXPECT_DOUBLE_EQ(s, sim(v, u));
                if (common_item_count(g, u, v) == 0) EXPECT_EQ(s, 0.0);
            }
        }
    }
}

TEST(SimilarityEngine, CompressionAveragesBothOrders) {
    TableCompressor c;
    const RatingGraph g(1, 5, {{"a", "x", 0.6, 0}, {"b", "x", 0.8, 0}});
    const auto ea = encode_user(g, 0);
    const auto eb = encode_user(g, 1);
    c.sizes = {{ea, 10}, {eb, 10}, {ea + eb, 14}, {eb + ea, 18}};
    SimilarityEngine sim(g, Measure::cs, {}, c);
    EXPECT_DOUBLE_EQ(sim(0, 1), 0.5 * ((1.0 - 4.0 / 10.0) + (1.0 - 8.0 / 10.0)));
}

TEST(CandidateSimilarities, ExactlyTheCoRatingPairs) {
    std::mt19937_64 rng(29);
    const auto g = test::random_graph(rng, 16, 12, 0.15);
    const auto edges = candidate_similarities(g, Measure::ls, {}, DeflateCompressor{});
    std::set<std::pair<Index, Index>> got;
    for (const auto& e : edges) {
        EXPECT_LT(e.u, e.v);
        got.insert({e.u, e.v});
        EXPECT_DOUBLE_EQ(e.value, linear_similarity(g, e.u, e.v, {}));
    }
    std::set<std::pair<Index, Index>> want;
    for (Index u = 0; u < g.num_users(); ++u) {
        for (Index v = u + 1; v < g.num_users(); ++v) {
            if (common_item_count(g, u, v) > 0) want.insert({u, v});
        }
    }
    EXPECT_EQ(got, want);
}

TEST(Measure, ParseAndName) {
    EXPECT_EQ(parse_measure("cs"), Measure::cs);
    EXPECT_EQ(to_string(Measure::ks), "ks");
    EXPECT_THROW(parse_measure("cosine"), ConfigError);
    EXPECT_THROW(DeflateCompressor(12), ConfigError);
}
