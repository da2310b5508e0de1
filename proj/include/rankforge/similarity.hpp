#pragma once

#include "rankforge/rating_graph.hpp"
#include "rankforge/types.hpp"

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rankforge {

enum class Measure { ls, cs, ks };

Measure parse_measure(std::string_view name);
std::string_view to_string(Measure m);

/// Deterministic lossless byte compressor; only output lengths are used.
class Compressor {
public:
    virtual ~Compressor() = default;
    virtual std::size_t compressed_size(std::string_view bytes) const = 0;
};

/// zlib deflate at a fixed level.
class DeflateCompressor final : public Compressor {
public:
    explicit DeflateCompressor(int level = 9);
    std::size_t compressed_size(std::string_view bytes) const override;

private:
    int level_;
};

struct SimilarityParams {
    int theta = 3;  ///< common-item count above which LS is fully trusted
};

/// Confidence step: 1/theta for n <= theta, 1 otherwise.
double confidence(std::size_t common, int theta);

/// Canonical "item:raw_rating;" byte string of a user's ratings, sorted by item id.
std::string encode_user(const RatingGraph& g, Index u);

/// Number of items rated by both users.
std::size_t common_item_count(const RatingGraph& g, Index u, Index v);

double linear_similarity(const RatingGraph& g, Index u, Index v, const SimilarityParams& params);

/// One-sided normalized-compression similarity of u then v, clamped to [0,1].
double compression_similarity(std::string_view u_enc, std::string_view v_enc, bool common_nonempty,
                              const Compressor& compressor);

double kolmogorov_similarity(std::string_view u_enc, std::string_view v_enc, bool common_nonempty,
                             const Compressor& compressor);

/// Caches per-user encodings and compressed lengths so KS costs one compression
/// per user and CS one extra per ordered pair.
class SimilarityEngine {
public:
    SimilarityEngine(const RatingGraph& g, Measure measure, SimilarityParams params,
                     const Compressor& compressor);

    /// Symmetric similarity in [0,1]; CS averages both concatenation orders.
    double operator()(Index u, Index v) const;

    Measure measure() const { return measure_; }

private:
    const RatingGraph& g_;
    Measure measure_;
    SimilarityParams params_;
    const Compressor& compressor_;
    std::vector<std::string> encodings_;
    std::vector<std::size_t> lengths_;
};

struct SimilarityEdge {
    Index u = 0;
    Index v = 0;   ///< u < v
    double value = 0.0;
};

/// Similarities of every user pair that shares at least one rated item
/// (all other pairs are 0 by definition), sorted by (u, v).
std::vector<SimilarityEdge> candidate_similarities(const RatingGraph& g, Measure measure,
                                                   const SimilarityParams& params,
                                                   const Compressor& compressor);

/// Sparse dump: user_a,user_b,measure,value.
void write_similarity_csv(const RatingGraph& g, Measure measure, const std::vector<SimilarityEdge>& edges,
                          std::ostream& out);

}  // namespace rankforge
