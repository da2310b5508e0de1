#include "rankforge/similarity.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <utility>

namespace rankforge {

Measure parse_measure(std::string_view name) {
    if (name == "ls") return Measure::ls;
    if (name == "cs") return Measure::cs;
    if (name == "ks") return Measure::ks;
    throw ConfigError("unknown similarity measure '" + std::string(name) + "' (expected ls, cs or ks)");
}

std::string_view to_string(Measure m) {
    switch (m) {
        case Measure::ls: return "ls";
        case Measure::cs: return "cs";
        case Measure::ks: return "ks";
    }
    return "?";
}

DeflateCompressor::DeflateCompressor(int level) : level_(level) {
    if (level < 0 || level > 9) throw ConfigError("deflate level must lie in [0, 9]");
}

std::size_t DeflateCompressor::compressed_size(std::string_view bytes) const {
    uLongf size = compressBound(static_cast<uLong>(bytes.size()));
    std::vector<Bytef> buffer(size);
    const int rc = compress2(buffer.data(), &size, reinterpret_cast<const Bytef*>(bytes.data()),
                             static_cast<uLong>(bytes.size()), level_);
    if (rc != Z_OK) throw std::runtime_error("deflate failed with code " + std::to_string(rc));
    return static_cast<std::size_t>(size);
}

double confidence(std::size_t common, int theta) {
    return common <= static_cast<std::size_t>(theta) ? 1.0 / theta : 1.0;
}

std::string encode_user(const RatingGraph& g, Index u) {
    std::vector<std::pair<std::string_view, double>> pairs;
    for (const auto& [item, value] : g.items_of(u)) pairs.emplace_back(g.item_id(item), value);
    std::sort(pairs.begin(), pairs.end());
    std::string out;
    for (const auto& [id, value] : pairs) {
        double raw = value * g.r_top();
        if (std::abs(raw - std::round(raw)) < 1e-9) raw = std::round(raw);
        out.append(id);
        out.push_back(':');
        out.append(format_number(raw));
        out.push_back(';');
    }
    return out;
}

namespace {

// Walks the items rated by both users (both lists sorted by item index).
template <typename Fn>
void for_each_common(const RatingGraph& g, Index u, Index v, Fn&& fn) {
    auto a = g.items_of(u);
    auto b = g.items_of(v);
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (ia->index < ib->index) {
            ++ia;
        } else if (ib->index < ia->index) {
            ++ib;
        } else {
            fn(ia->value, ib->value);
            ++ia;
            ++ib;
        }
    }
}

}  // namespace

std::size_t common_item_count(const RatingGraph& g, Index u, Index v) {
    std::size_t n = 0;
    for_each_common(g, u, v, [&](double, double) { ++n; });
    return n;
}

double linear_similarity(const RatingGraph& g, Index u, Index v, const SimilarityParams& params) {
    std::size_t n = 0;
    double disagreement = 0.0;
    for_each_common(g, u, v, [&](double a, double b) {
        ++n;
        disagreement += std::abs(a - b);
    });
    if (n == 0) return 0.0;
    const double mean = disagreement / (static_cast<double>(n) * g.rating_span());
    return std::clamp(confidence(n, params.theta) * (1.0 - mean), 0.0, 1.0);
}

namespace {

double ncd_similarity(std::size_t cu, std::size_t cv, std::size_t cuv) {
    const double lo = static_cast<double>(std::min(cu, cv));
    const double hi = static_cast<double>(std::max(cu, cv));
    if (hi == 0.0) return 1.0;
    return std::clamp(1.0 - (static_cast<double>(cuv) - lo) / hi, 0.0, 1.0);
}

double ks_from_lengths(std::size_t cu, std::size_t cv) {
    const double diff = cu > cv ? static_cast<double>(cu - cv) : static_cast<double>(cv - cu);
    return 1.0 / (1.0 + diff);
}

}  // namespace

double compression_similarity(std::string_view u_enc, std::string_view v_enc, bool common_nonempty,
                              const Compressor& compressor) {
    if (!common_nonempty) return 0.0;
    std::string joined;
    joined.reserve(u_enc.size() + v_enc.size());
    joined.append(u_enc).append(v_enc);
    return ncd_similarity(compressor.compressed_size(u_enc), compressor.compressed_size(v_enc),
                          compressor.compressed_size(joined));
}

double kolmogorov_similarity(std::string_view u_enc, std::string_view v_enc, bool common_nonempty,
                             const Compressor& compressor) {
    if (!common_nonempty) return 0.0;
    return ks_from_lengths(compressor.compressed_size(u_enc), compressor.compressed_size(v_enc));
}

SimilarityEngine::SimilarityEngine(const RatingGraph& g, Measure measure, SimilarityParams params,
                                   const Compressor& compressor)
    : g_(g), measure_(measure), params_(params), compressor_(compressor) {
    if (params_.theta < 1) throw ConfigError("theta must be at least 1");
    if (measure_ == Measure::ls) return;
    encodings_.reserve(static_cast<std::size_t>(g.num_users()));
    lengths_.reserve(static_cast<std::size_t>(g.num_users()));
    for (Index u = 0; u < g.num_users(); ++u) {
        encodings_.push_back(encode_user(g, u));
        lengths_.push_back(compressor_.compressed_size(encodings_.back()));
    }
}

double SimilarityEngine::operator()(Index u, Index v) const {
    if (measure_ == Measure::ls) return linear_similarity(g_, u, v, params_);
    if (common_item_count(g_, u, v) == 0) return 0.0;
    const auto cu = lengths_[static_cast<std::size_t>(u)];
    const auto cv = lengths_[static_cast<std::size_t>(v)];
    if (measure_ == Measure::ks) return ks_from_lengths(cu, cv);

    const auto& eu = encodings_[static_cast<std::size_t>(u)];
    const auto& ev = encodings_[static_cast<std::size_t>(v)];
    const double forward = ncd_similarity(cu, cv, compressor_.compressed_size(eu + ev));
    const double backward = ncd_similarity(cu, cv, compressor_.compressed_size(ev + eu));
    return 0.5 * (forward + backward);
}

std::vector<SimilarityEdge> candidate_similarities(const RatingGraph& g, Measure measure,
                                                   const SimilarityParams& params,
                                                   const Compressor& compressor) {
    SimilarityEngine sim(g, measure, params, compressor);
    std::vector<SimilarityEdge> edges;
    std::vector<Index> stamp(static_cast<std::size_t>(g.num_users()), -1);
    std::vector<Index> neighbours;
    for (Index u = 0; u < g.num_users(); ++u) {
        neighbours.clear();
        for (const auto& [item, value] : g.items_of(u)) {
            for (const auto& [v, other] : g.raters_of(item)) {
                if (v > u && stamp[static_cast<std::size_t>(v)] != u) {
                    stamp[static_cast<std::size_t>(v)] = u;
                    neighbours.push_back(v);
                }
            }
        }
        std::sort(neighbours.begin(), neighbours.end());
        for (Index v : neighbours) edges.push_back({u, v, sim(u, v)});
    }
    return edges;
}

void write_similarity_csv(const RatingGraph& g, Measure measure, const std::vector<SimilarityEdge>& edges,
                          std::ostream& out) {
    out << "user_a,user_b,measure,value\n";
    for (const auto& e : edges) {
        out << g.user_id(e.u) << ',' << g.user_id(e.v) << ',' << to_string(measure) << ','
            << format_number(e.value) << '\n';
    }
}

}  // namespace rankforge
