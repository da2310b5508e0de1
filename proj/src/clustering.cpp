#include "rankforge/clustering.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <string>

namespace rankforge {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)), rank_(static_cast<std::size_t>(n), 0) {
        std::iota(parent_.begin(), parent_.end(), Index{0});
    }

    Index find(Index x) {
        while (parent_[static_cast<std::size_t>(x)] != x) {
            auto& p = parent_[static_cast<std::size_t>(x)];
            p = parent_[static_cast<std::size_t>(p)];
            x = p;
        }
        return x;
    }

    void unite(Index a, Index b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        auto& ra = rank_[static_cast<std::size_t>(a)];
        auto& rb = rank_[static_cast<std::size_t>(b)];
        if (ra < rb) std::swap(a, b);
        parent_[static_cast<std::size_t>(b)] = a;
        if (ra == rb) ++rank_[static_cast<std::size_t>(a)];
    }

private:
    std::vector<Index> parent_;
    std::vector<int> rank_;
};

}  // namespace

Index AffinityPartition::component_of(Index u) const {
    if (u < 0 || u >= num_users()) throw LookupError("unknown user index " + std::to_string(u));
    return component_index[static_cast<std::size_t>(u)];
}

AffinityPartition partition_from_edges(Index num_users, const std::vector<SimilarityEdge>& edges, double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
    AffinityPartition p;
    p.alpha = alpha;
    DisjointSets sets(num_users);
    for (const auto& e : edges) {
        if (e.value > alpha + kThresholdSlack) {
            p.edges.push_back(e);
            sets.unite(e.u, e.v);
        }
    }
    // Walking users in index order numbers components by their smallest member.
    std::vector<Index> root_to_component(static_cast<std::size_t>(num_users), -1);
    p.component_index.resize(static_cast<std::size_t>(num_users));
    for (Index u = 0; u < num_users; ++u) {
        auto& slot = root_to_component[static_cast<std::size_t>(sets.find(u))];
        if (slot < 0) {
            slot = static_cast<Index>(p.components.size());
            p.components.emplace_back();
        }
        p.components[static_cast<std::size_t>(slot)].push_back(u);
        p.component_index[static_cast<std::size_t>(u)] = slot;
    }
    return p;
}

AffinityPartition partition_from_similarity(const Eigen::MatrixXd& similarity, double alpha) {
    if (similarity.rows() != similarity.cols()) throw DomainError("similarity matrix must be square");
    std::vector<SimilarityEdge> edges;
    for (Index u = 0; u < similarity.rows(); ++u) {
        for (Index v = u + 1; v < similarity.cols(); ++v) edges.push_back({u, v, similarity(u, v)});
    }
    return partition_from_edges(similarity.rows(), edges, alpha);
}

AffinityPartition single_component(Index num_users) {
    AffinityPartition p;
    p.alpha = 0.0;
    p.component_index.assign(static_cast<std::size_t>(num_users), 0);
    p.components.emplace_back(static_cast<std::size_t>(num_users));
    std::iota(p.components.front().begin(), p.components.front().end(), Index{0});
    if (num_users == 0) p.components.clear();
    return p;
}

AffinityPartition build_affinity(const RatingGraph& g, Measure measure, const SimilarityParams& params,
                                 double alpha, const Compressor& compressor) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
    return partition_from_edges(g.num_users(), candidate_similarities(g, measure, params, compressor), alpha);
}

Index component_of(const RatingGraph& g, const AffinityPartition& p, std::string_view user_id) {
    return p.component_of(g.user_index(user_id));
}

void write_partition_csv(const RatingGraph& g, const AffinityPartition& p, std::ostream& out) {
    out << "user_id,component_id\n";
    for (Index u = 0; u < g.num_users(); ++u) out << g.user_id(u) << ',' << p.component_of(u) << '\n';
}

}  // namespace rankforge
