#pragma once

#include "rankforge/rating_graph.hpp"
#include "rankforge/similarity.hpp"
#include "rankforge/types.hpp"

#include <Eigen/Core>

#include <iosfwd>
#include <string_view>
#include <vector>

namespace rankforge {

/// Thresholded user-affinity graph and its connected components.
///
/// Components are numbered by their smallest member index; members are sorted.
struct AffinityPartition {
    double alpha = 0.0;
    std::vector<SimilarityEdge> edges;            ///< pairs with similarity > alpha
    std::vector<std::vector<Index>> components;
    std::vector<Index> component_index;           ///< per user

    Index num_users() const { return static_cast<Index>(component_index.size()); }
    Index num_components() const { return static_cast<Index>(components.size()); }
    Index component_of(Index u) const;            ///< throws LookupError
    Index component_size(Index m) const { return static_cast<Index>(components.at(static_cast<std::size_t>(m)).size()); }
};

/// Similarities within this distance above alpha count as equal to it, so that
/// rounding in the similarity sums cannot create an edge.
inline constexpr double kThresholdSlack = 1e-12;

/// Builds the partition from precomputed edges; keeps those with value > alpha + kThresholdSlack.
AffinityPartition partition_from_edges(Index num_users, const std::vector<SimilarityEdge>& edges, double alpha);

/// Dense similarity matrix variant (upper triangle is read).
AffinityPartition partition_from_similarity(const Eigen::MatrixXd& similarity, double alpha);

/// Every user in one component (the bipartite degenerate case).
AffinityPartition single_component(Index num_users);

AffinityPartition build_affinity(const RatingGraph& g, Measure measure, const SimilarityParams& params,
                                 double alpha, const Compressor& compressor);

Index component_of(const RatingGraph& g, const AffinityPartition& p, std::string_view user_id);

/// user_id,component_id
void write_partition_csv(const RatingGraph& g, const AffinityPartition& p, std::ostream& out);

}  // namespace rankforge
