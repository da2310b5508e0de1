#pragma once

#include "rankforge/clustering.hpp"
#include "rankforge/multipartite.hpp"
#include "rankforge/rating_graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rankforge {

struct PairCounts {
    std::int64_t concordant = 0;
    std::int64_t discordant = 0;
};

/// Concordant/discordant pair counts in O(n log n). Pairs tied in either
/// vector count as neither.
PairCounts concordance(std::span<const double> x, std::span<const double> y);

/// (C - D) / (C + D). std::nullopt when every pair is tied (C + D = 0).
/// Throws DomainError on length mismatch, fewer than two entries or NaN input.
std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y);

/// Tau over the entries defined (not kAbsent) in both vectors; nullopt when
/// fewer than two remain or all pairs tie.
std::optional<double> kendall_tau_defined(const Vector& x, const Vector& y);

struct ClusterTau {
    Index size = 0;
    std::optional<double> tau;
};

/// Size-weighted mean of the defined per-cluster taus.
std::optional<double> generalized_tau(std::span<const ClusterTau> clusters);

/// Per-cluster tau between two results computed on the same partition.
std::vector<ClusterTau> cluster_taus(const MultipartiteResult& a, const MultipartiteResult& b);
std::optional<double> generalized_tau(const MultipartiteResult& a, const MultipartiteResult& b);

/// Tau between clean and attacked display (or plain) rankings, restricted to
/// items ranked in both. Items are matched by id.
std::optional<double> robustness_tau(const RatingGraph& clean_graph, const Vector& clean,
                                     const RatingGraph& attacked_graph, const Vector& attacked);

/// Tau of the rankings against the arithmetic-average ranking.
std::optional<double> effectiveness(const RatingGraph& g, const Vector& rankings);
/// Cluster-weighted effectiveness, each cluster against its own arithmetic average.
std::optional<double> effectiveness(const RatingGraph& g, const AffinityPartition& p,
                                    const MultipartiteResult& res);

}  // namespace rankforge
