#pragma once

#include "rankforge/clustering.hpp"
#include "rankforge/engine.hpp"
#include "rankforge/rating_graph.hpp"

#include <iosfwd>
#include <vector>

namespace rankforge {

struct ComponentRanking {
    std::vector<Index> members;   ///< global user indexes
    EngineState state;            ///< rankings over global items (kAbsent when no member rated);
                                  ///< reputations aligned with `members`
};

struct MultipartiteResult {
    std::vector<ComponentRanking> components;       ///< indexed by component id
    std::vector<std::vector<Index>> item_components; ///< per item: components with a rater, ascending
    Vector reputations;                             ///< per global user, from its own component
    Vector display;                                 ///< size-weighted display ranking per item

    Index num_items() const { return static_cast<Index>(item_components.size()); }
    /// r_{i,M_m}; kAbsent when no member of component m rated i.
    double cluster_ranking(Index item, Index component) const;
    bool all_converged() const;
};

/// Runs the fixed point independently on every component's induced rating subgraph.
MultipartiteResult rank_multipartite(const RatingGraph& g, const AffinityPartition& p, const EngineConfig& cfg);

/// One ranking step per component with frozen reputations (indexed by global user).
MultipartiteResult rank_with_reputations(const RatingGraph& g, const AffinityPartition& p,
                                         const Vector& reputations, bool safeguard_denominator = false);

/// Average of the per-component rankings of `item`, weighted by component size,
/// over components where somebody rated it. kAbsent when no component ranks it.
double display_ranking(const MultipartiteResult& res, Index item);

/// item_id,component_id,ranking (defined entries only)
void write_cluster_rankings_csv(const RatingGraph& g, const MultipartiteResult& res, std::ostream& out);
/// item_id,display_ranking
void write_display_rankings_csv(const RatingGraph& g, const MultipartiteResult& res, std::ostream& out,
                                double scale = 1.0);

}  // namespace rankforge
