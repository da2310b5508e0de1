#pragma once

#include "rankforge/types.hpp"

#include <Eigen/SparseCore>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rankforge {

/// One rating as supplied by a caller, value already normalized to ]0,1].
struct RatingEntry {
    std::string user;
    std::string item;
    double value = 0.0;
    std::int64_t timestamp = 0;
};

struct Rating {
    Index user = 0;
    Index item = 0;
    double value = 0.0;
    std::int64_t timestamp = 0;
};

/// (neighbour, rating value) pair in a per-user or per-item adjacency list.
struct Link {
    Index index = 0;
    double value = 0.0;
};

/// Immutable user-item rating graph.
///
/// Ids are opaque strings mapped to dense indexes in order of first appearance.
/// Per-user lists are sorted by item index and per-item lists by user index.
/// Duplicate (user, item) entries keep the one with the latest timestamp
/// (the later entry on equal timestamps).
class RatingGraph {
public:
    RatingGraph() : RatingGraph(1, 5, {}) {}
    /// `users` are registered first, in the given order, and may have no ratings;
    /// users that only appear in `entries` follow in order of first appearance.
    RatingGraph(int r_bot, int r_top, std::vector<RatingEntry> entries,
                std::vector<std::string> users = {});

    Index num_users() const { return static_cast<Index>(user_ids_.size()); }
    Index num_items() const { return static_cast<Index>(item_ids_.size()); }
    Index num_ratings() const { return static_cast<Index>(ratings_.size()); }

    const std::string& user_id(Index u) const { return user_ids_.at(static_cast<std::size_t>(u)); }
    const std::string& item_id(Index i) const { return item_ids_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::string>& user_ids() const { return user_ids_; }
    const std::vector<std::string>& item_ids() const { return item_ids_; }

    std::optional<Index> find_user(std::string_view id) const;
    std::optional<Index> find_item(std::string_view id) const;
    Index user_index(std::string_view id) const;  ///< throws LookupError
    Index item_index(std::string_view id) const;  ///< throws LookupError

    int r_bot() const { return r_bot_; }
    int r_top() const { return r_top_; }
    /// Normalized minimum rating R_bot / R_top.
    double min_rating() const { return static_cast<double>(r_bot_) / r_top_; }
    /// Normalized rating span (R_top - R_bot) / R_top.
    double rating_span() const { return static_cast<double>(r_top_ - r_bot_) / r_top_; }
    /// Allowed normalized rating values, ascending.
    std::vector<double> rating_grid() const;

    std::span<const Link> items_of(Index u) const { return by_user_.at(static_cast<std::size_t>(u)); }
    std::span<const Link> raters_of(Index i) const { return by_item_.at(static_cast<std::size_t>(i)); }
    std::optional<double> rating(Index u, Index i) const;

    /// Ratings in insertion order.
    const std::vector<Rating>& ratings() const { return ratings_; }
    std::vector<RatingEntry> entries() const;

    /// Users x items matrix of normalized ratings.
    const Eigen::SparseMatrix<double, Eigen::RowMajor>& matrix() const { return values_; }
    /// Users x items 0/1 incidence matrix.
    const Eigen::SparseMatrix<double, Eigen::RowMajor>& pattern() const { return pattern_; }

    /// Graph restricted to `users` (kept in the given order) and their ratings.
    RatingGraph subgraph(std::span<const Index> users) const;

private:
    int r_bot_;
    int r_top_;
    std::vector<std::string> user_ids_;
    std::vector<std::string> item_ids_;
    std::unordered_map<std::string, Index> user_lookup_;
    std::unordered_map<std::string, Index> item_lookup_;
    std::vector<Rating> ratings_;
    std::vector<std::vector<Link>> by_user_;
    std::vector<std::vector<Link>> by_item_;
    Eigen::SparseMatrix<double, Eigen::RowMajor> values_;
    Eigen::SparseMatrix<double, Eigen::RowMajor> pattern_;
};

/// Reads `user_id,item_id,rating[,timestamp]` rows with integer ratings in
/// [r_bot, r_top]. A leading `user_id,...` header and `#` comment lines are skipped.
RatingGraph read_ratings_csv(std::istream& in, int r_bot, int r_top);
RatingGraph ingest(const std::filesystem::path& path, int r_bot, int r_top);

/// Writes the graph back in the input format with raw-scale ratings.
void write_ratings_csv(const RatingGraph& g, std::ostream& out);

/// Formats a double with the shortest representation that round-trips.
std::string format_number(double v);

struct ItemPopularity {
    std::vector<Index> counts;                 ///< ratings per item
    std::map<Index, Index> ratings_per_item;   ///< histogram: count -> number of items
    Index total = 0;

    /// Item with the most ratings; ties go to the lowest item index.
    std::optional<Index> most_voted() const;
    /// Items sorted by decreasing count, ties by index.
    std::vector<Index> by_popularity() const;
};

ItemPopularity popularity(const RatingGraph& g);

}  // namespace rankforge
