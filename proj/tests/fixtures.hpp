#pragma once

#include "rankforge/clustering.hpp"
#include "rankforge/rating_graph.hpp"

#include <Eigen/Core>

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace rankforge::test {

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(RANKFORGE_TEST_DATA) / name;
}

/// 3 users x 3 items, r in 1..5, every user rates i1 with 1.
inline RatingGraph unanimous_low() { return ingest(data_path("unanimous_low.csv"), 1, 5); }

/// Five users, items i and j, 1..10 scale; reputations and partition below.
inline RatingGraph two_clusters() { return ingest(data_path("two_clusters.csv"), 1, 10); }

/// Same users; only u1, u2 rated i.
inline RatingGraph one_sided() { return ingest(data_path("one_sided.csv"), 1, 10); }

/// Reputations of u1..u5 shared by both five-user fixtures.
inline Vector five_user_reputations() {
    Vector c(5);
    c << 0.4, 0.5, 0.8, 0.5, 0.6;
    return c;
}

/// {u1,u2,u3}, {u4,u5} built from a hand-written similarity matrix.
inline AffinityPartition five_user_partition() {
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(5, 5);
    s(0, 1) = s(1, 0) = 0.9;
    s(1, 2) = s(2, 1) = 0.85;
    s(0, 2) = s(2, 0) = 0.7;
    s(3, 4) = s(4, 3) = 0.95;
    s(2, 3) = s(3, 2) = 0.6;
    return partition_from_similarity(s, 0.8);
}

/// Random graph on a 1..5 grid where every user rates at least one item and
/// every item has at least one rater.
inline RatingGraph random_graph(std::mt19937_64& rng, int users, int items, double density) {
    std::bernoulli_distribution keep(density);
    std::uniform_int_distribution<int> value(1, 5);
    std::vector<RatingEntry> entries;
    for (int u = 0; u < users; ++u) {
        for (int i = 0; i < items; ++i) {
            if (keep(rng) || i == u % items || u == i % users) {
                entries.push_back({"u" + std::to_string(u), "i" + std::to_string(i), value(rng) / 5.0, 0});
            }
        }
    }
    return RatingGraph(1, 5, std::move(entries));
}

}  // namespace rankforge::test
