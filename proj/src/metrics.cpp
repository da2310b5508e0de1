#include "rankforge/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rankforge {

namespace {

std::int64_t tied_pairs(std::int64_t run) { return run * (run - 1) / 2; }

// Sorts `v` ascending and returns the number of strict inversions.
std::int64_t count_inversions(std::vector<double>& v, std::vector<double>& scratch, std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::int64_t swaps = count_inversions(v, scratch, lo, mid) + count_inversions(v, scratch, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            swaps += static_cast<std::int64_t>(mid - i);
            scratch[k++] = v[j++];
        } else {
            scratch[k++] = v[i++];
        }
    }
    while (i < mid) scratch[k++] = v[i++];
    while (j < hi) scratch[k++] = v[j++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo), scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return swaps;
}

}  // namespace

PairCounts concordance(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("kendall tau needs aligned vectors");
    const std::size_t n = x.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (std::isnan(x[k]) || std::isnan(y[k])) throw DomainError("kendall tau input contains NaN");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x[a] < x[b] || (x[a] == x[b] && y[a] < y[b]);
    });

    const auto total = tied_pairs(static_cast<std::int64_t>(n));
    std::int64_t tied_x = 0, tied_xy = 0;
    for (std::size_t k = 0; k < n;) {
        std::size_t end_x = k;
        while (end_x < n && x[order[end_x]] == x[order[k]]) ++end_x;
        tied_x += tied_pairs(static_cast<std::int64_t>(end_x - k));
        for (std::size_t j = k; j < end_x;) {
            std::size_t end_xy = j;
            while (end_xy < end_x && y[order[end_xy]] == y[order[j]]) ++end_xy;
            tied_xy += tied_pairs(static_cast<std::int64_t>(end_xy - j));
            j = end_xy;
        }
        k = end_x;
    }

    std::vector<double> ys(n), scratch(n);
    for (std::size_t k = 0; k < n; ++k) ys[k] = y[order[k]];
    const std::int64_t discordant = count_inversions(ys, scratch, 0, n);

    std::int64_t tied_y = 0;
    for (std::size_t k = 0; k < n;) {
        std::size_t end = k;
        while (end < n && ys[end] == ys[k]) ++end;
        tied_y += tied_pairs(static_cast<std::int64_t>(end - k));
        k = end;
    }
    return {total - tied_x - tied_y + tied_xy - discordant, discordant};
}

std::optional<double> kendall_tau(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("kendall tau needs aligned vectors");
    if (x.size() < 2) throw DomainError("kendall tau needs at least two entries");
    const auto [c, d] = concordance(x, y);
    if (c + d == 0) return std::nullopt;
    return static_cast<double>(c - d) / static_cast<double>(c + d);
}

std::optional<double> kendall_tau_defined(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw DomainError("kendall tau needs aligned vectors");
    std::vector<double> a, b;
    for (Index i = 0; i < x.size(); ++i) {
        if (is_absent(x[i]) || is_absent(y[i])) continue;
        a.push_back(x[i]);
        b.push_back(y[i]);
    }
    if (a.size() < 2) return std::nullopt;
    return kendall_tau(a, b);
}

std::optional<double> generalized_tau(std::span<const ClusterTau> clusters) {
    double weighted = 0.0;
    double total = 0.0;
    for (const auto& c : clusters) {
        if (!c.tau) continue;
        weighted += static_cast<double>(c.size) * *c.tau;
        total += static_cast<double>(c.size);
    }
    if (total == 0.0) return std::nullopt;
    return weighted / total;
}

std::vector<ClusterTau> cluster_taus(const MultipartiteResult& a, const MultipartiteResult& b) {
    if (a.components.size() != b.components.size() || a.num_items() != b.num_items()) {
        throw DomainError("generalized tau needs results over the same partition and items");
    }
    std::vector<ClusterTau> out;
    for (std::size_t m = 0; m < a.components.size(); ++m) {
        if (a.components[m].members != b.components[m].members) {
            throw DomainError("generalized tau needs results over the same partition");
        }
        out.push_back({static_cast<Index>(a.components[m].members.size()),
                       kendall_tau_defined(a.components[m].state.rankings, b.components[m].state.rankings)});
    }
    return out;
}

std::optional<double> generalized_tau(const MultipartiteResult& a, const MultipartiteResult& b) {
    const auto taus = cluster_taus(a, b);
    return generalized_tau(taus);
}

std::optional<double> robustness_tau(const RatingGraph& clean_graph, const Vector& clean,
                                     const RatingGraph& attacked_graph, const Vector& attacked) {
    std::vector<double> a, b;
    for (Index i = 0; i < clean_graph.num_items(); ++i) {
        if (is_absent(clean[i])) continue;
        auto j = attacked_graph.find_item(clean_graph.item_id(i));
        if (!j || is_absent(attacked[*j])) continue;
        a.push_back(clean[i]);
        b.push_back(attacked[*j]);
    }
    if (a.size() < 2) return std::nullopt;
    return kendall_tau(a, b);
}

std::optional<double> effectiveness(const RatingGraph& g, const Vector& rankings) {
    return kendall_tau_defined(rankings, arithmetic_average(g));
}

std::optional<double> effectiveness(const RatingGraph& g, const AffinityPartition& p,
                                    const MultipartiteResult& res) {
    const auto average = rank_with_reputations(g, p, Vector::Ones(g.num_users()));
    const auto taus = cluster_taus(res, average);
    return generalized_tau(taus);
}

}  // namespace rankforge
