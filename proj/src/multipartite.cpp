#include "rankforge/multipartite.hpp"

#include <algorithm>
#include <ostream>

namespace rankforge {

double MultipartiteResult::cluster_ranking(Index item, Index component) const {
    return components.at(static_cast<std::size_t>(component)).state.rankings[item];
}

bool MultipartiteResult::all_converged() const {
    for (const auto& c : components) {
        if (!c.state.converged) return false;
    }
    return true;
}

double display_ranking(const MultipartiteResult& res, Index item) {
    double weighted = 0.0;
    double total = 0.0;
    for (Index m : res.item_components.at(static_cast<std::size_t>(item))) {
        const auto& comp = res.components[static_cast<std::size_t>(m)];
        const auto size = static_cast<double>(comp.members.size());
        weighted += size * comp.state.rankings[item];
        total += size;
    }
    return total > 0.0 ? weighted / total : kAbsent;
}

namespace {

void finish(const RatingGraph& g, MultipartiteResult& res) {
    res.item_components.assign(static_cast<std::size_t>(g.num_items()), {});
    res.reputations = Vector::Ones(g.num_users());
    for (std::size_t m = 0; m < res.components.size(); ++m) {
        const auto& comp = res.components[m];
        for (std::size_t k = 0; k < comp.members.size(); ++k) {
            res.reputations[comp.members[k]] = comp.state.reputations[static_cast<Index>(k)];
        }
        for (Index i = 0; i < g.num_items(); ++i) {
            if (!is_absent(comp.state.rankings[i])) res.item_components[static_cast<std::size_t>(i)].push_back(static_cast<Index>(m));
        }
    }
    res.display.resize(g.num_items());
    for (Index i = 0; i < g.num_items(); ++i) res.display[i] = display_ranking(res, i);
}

void check_partition(const RatingGraph& g, const AffinityPartition& p) {
    if (p.num_users() != g.num_users()) throw DomainError("partition does not cover the graph's users");
}

}  // namespace

MultipartiteResult rank_multipartite(const RatingGraph& g, const AffinityPartition& p, const EngineConfig& cfg) {
    cfg.validate();
    check_partition(g, p);
    MultipartiteResult res;
    res.components.reserve(p.components.size());
    for (const auto& members : p.components) {
        const RatingGraph sub = g.subgraph(members);
        EngineState local = run_fixed_point(sub, cfg);
        ComponentRanking comp{members, {}};
        comp.state = local;
        comp.state.rankings = Vector::Constant(g.num_items(), kAbsent);
        for (Index j = 0; j < sub.num_items(); ++j) {
            comp.state.rankings[g.item_index(sub.item_id(j))] = local.rankings[j];
        }
        res.components.push_back(std::move(comp));
    }
    finish(g, res);
    return res;
}

MultipartiteResult rank_with_reputations(const RatingGraph& g, const AffinityPartition& p,
                                         const Vector& reputations, bool safeguard_denominator) {
    check_partition(g, p);
    if (reputations.size() != g.num_users()) throw DomainError("reputation vector size mismatch");
    if ((reputations.array() <= 0.0).any()) throw DomainError("reputations must be positive");

    const auto m = static_cast<Index>(p.components.size());
    Eigen::MatrixXd weighted = Eigen::MatrixXd::Zero(g.num_items(), m);
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(g.num_items(), m);
    for (const auto& r : g.ratings()) {
        const Index comp = p.component_of(r.user);
        weighted(r.item, comp) += r.value * reputations[r.user];
        mass(r.item, comp) += reputations[r.user];
    }

    MultipartiteResult res;
    for (Index k = 0; k < m; ++k) {
        ComponentRanking comp;
        comp.members = p.components[static_cast<std::size_t>(k)];
        comp.state.converged = true;
        comp.state.reputations.resize(static_cast<Index>(comp.members.size()));
        for (std::size_t j = 0; j < comp.members.size(); ++j) {
            comp.state.reputations[static_cast<Index>(j)] = reputations[comp.members[j]];
        }
        comp.state.rankings.resize(g.num_items());
        for (Index i = 0; i < g.num_items(); ++i) {
            const double denom = safeguard_denominator ? std::max(mass(i, k), 1.0) : mass(i, k);
            comp.state.rankings[i] = mass(i, k) > 0.0 ? weighted(i, k) / denom : kAbsent;
        }
        res.components.push_back(std::move(comp));
    }
    finish(g, res);
    return res;
}

void write_cluster_rankings_csv(const RatingGraph& g, const MultipartiteResult& res, std::ostream& out) {
    out << "item_id,component_id,ranking\n";
    for (Index i = 0; i < g.num_items(); ++i) {
        for (Index m : res.item_components[static_cast<std::size_t>(i)]) {
            out << g.item_id(i) << ',' << m << ',' << format_number(res.cluster_ranking(i, m)) << '\n';
        }
    }
}

void write_display_rankings_csv(const RatingGraph& g, const MultipartiteResult& res, std::ostream& out,
                                double scale) {
    out << "item_id,display_ranking\n";
    for (Index i = 0; i < g.num_items(); ++i) {
        if (is_absent(res.display[i])) continue;
        out << g.item_id(i) << ',' << format_number(res.display[i] * scale) << '\n';
    }
}

}  // namespace rankforge
