#include "rankforge/bribery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_set>

namespace rankforge {

namespace {

constexpr double kSlack = 1e-12;

}  // namespace

SystemMode parse_system_mode(std::string_view name) {
    if (name == "bipartite" || name == "bwa") return SystemMode::bipartite;
    if (name == "multipartite" || name == "mrs") return SystemMode::multipartite;
    throw ConfigError("unknown mode '" + std::string(name) + "' (expected bipartite or multipartite)");
}

std::string_view to_string(SystemMode m) { return m == SystemMode::bipartite ? "bwa" : "mrs"; }

EvaluationMode parse_evaluation_mode(std::string_view name) {
    if (name == "compound") return EvaluationMode::compound;
    if (name == "sequential") return EvaluationMode::sequential;
    if (name == "isolated") return EvaluationMode::isolated;
    throw ConfigError("unknown evaluation mode '" + std::string(name) + "'");
}

BribeScope parse_bribe_scope(std::string_view name) {
    if (name == "raters") return BribeScope::raters;
    if (name == "nonraters") return BribeScope::nonraters;
    if (name == "all") return BribeScope::all;
    throw ConfigError("unknown bribe scope '" + std::string(name) + "' (expected raters, nonraters or all)");
}

SweepStrategy parse_sweep_strategy(std::string_view name) {
    if (name == "sigma1") return SweepStrategy::sigma1;
    if (name == "sigma2") return SweepStrategy::sigma2;
    if (name == "sigma3") return SweepStrategy::sigma3;
    if (name == "sigma4") return SweepStrategy::sigma4;
    throw ConfigError("unknown strategy '" + std::string(name) + "' (expected sigma1..sigma4)");
}

std::string_view to_string(SweepStrategy s) {
    switch (s) {
        case SweepStrategy::sigma1: return "sigma1";
        case SweepStrategy::sigma2: return "sigma2";
        case SweepStrategy::sigma3: return "sigma3";
        case SweepStrategy::sigma4: return "sigma4";
    }
    return "?";
}

double BribingStrategy::spent() const {
    double total = 0.0;
    for (const auto& a : allocations) total += a.rho;
    return total;
}

bool BribingStrategy::is_null() const {
    return std::all_of(allocations.begin(), allocations.end(), [](const Allocation& a) { return a.rho == 0.0; });
}

void BribingStrategy::validate(const RatingGraph& g) const {
    if (item < 0 || item >= g.num_items()) throw DomainError("strategy targets an unknown item");
    std::unordered_set<Index> seen;
    for (const auto& a : allocations) {
        if (a.user < 0 || a.user >= g.num_users()) throw DomainError("strategy bribes an unknown user");
        if (!seen.insert(a.user).second) throw DomainError("user " + g.user_id(a.user) + " bribed twice");
        if (!(a.rho >= 0.0)) throw DomainError("negative allocation for user " + g.user_id(a.user));
        const auto current = g.rating(a.user, item);
        const double limit = current ? 1.0 - *current : 1.0;
        if (a.rho > limit + kSlack) {
            throw DomainError("allocation " + format_number(a.rho) + " for user " + g.user_id(a.user) +
                              " exceeds the rating headroom " + format_number(limit));
        }
    }
}

namespace {

double wealth_or_zero(const RatingGraph& g, const AffinityPartition& p, const MultipartiteResult& res, Index item) {
    std::vector<Index> raters(static_cast<std::size_t>(p.num_components()), 0);
    for (const auto& [u, value] : g.raters_of(item)) ++raters[static_cast<std::size_t>(p.component_of(u))];
    double total = 0.0;
    for (Index m : res.item_components[static_cast<std::size_t>(item)]) {
        total += static_cast<double>(raters[static_cast<std::size_t>(m)]) * res.cluster_ranking(item, m);
    }
    return total;
}

struct RaterSplit {
    std::vector<Allocation> raters;
    std::vector<Allocation> nonraters;
};

RaterSplit split(const RatingGraph& g, const BribingStrategy& sigma) {
    RaterSplit out;
    for (const auto& a : sigma.allocations) {
        if (g.rating(a.user, sigma.item)) {
            out.raters.push_back(a);
        } else if (a.rho > 0.0) {
            out.nonraters.push_back(a);
        }
    }
    return out;
}

// Totals over the raters of the item: count, reputation mass and weighted rating sum.
struct RaterMass {
    double count = 0.0;
    double alpha = 0.0;
    double weighted = 0.0;

    double mean_reputation() const { return alpha / count; }
    double ranking() const { return weighted / alpha; }
};

RaterMass rater_mass(const RatingGraph& g, const Vector& c, Index item, const AffinityPartition* p = nullptr,
                     Index component = -1) {
    RaterMass m;
    for (const auto& [u, value] : g.raters_of(item)) {
        if (p && p->component_of(u) != component) continue;
        m.count += 1.0;
        m.alpha += c[u];
        m.weighted += c[u] * value;
    }
    return m;
}

void check_reputations(const RatingGraph& g, const Vector& c) {
    if (c.size() != g.num_users()) throw DomainError("reputation vector size mismatch");
}

double raters_term(const std::vector<Allocation>& raters, const Vector& c, double mean) {
    double total = 0.0;
    for (const auto& a : raters) total += (c[a.user] / mean - 1.0) * a.rho;
    return total;
}

double nonraters_term(const std::vector<Allocation>& nonraters, const Vector& c, const RaterMass& m) {
    const double alpha = m.alpha;
    double alpha_tilde = alpha;
    double rho_total = 0.0;
    for (const auto& a : nonraters) {
        alpha_tilde += c[a.user];
        rho_total += a.rho;
    }
    const double r = m.ranking();
    const auto count = static_cast<double>(nonraters.size());
    double total = 0.0;
    for (const auto& a : nonraters) {
        const double cv = c[a.user];
        const double elementary = (alpha - m.count * cv) * (r - a.rho) / (alpha + cv);
        const double others = rho_total - a.rho;
        total += (alpha + cv) * elementary + cv * ((count - 1.0) * a.rho - others);
    }
    return total / alpha_tilde;
}

}  // namespace

double wealth(const RatingGraph& g, const Vector& rankings, Index item) {
    if (item < 0 || item >= rankings.size() || is_absent(rankings[item])) {
        throw DomainError("item has no ranking, wealth undefined");
    }
    return static_cast<double>(g.raters_of(item).size()) * rankings[item];
}

double wealth(const RatingGraph& g, const AffinityPartition& p, const MultipartiteResult& res, Index item) {
    if (item < 0 || item >= res.num_items() || res.item_components[static_cast<std::size_t>(item)].empty()) {
        throw DomainError("item has no ranking, wealth undefined");
    }
    return wealth_or_zero(g, p, res, item);
}

RatingGraph apply_strategy(const RatingGraph& g, const BribingStrategy& sigma) {
    sigma.validate(g);
    std::vector<RatingEntry> entries = g.entries();
    const std::string& item_id = g.item_id(sigma.item);
    for (const auto& a : sigma.allocations) {
        if (a.rho == 0.0) continue;
        const std::string& user_id = g.user_id(a.user);
        auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const RatingEntry& e) { return e.user == user_id && e.item == item_id; });
        if (it != entries.end()) {
            it->value = std::min(1.0, it->value + a.rho);
        } else {
            entries.push_back({user_id, item_id, std::min(1.0, a.rho), 0});
        }
    }
    return RatingGraph(g.r_bot(), g.r_top(), std::move(entries), g.user_ids());
}

BribeOutcome apply_strategy(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations,
                            const BribingStrategy& sigma, bool recompute_reputations, const EngineConfig& cfg) {
    check_reputations(g, reputations);
    RatingGraph next = apply_strategy(g, sigma);
    MultipartiteResult res = recompute_reputations ? rank_multipartite(next, p, cfg)
                                                   : rank_with_reputations(next, p, reputations,
                                                                           cfg.safeguard_denominator);
    return {std::move(next), std::move(res)};
}

WealthLedger profit_oracle(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations,
                           const BribingStrategy& sigma) {
    check_reputations(g, reputations);
    sigma.validate(g);
    WealthLedger ledger;
    ledger.initial = wealth_or_zero(g, p, rank_with_reputations(g, p, reputations), sigma.item);
    const RatingGraph next = apply_strategy(g, sigma);
    ledger.spent = sigma.spent();
    ledger.post = wealth_or_zero(next, p, rank_with_reputations(next, p, reputations), sigma.item) - ledger.spent;
    ledger.profit = ledger.post - ledger.initial;
    return ledger;
}

double profit_raters_closed_form(const RatingGraph& g, const Vector& reputations, const BribingStrategy& sigma) {
    check_reputations(g, reputations);
    sigma.validate(g);
    const auto parts = split(g, sigma);
    if (!parts.nonraters.empty()) throw DomainError("rater closed form applies to raters only");
    const auto m = rater_mass(g, reputations, sigma.item);
    if (m.count == 0.0) throw DomainError("item has no raters");
    return raters_term(parts.raters, reputations, m.mean_reputation());
}

double profit_nonraters_closed_form(const RatingGraph& g, const Vector& reputations, const BribingStrategy& sigma) {
    check_reputations(g, reputations);
    sigma.validate(g);
    const auto parts = split(g, sigma);
    if (!parts.raters.empty()) throw DomainError("non-rater closed form applies to non-raters only");
    const auto m = rater_mass(g, reputations, sigma.item);
    if (m.count == 0.0) throw DomainError("item has no raters");
    if (parts.nonraters.empty()) return 0.0;
    return nonraters_term(parts.nonraters, reputations, m);
}

double profit_mixed_closed_form(const RatingGraph& g, const Vector& reputations, const BribingStrategy& sigma) {
    check_reputations(g, reputations);
    sigma.validate(g);
    const auto parts = split(g, sigma);
    const auto m = rater_mass(g, reputations, sigma.item);
    if (m.count == 0.0) throw DomainError("item has no raters");
    const double mean = m.mean_reputation();

    double profit = raters_term(parts.raters, reputations, mean);
    if (parts.nonraters.empty()) return profit;
    profit += nonraters_term(parts.nonraters, reputations, m);

    double alpha_tilde = m.alpha;
    double dilution = 0.0;
    for (const auto& a : parts.nonraters) {
        alpha_tilde += reputations[a.user];
        dilution += 1.0 - reputations[a.user] / mean;
    }
    double lift = 0.0;
    for (const auto& a : parts.raters) lift += reputations[a.user] * a.rho;
    return profit + dilution * lift / alpha_tilde;
}

double profit_multipartite_closed_form(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations,
                                       const BribingStrategy& sigma) {
    check_reputations(g, reputations);
    sigma.validate(g);
    if (sigma.allocations.size() != 1) {
        throw UnsupportedError("multipartite closed form covers single-user strategies only");
    }
    const auto [v, rho] = sigma.allocations.front();
    const Index s = p.component_of(v);
    const auto m = rater_mass(g, reputations, sigma.item, &p, s);
    if (m.count == 0.0) return 0.0;
    const double cv = reputations[v];
    if (g.rating(v, sigma.item)) return rho * (cv / m.mean_reputation() - 1.0);
    if (rho == 0.0) return 0.0;
    return (m.alpha - m.count * cv) * (m.ranking() - rho) / (m.alpha + cv);
}

std::vector<double> evaluate_profits(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations,
                                     const BribingStrategy& sigma, EvaluationMode mode) {
    sigma.validate(g);
    if (mode == EvaluationMode::compound) return {profit_oracle(g, p, reputations, sigma).profit};
    std::vector<double> out;
    RatingGraph current = g;
    for (const auto& a : sigma.allocations) {
        const BribingStrategy single{sigma.item, {a}};
        if (mode == EvaluationMode::isolated) {
            out.push_back(profit_oracle(g, p, reputations, single).profit);
        } else {
            out.push_back(profit_oracle(current, p, reputations, single).profit);
            current = apply_strategy(current, single);
        }
    }
    return out;
}

namespace {

struct Candidate {
    Index user = 0;
    bool rater = false;
    double headroom = 0.0;
};

// Fills candidates in order with the largest admissible rho while each stays
// profitable against the running per-component totals.
std::vector<Allocation> fill_greedy(const RatingGraph& g, const AffinityPartition& p, const Vector& c, Index item,
                                    double budget, const std::vector<Candidate>& order) {
    std::vector<RaterMass> mass(static_cast<std::size_t>(p.num_components()));
    for (const auto& [u, value] : g.raters_of(item)) {
        auto& m = mass[static_cast<std::size_t>(p.component_of(u))];
        m.count += 1.0;
        m.alpha += c[u];
        m.weighted += c[u] * value;
    }
    std::vector<Allocation> out;
    double remaining = budget;
    for (const auto& cand : order) {
        if (remaining <= kSlack) break;
        auto& m = mass[static_cast<std::size_t>(p.component_of(cand.user))];
        if (m.count == 0.0) continue;
        const double cu = c[cand.user];
        if (!(cu > m.mean_reputation())) continue;
        const double rho = std::min(cand.headroom, remaining);
        if (rho <= kSlack) continue;
        if (cand.rater) {
            m.weighted += cu * rho;
        } else {
            if (!(rho > m.ranking())) continue;
            m.count += 1.0;
            m.alpha += cu;
            m.weighted += cu * rho;
        }
        out.push_back({cand.user, rho});
        remaining -= rho;
    }
    return out;
}

std::vector<Candidate> ordered_candidates(const RatingGraph& g, const Vector& c, Index item, BribeScope scope) {
    std::vector<Candidate> raters, nonraters;
    for (Index u = 0; u < g.num_users(); ++u) {
        const auto current = g.rating(u, item);
        if (current) {
            if (scope != BribeScope::nonraters) raters.push_back({u, true, 1.0 - *current});
        } else if (scope != BribeScope::raters) {
            nonraters.push_back({u, false, 1.0});
        }
    }
    auto by_reputation = [&](const Candidate& a, const Candidate& b) { return c[a.user] > c[b.user]; };
    std::stable_sort(raters.begin(), raters.end(), by_reputation);
    std::stable_sort(nonraters.begin(), nonraters.end(), by_reputation);
    raters.insert(raters.end(), nonraters.begin(), nonraters.end());
    return raters;
}

}  // namespace

GreedyResult optimal_greedy(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations, Index item,
                            double budget, BribeScope scope, int exhaustive_limit) {
    check_reputations(g, reputations);
    if (item < 0 || item >= g.num_items()) throw LookupError("unknown item");
    if (!(budget > 0.0)) throw DomainError("bribing budget must be positive");
    const auto before = rank_with_reputations(g, p, reputations);
    const double initial = wealth(g, p, before, item);
    if (budget > initial + 1e-9) {
        throw DomainError("budget " + format_number(budget) + " exceeds the seller's wealth " + format_number(initial));
    }

    const auto order = ordered_candidates(g, reputations, item, scope);
    GreedyResult out;
    out.strategy.item = item;

    // Candidates that pass the per-user test on their own, to detect cross-component choices.
    std::vector<Candidate> eligible;
    std::unordered_set<Index> components;
    for (const auto& cand : order) {
        if (!fill_greedy(g, p, reputations, item, budget, {cand}).empty()) {
            eligible.push_back(cand);
            components.insert(p.component_of(cand.user));
        }
    }

    if (components.size() <= 1) {
        out.strategy.allocations = fill_greedy(g, p, reputations, item, budget, order);
    } else {
        if (static_cast<int>(eligible.size()) > exhaustive_limit) {
            throw UnsupportedError("optimal bribing across " + std::to_string(components.size()) +
                                   " components with " + std::to_string(eligible.size()) +
                                   " candidates needs a linear program");
        }
        out.exhaustive = true;
        double best = 0.0;
        const std::size_t subsets = std::size_t{1} << eligible.size();
        for (std::size_t mask = 1; mask < subsets; ++mask) {
            std::vector<Allocation> alloc;
            double remaining = budget;
            for (std::size_t k = 0; k < eligible.size() && remaining > kSlack; ++k) {
                if (!(mask >> k & 1U)) continue;
                const double rho = std::min(eligible[k].headroom, remaining);
                alloc.push_back({eligible[k].user, rho});
                remaining -= rho;
            }
            const double profit = profit_oracle(g, p, reputations, {item, alloc}).profit;
            if (profit > best + kSlack) {
                best = profit;
                out.strategy.allocations = std::move(alloc);
            }
        }
    }

    out.ledger = profit_oracle(g, p, reputations, out.strategy);
    if (out.strategy.allocations.empty()) out.note = "no profitable strategy";
    return out;
}

bool brs_vs_mrs_condition(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations, Index item,
                          Index component) {
    check_reputations(g, reputations);
    double inside = 0.0, outside = 0.0;
    double n_inside = 0.0, n_outside = 0.0;
    for (const auto& [u, value] : g.raters_of(item)) {
        if (p.component_of(u) == component) {
            inside += reputations[u];
            n_inside += 1.0;
        } else {
            outside += reputations[u];
            n_outside += 1.0;
        }
    }
    if (n_inside == 0.0 || n_outside == 0.0) {
        throw UndefinedError("comparison needs raters both inside and outside the component");
    }
    return outside / n_outside < inside / n_inside;
}

SweepResult run_bribe_sweep(const RatingGraph& g, const AffinityPartition& p, const MultipartiteResult& state,
                            Index item, const SweepOptions& opts, const EngineConfig& cfg) {
    const bool raters_only = opts.strategy == SweepStrategy::sigma1 || opts.strategy == SweepStrategy::sigma2;
    if (opts.mode == SystemMode::multipartite && !raters_only) {
        throw ConfigError(std::string(to_string(opts.strategy)) + " is defined for the bipartite system only");
    }
    const Vector& reputations = state.reputations;
    check_reputations(g, reputations);

    std::vector<Index> order;
    for (Index u = 0; u < g.num_users(); ++u) {
        if (!raters_only || g.rating(u, item)) order.push_back(u);
    }
    if (opts.strategy == SweepStrategy::sigma1 || opts.strategy == SweepStrategy::sigma3) {
        std::mt19937_64 rng(opts.seed);
        std::shuffle(order.begin(), order.end(), rng);
    } else {
        std::stable_sort(order.begin(), order.end(),
                         [&](Index a, Index b) { return reputations[a] > reputations[b]; });
    }

    SweepResult out;
    out.label = std::string(to_string(opts.strategy)) + (opts.dynamic_reputations ? "-dynamic" : "");
    const double initial = wealth(g, p, state, item);
    const double budget = opts.budget.value_or(initial);
    out.rows.push_back({0, "", 0.0, 0.0, initial, 0.0});

    RatingGraph current = g;
    double spent = 0.0;
    int step = 0;
    for (Index u : order) {
        const auto rated = current.rating(u, item);
        const double headroom = rated ? 1.0 - *rated : 1.0;
        const double remaining = budget - spent;
        if (headroom > kSlack && remaining <= kSlack) break;
        const double rho = headroom > kSlack ? std::min(headroom, remaining) : 0.0;
        ++step;
        if (rho > 0.0) {
            current = apply_strategy(current, BribingStrategy{item, {{u, rho}}});
            spent += rho;
        }
        const MultipartiteResult res = opts.dynamic_reputations
                                           ? rank_multipartite(current, p, cfg)
                                           : rank_with_reputations(current, p, reputations, cfg.safeguard_denominator);
        const double w = wealth(current, p, res, item) - spent;
        out.rows.push_back({step, g.user_id(u), rho, spent, w, w - initial});
    }
    return out;
}

void write_sweep_header(std::ostream& out) { out << "step,user_id,rho,spent_cumulative,wealth,profit,mode,strategy\n"; }

void write_sweep_rows(const SweepResult& sweep, SystemMode mode, std::ostream& out) {
    for (const auto& row : sweep.rows) {
        out << row.step << ',' << row.user << ',' << format_number(row.rho) << ',' << format_number(row.spent) << ','
            << format_number(row.wealth) << ',' << format_number(row.profit) << ',' << to_string(mode) << ','
            << sweep.label << '\n';
    }
}

}  // namespace rankforge
