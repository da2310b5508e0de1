#pragma once

#include "rankforge/clustering.hpp"
#include "rankforge/engine.hpp"
#include "rankforge/multipartite.hpp"
#include "rankforge/rating_graph.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rankforge {

/// Bipartite mode uses a single component covering every user.
enum class SystemMode { bipartite, multipartite };

SystemMode parse_system_mode(std::string_view name);
std::string_view to_string(SystemMode m);

struct Allocation {
    Index user = 0;
    double rho = 0.0;
};

/// Wealth invested per user to lift one item. A bribed rater's rating becomes
/// R_ui + rho; a bribed non-rater starts rating the item at rho (rho = 0 adds nothing).
struct BribingStrategy {
    Index item = 0;
    std::vector<Allocation> allocations;   ///< application order for sequential play

    double spent() const;
    bool is_null() const;

    /// Throws DomainError on negative rho, duplicate users, unknown users/items,
    /// R_ui + rho > 1 for raters or rho > 1 for non-raters.
    void validate(const RatingGraph& g) const;
};

struct WealthLedger {
    double initial = 0.0;   ///< sum over components of raters * ranking, before
    double post = 0.0;      ///< same after the strategy, minus the amount spent
    double spent = 0.0;
    double profit = 0.0;    ///< post - initial
};

/// |U_i| * r_i. Throws DomainError when the item has no ranking.
double wealth(const RatingGraph& g, const Vector& rankings, Index item);
/// Sum over components with raters of |U_i^M| * r_i^M.
double wealth(const RatingGraph& g, const AffinityPartition& p, const MultipartiteResult& res, Index item);

/// The graph with the strategy's ratings applied (users and items keep their indexes).
RatingGraph apply_strategy(const RatingGraph& g, const BribingStrategy& sigma);

struct BribeOutcome {
    RatingGraph graph;
    MultipartiteResult result;
};

/// Applies the strategy and reranks: one ranking step per component with the
/// given reputations frozen, or the full fixed point per component when
/// `recompute_reputations` is set.
BribeOutcome apply_strategy(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations,
                            const BribingStrategy& sigma, bool recompute_reputations, const EngineConfig& cfg);

/// Ground-truth profit: applies the strategy with frozen reputations and
/// evaluates wealth before and after by definition.
WealthLedger profit_oracle(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations,
                           const BribingStrategy& sigma);

/// Every bribed user rated the item: sum of (c_u / mean c over raters - 1) * rho_u.
double profit_raters_closed_form(const RatingGraph& g, const Vector& reputations, const BribingStrategy& sigma);

/// No bribed user rated the item.
double profit_nonraters_closed_form(const RatingGraph& g, const Vector& reputations, const BribingStrategy& sigma);

/// Raters and non-raters together: the two partial profits plus a coupling term.
double profit_mixed_closed_form(const RatingGraph& g, const Vector& reputations, const BribingStrategy& sigma);

/// Single bribed user under a partition. Throws UnsupportedError for more than one user.
double profit_multipartite_closed_form(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations,
                                       const BribingStrategy& sigma);

enum class EvaluationMode {
    compound,     ///< the whole strategy at once
    sequential,   ///< each allocation against the state left by the previous ones
    isolated,     ///< each allocation against the original state
};

EvaluationMode parse_evaluation_mode(std::string_view name);

/// One profit per allocation (sequential, isolated) or a single value (compound).
/// Sequential profits sum to the compound profit.
std::vector<double> evaluate_profits(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations,
                                     const BribingStrategy& sigma, EvaluationMode mode);

enum class BribeScope { raters, nonraters, all };

BribeScope parse_bribe_scope(std::string_view name);

struct GreedyResult {
    BribingStrategy strategy;
    WealthLedger ledger;
    bool exhaustive = false;   ///< chosen by subset search across components
    std::string note;          ///< "no profitable strategy" for an empty allocation

    bool profitable() const { return !strategy.allocations.empty(); }
};

/// Bribes users by decreasing reputation with the largest admissible rho while
/// each one is still profitable given the allocations before it. Raters need a
/// reputation above their component's rater mean; non-raters additionally need
/// a component that rated the item and a ranking below the new rating. Scope
/// `all` takes raters first. Candidates spread over several components are
/// searched exhaustively (every subset, each filled by decreasing reputation)
/// when there are at most `exhaustive_limit` of them.
GreedyResult optimal_greedy(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations, Index item,
                            double budget, BribeScope scope, int exhaustive_limit = 10);

/// True iff the mean reputation of raters outside component s is below that of
/// raters inside it. Throws UndefinedError when either set is empty.
bool brs_vs_mrs_condition(const RatingGraph& g, const AffinityPartition& p, const Vector& reputations, Index item,
                          Index component);

/// sigma1: raters in random order; sigma2: raters by decreasing reputation;
/// sigma3: all users in random order; sigma4: all users by decreasing reputation.
enum class SweepStrategy { sigma1, sigma2, sigma3, sigma4 };

SweepStrategy parse_sweep_strategy(std::string_view name);
std::string_view to_string(SweepStrategy s);

struct SweepOptions {
    SweepStrategy strategy = SweepStrategy::sigma2;
    SystemMode mode = SystemMode::bipartite;
    bool dynamic_reputations = false;
    std::optional<double> budget;   ///< defaults to the initial wealth
    std::uint64_t seed = 0;
};

struct SweepRow {
    int step = 0;
    std::string user;      ///< empty for the initial row
    double rho = 0.0;
    double spent = 0.0;    ///< cumulative
    double wealth = 0.0;   ///< current wealth minus spent
    double profit = 0.0;   ///< wealth - initial wealth
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::string label;     ///< strategy name, "-dynamic" appended for recomputed reputations

    double final_wealth() const { return rows.empty() ? 0.0 : rows.back().wealth; }
};

/// Bribes users one at a time to the largest admissible rho until the budget or
/// the users run out. Users already at the top rating cost nothing and leave
/// the wealth unchanged. `state` holds the starting rankings and reputations.
SweepResult run_bribe_sweep(const RatingGraph& g, const AffinityPartition& p, const MultipartiteResult& state,
                            Index item, const SweepOptions& opts, const EngineConfig& cfg);

/// step,user_id,rho,spent_cumulative,wealth,profit,mode,strategy
void write_sweep_header(std::ostream& out);
void write_sweep_rows(const SweepResult& sweep, SystemMode mode, std::ostream& out);

}  // namespace rankforge
