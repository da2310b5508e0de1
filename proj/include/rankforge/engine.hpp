#pragma once

#include "rankforge/rating_graph.hpp"
#include "rankforge/types.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace rankforge {

/// How a user's per-item errors |R_ui - r_i|^p are combined.
enum class Aggregator { avg, max, min };

/// Penalty weight as a function of the number of items a user rated.
enum class Decay { f1, f2, f3, f4 };

Aggregator parse_aggregator(std::string_view name);
Decay parse_decay(std::string_view name);
std::string_view to_string(Aggregator a);
std::string_view to_string(Decay d);

struct EngineConfig {
    double lambda = 0.3;   ///< penalty weight, [0, 1[
    int p = 1;             ///< error exponent
    Aggregator aggregator = Aggregator::avg;
    Decay decay = Decay::f1;
    double upsilon = 0.5;  ///< lowest penalization (f3)
    int s = 5;             ///< item-count midpoint (f3)
    double epsilon = 1e-9;
    int max_iters = 1000;
    /// Normalize rankings by max(sum of reputations, 1) instead of the plain sum.
    bool safeguard_denominator = false;

    /// Throws ConfigError on out-of-range fields.
    void validate() const;
};

/// True when the fixed point is a contraction: lambda < 1 / (1 + span), or the
/// safeguarded denominator is on.
bool convergence_guaranteed(const EngineConfig& cfg, double rating_span);

/// Upper bound lambda / (1 - span * lambda) on the per-iteration contraction of
/// the ranking sup-norm change.
double contraction_bound(double lambda, double rating_span);

struct EngineState {
    Vector reputations;             ///< per user, in ]0,1]
    Vector rankings;                ///< per item, kAbsent when nobody rated it
    int iterations = 0;             ///< number of reputation/ranking updates
    bool converged = false;
    double final_delta = 0.0;       ///< last sup-norm ranking change
    std::vector<double> deltas;     ///< sup-norm ranking change per iteration

    /// Largest observed ratio deltas[k+1] / deltas[k]; 0 with fewer than two deltas.
    double measured_contraction() const;
};

double decay_eval(Decay kind, double item_count, double lambda, double upsilon, int s);

/// Reputation-weighted mean of each item's ratings. Items without raters are kAbsent.
Vector ranking_step(const RatingGraph& g, const Vector& reputations, bool safeguard_denominator = false);

/// c_u = 1 - f(|I_u|) * e_u(r). Users without ratings get 1.
Vector reputation_step(const RatingGraph& g, const Vector& rankings, const EngineConfig& cfg);

/// Alternates ranking and reputation updates until the sup-norm ranking change
/// drops to cfg.epsilon or cfg.max_iters is reached. Starts from all-ones
/// reputations unless `initial` is given.
EngineState run_fixed_point(const RatingGraph& g, const EngineConfig& cfg,
                            const std::optional<Vector>& initial = std::nullopt);

/// Comparator scheme that divides the weighted rating sum by the rater count
/// instead of the reputation sum (L1-AVG reputations).
EngineState li_baseline_fixed_point(const RatingGraph& g, double lambda, double epsilon = 1e-12,
                                    int max_iters = 10000);

/// Plain mean rating per item (kAbsent for unrated items).
Vector arithmetic_average(const RatingGraph& g);

/// max_i |a_i - b_i| over entries defined in both vectors.
double sup_norm_change(const Vector& a, const Vector& b);

}  // namespace rankforge
