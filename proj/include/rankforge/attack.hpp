#pragma once

#include "rankforge/rating_graph.hpp"
#include "rankforge/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rankforge {

enum class AttackKind { random_spam, love_hate, reputation };
enum class AttackDirection { push, nuke };

AttackKind parse_attack_kind(std::string_view name);
AttackDirection parse_attack_direction(std::string_view name);
std::string_view to_string(AttackKind k);
std::string_view to_string(AttackDirection d);

struct AttackSpec {
    AttackKind kind = AttackKind::random_spam;
    /// Share of the total rating count (spam) or of the target's rater count (attacks), in [0, 0.75].
    double proportion = 0.0;
    std::string target;    ///< item id; attack kinds only
    AttackDirection direction = AttackDirection::nuke;
    int filler_count = 9;
    double poisson_lambda = 5.0;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ManifestRow {
    std::string attacker;
    std::string item;
    double value = 0.0;   ///< normalized
    std::string role;     ///< target, filler or spam
};

struct AttackResult {
    RatingGraph graph;                 ///< original users and items first, attackers appended
    std::vector<std::string> attackers;
    std::vector<ManifestRow> manifest;
    std::vector<std::string> notes;
};

/// ceil(proportion * n), robust to representation error in the product.
Index attack_size(double proportion, Index n);

/// Grid value nearest to `ranking`; exact midpoints go to the lower value.
double nearest_grid_value(const RatingGraph& g, double ranking);

/// Adds ceil(p*|R|) ratings from fresh spammers. Each spammer rates 1 + Poisson(lambda)
/// distinct items drawn by rating-count weight (the last spammer is truncated);
/// values are uniform over the rating grid.
AttackResult gen_random_spam(const RatingGraph& g, const AttackSpec& spec);

/// Adds ceil(p*|U_target|) attackers, each rating the target at one extreme and
/// filler_count random other items at the opposite extreme.
AttackResult gen_love_hate(const RatingGraph& g, const AttackSpec& spec);

/// Adds ceil(p*|U_target|) attackers that copy the current ranking (nearest grid
/// value) on the filler_count most popular non-target items, then hit the target.
/// `current_rankings` is indexed by the items of `g`.
AttackResult gen_reputation_attack(const RatingGraph& g, const AttackSpec& spec, const Vector& current_rankings);

/// Dispatches on spec.kind; `current_rankings` is only read by the reputation attack.
AttackResult generate_attack(const RatingGraph& g, const AttackSpec& spec, const Vector& current_rankings);

/// attacker_id,item_id,rating,role with raw-scale ratings.
void write_manifest_csv(const RatingGraph& g, const AttackResult& res, std::ostream& out);

}  // namespace rankforge
