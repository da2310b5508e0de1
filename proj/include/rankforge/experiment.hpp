#pragma once

#include "rankforge/attack.hpp"
#include "rankforge/bribery.hpp"
#include "rankforge/engine.hpp"
#include "rankforge/rating_graph.hpp"
#include "rankforge/similarity.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rankforge {

/// Every tunable of a run. Serialized as `key=value` lines; `#` starts a comment.
struct ExperimentConfig {
    // ranking
    std::string mode = "bipartite";        ///< bipartite or multipartite
    EngineConfig engine;
    Measure measure = Measure::ls;
    SimilarityParams similarity;
    double alpha = 0.8;
    int r_bot = 1;
    int r_top = 5;
    std::string scale = "normalized";      ///< normalized or raw (multiplies rankings by r_top)

    // attacks
    AttackKind attack = AttackKind::love_hate;
    AttackDirection direction = AttackDirection::nuke;
    std::string target;                    ///< empty: most voted item
    std::vector<double> proportions = {0.0, 0.25, 0.5, 0.75};
    std::vector<std::string> methods = {"li", "bwa", "mrs-ls", "mrs-cs", "mrs-ks"};
    std::vector<double> alphas;            ///< alpha sensitivity list; empty: just `alpha`
    int filler_count = 9;
    double poisson_lambda = 5.0;
    int workers = 0;                       ///< 0: hardware concurrency

    // bribery
    std::vector<std::string> strategies = {"sigma1", "sigma2", "sigma3", "sigma4"};
    bool dynamic = false;
    std::optional<double> budget;

    // synthetic data
    Index users = 200;
    Index items = 50;
    Index ratings = 4000;
    int groups = 2;
    double noise = 0.0;
    double skew = 0.0;

    std::uint64_t seed = 42;
    std::string out = "rankforge-out";

    /// Sets one key from its text form. Throws ConfigError for unknown keys or bad values.
    void set(const std::string& key, const std::string& value);
    /// Canonical sorted key=value form of every field.
    std::map<std::string, std::string> to_map() const;
    std::string canonical() const;
    /// FNV-1a 64 of canonical(), as 16 hex digits.
    std::string hash() const;
    void validate() const;
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::filesystem::path& path);

/// `# key=value` lines with the config hash, for output file headers.
void write_config_header(const ExperimentConfig& cfg, std::ostream& out);

struct SyntheticSpec {
    Index users = 200;
    Index items = 50;
    Index ratings = 4000;
    int groups = 2;
    double noise = 0.0;   ///< probability a rating is drawn uniformly instead of from the group profile
    double skew = 0.0;    ///< item weights fall off as 1/(rank+1)^skew
    int r_bot = 1;
    int r_top = 5;
    std::uint64_t seed = 42;
};

/// Planted preference groups: user u belongs to group u % groups. Group 0 rates
/// each item one step inside the low or high end of the scale, group 1 mirrors
/// it and further groups are uniform. Rating counts per user differ by at most
/// one, and every item is rated when ratings >= items.
RatingGraph gen_synthetic(const SyntheticSpec& spec);

struct AttackSweepRow {
    std::string method;
    double alpha = kAbsent;       ///< kAbsent for non-clustered methods
    double proportion = 0.0;
    Index attackers = 0;
    std::optional<double> tau;
    double target_ranking = kAbsent;
    double clean_target_ranking = kAbsent;
};

/// Clean vs attacked rankings for every (method, alpha, proportion) point.
/// Point k of the proportion list uses seed + k, so every method faces the
/// same random attack draw. Rows come back in (method, alpha, proportion) order.
std::vector<AttackSweepRow> run_attack_sweep(const RatingGraph& g, const ExperimentConfig& cfg);

void write_attack_sweep_csv(const std::vector<AttackSweepRow>& rows, double scale, std::ostream& out);

/// All requested strategies in the bipartite system, sigma1/sigma2 in the
/// multipartite one, each frozen and (with cfg.dynamic) recomputed.
std::vector<std::pair<SystemMode, SweepResult>> run_bribe_experiment(const RatingGraph& g,
                                                                     const ExperimentConfig& cfg);

/// Target item from cfg.target, or the most voted item.
Index resolve_target(const RatingGraph& g, const std::string& target);

}  // namespace rankforge
