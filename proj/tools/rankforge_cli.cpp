#include "rankforge/attack.hpp"
#include "rankforge/bribery.hpp"
#include "rankforge/clustering.hpp"
#include "rankforge/engine.hpp"
#include "rankforge/experiment.hpp"
#include "rankforge/multipartite.hpp"
#include "rankforge/rating_graph.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace rankforge;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNoConvergence = 3 };

// Flag values keyed by config key; only flags given on the command line are applied.
struct Overrides {
    std::map<std::string, std::string> values;
    std::vector<std::pair<std::string, CLI::Option*>> options;

    void add(CLI::App& app, const std::string& flag, const std::string& key, const std::string& help) {
        options.emplace_back(key, app.add_option(flag, values[key], help));
    }

    void apply(ExperimentConfig& cfg) const {
        for (const auto& [key, opt] : options) {
            if (opt->count() > 0) cfg.set(key, values.at(key));
        }
    }
};

void add_engine_flags(CLI::App& app, Overrides& o) {
    o.add(app, "--lambda", "lambda", "penalty weight in [0,1[");
    o.add(app, "--p", "p", "error exponent");
    o.add(app, "--decay", "decay", "f1, f2, f3 or f4");
    o.add(app, "--aggregator", "aggregator", "avg, max or min");
    o.add(app, "--epsilon", "epsilon", "convergence threshold");
    o.add(app, "--max-iters", "max_iters", "iteration cap");
    o.add(app, "--measure", "measure", "ls, cs or ks");
    o.add(app, "--alpha", "alpha", "affinity threshold");
    o.add(app, "--theta", "theta", "LS confidence threshold");
    o.add(app, "--r-bot", "r_bot", "lowest raw rating");
    o.add(app, "--r-top", "r_top", "highest raw rating");
    o.add(app, "--scale", "scale", "normalized or raw output rankings");
    o.add(app, "--seed", "seed", "RNG seed (RANKFORGE_SEED overrides)");
    o.add(app, "--out", "out", "output directory");
}

struct Context {
    std::string config_file;
    Overrides overrides;
    std::string input;
};

ExperimentConfig resolve(const Context& ctx) {
    ExperimentConfig cfg = ctx.config_file.empty() ? ExperimentConfig{} : load_config(ctx.config_file);
    ctx.overrides.apply(cfg);
    if (const char* env = std::getenv("RANKFORGE_SEED"); env && *env) cfg.set("seed", env);
    cfg.validate();
    return cfg;
}

std::ofstream open_output(const ExperimentConfig& cfg, const std::string& name, const std::string& command) {
    fs::create_directories(cfg.out);
    const fs::path path = fs::path(cfg.out) / name;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "# command=" << command << '\n';
    write_config_header(cfg, out);
    return out;
}

double output_scale(const ExperimentConfig& cfg) { return cfg.scale == "raw" ? cfg.r_top : 1.0; }

void write_rankings(const RatingGraph& g, const Vector& r, double scale, std::ostream& out) {
    out << "item_id,ranking\n";
    for (Index i = 0; i < g.num_items(); ++i) {
        if (!is_absent(r[i])) out << g.item_id(i) << ',' << format_number(r[i] * scale) << '\n';
    }
}

void write_reputations(const RatingGraph& g, const Vector& c, std::ostream& out) {
    out << "user_id,reputation\n";
    for (Index u = 0; u < g.num_users(); ++u) out << g.user_id(u) << ',' << format_number(c[u]) << '\n';
}

int cmd_rank(const Context& ctx, const std::string& baseline) {
    const ExperimentConfig cfg = resolve(ctx);
    const RatingGraph g = ingest(ctx.input, cfg.r_bot, cfg.r_top);
    const double scale = output_scale(cfg);

    if (!baseline.empty()) {
        if (baseline != "li") throw ConfigError("unknown baseline '" + baseline + "' (expected li)");
        const EngineState st = li_baseline_fixed_point(g, cfg.engine.lambda);
        auto r = open_output(cfg, "rankings.csv", "rank --baseline li");
        write_rankings(g, st.rankings, scale, r);
        auto c = open_output(cfg, "reputations.csv", "rank --baseline li");
        write_reputations(g, st.reputations, c);
        return st.converged ? kOk : kNoConvergence;
    }

    if (!convergence_guaranteed(cfg.engine, g.rating_span())) {
        std::cerr << "warning: lambda " << cfg.engine.lambda << " is outside the guaranteed convergence range\n";
    }
    if (cfg.mode == "bipartite") {
        const EngineState st = run_fixed_point(g, cfg.engine);
        auto r = open_output(cfg, "rankings.csv", "rank");
        r << "# iterations=" << st.iterations << " converged=" << (st.converged ? "true" : "false") << '\n';
        write_rankings(g, st.rankings, scale, r);
        auto c = open_output(cfg, "reputations.csv", "rank");
        write_reputations(g, st.reputations, c);
        return st.converged ? kOk : kNoConvergence;
    }

    const DeflateCompressor compressor;
    const AffinityPartition p = build_affinity(g, cfg.measure, cfg.similarity, cfg.alpha, compressor);
    const MultipartiteResult res = rank_multipartite(g, p, cfg.engine);
    auto part = open_output(cfg, "partition.csv", "rank");
    write_partition_csv(g, p, part);
    auto clusters = open_output(cfg, "cluster_rankings.csv", "rank");
    clusters << "# scale=" << cfg.scale << '\n';
    write_cluster_rankings_csv(g, res, clusters);
    auto display = open_output(cfg, "display_rankings.csv", "rank");
    write_display_rankings_csv(g, res, display, scale);
    auto c = open_output(cfg, "reputations.csv", "rank");
    write_reputations(g, res.reputations, c);
    return res.all_converged() ? kOk : kNoConvergence;
}

int cmd_attack_sweep(const Context& ctx) {
    const ExperimentConfig cfg = resolve(ctx);
    const RatingGraph g = ingest(ctx.input, cfg.r_bot, cfg.r_top);
    const auto rows = run_attack_sweep(g, cfg);
    auto out = open_output(cfg, "attack_sweep.csv", "attack-sweep");
    out << "# target=" << g.item_id(resolve_target(g, cfg.target)) << '\n';
    out << "# tau: pairs tied in either ranking count as neither concordant nor discordant; "
           "items ranked in only one ranking are dropped\n";
    out << "# reputation attack fillers: nearest grid value, midpoints rounded down\n";
    write_attack_sweep_csv(rows, output_scale(cfg), out);
    return kOk;
}

int cmd_bribe(const Context& ctx) {
    const ExperimentConfig cfg = resolve(ctx);
    const RatingGraph g = ingest(ctx.input, cfg.r_bot, cfg.r_top);
    const auto sweeps = run_bribe_experiment(g, cfg);
    auto out = open_output(cfg, "bribe_sweep.csv", "bribe");
    out << "# target=" << g.item_id(resolve_target(g, cfg.target)) << '\n';
    write_sweep_header(out);
    for (const auto& [mode, sweep] : sweeps) write_sweep_rows(sweep, mode, out);
    return kOk;
}

int cmd_gen_synthetic(const Context& ctx, bool dataset_a) {
    ExperimentConfig cfg = resolve(ctx);
    if (dataset_a) {
        cfg.users = 5130;
        cfg.items = 1685;
        cfg.ratings = 37126;
    }
    SyntheticSpec spec{cfg.users, cfg.items, cfg.ratings, cfg.groups, cfg.noise, cfg.skew, cfg.r_bot, cfg.r_top, cfg.seed};
    const RatingGraph g = gen_synthetic(spec);
    auto out = open_output(cfg, "synthetic.csv", "gen-synthetic");
    write_ratings_csv(g, out);
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reputation-based ranking, clustering, attack and bribery experiments"};
    app.require_subcommand(1);

    Context rank_ctx, attack_ctx, bribe_ctx, synth_ctx;
    std::string baseline;
    bool dataset_a = false;

    auto* rank = app.add_subcommand("rank", "rank items of a ratings CSV");
    rank->add_option("input", rank_ctx.input, "user_id,item_id,rating[,timestamp] CSV")->required();
    rank->add_option("--config", rank_ctx.config_file, "key=value config file");
    rank_ctx.overrides.add(*rank, "--mode", "mode", "bipartite or multipartite");
    add_engine_flags(*rank, rank_ctx.overrides);
    rank->add_option("--baseline", baseline, "comparator scheme (li)");

    auto* attack = app.add_subcommand("attack-sweep", "robustness under injected attacks");
    attack->add_option("input", attack_ctx.input, "ratings CSV")->required();
    attack->add_option("--config", attack_ctx.config_file, "key=value config file");
    add_engine_flags(*attack, attack_ctx.overrides);
    attack_ctx.overrides.add(*attack, "--attack", "attack", "random_spam, love_hate or reputation");
    attack_ctx.overrides.add(*attack, "--direction", "direction", "push or nuke");
    attack_ctx.overrides.add(*attack, "--target", "target", "target item id (default: most voted)");
    attack_ctx.overrides.add(*attack, "--proportions", "proportions", "comma-separated attacker proportions");
    attack_ctx.overrides.add(*attack, "--methods", "methods", "comma-separated: li,bwa,mrs-ls,mrs-cs,mrs-ks");
    attack_ctx.overrides.add(*attack, "--alphas", "alphas", "comma-separated alpha sensitivity list");
    attack_ctx.overrides.add(*attack, "--workers", "workers", "worker threads (0: all cores)");

    auto* bribe = app.add_subcommand("bribe", "wealth evolution under bribing strategies");
    bribe->add_option("input", bribe_ctx.input, "ratings CSV")->required();
    bribe->add_option("--config", bribe_ctx.config_file, "key=value config file");
    add_engine_flags(*bribe, bribe_ctx.overrides);
    bribe_ctx.overrides.add(*bribe, "--target", "target", "target item id (default: most voted)");
    bribe_ctx.overrides.add(*bribe, "--strategies", "strategies", "comma-separated sigma1..sigma4");
    bribe_ctx.overrides.add(*bribe, "--dynamic", "dynamic", "also recompute reputations after each bribe");
    bribe_ctx.overrides.add(*bribe, "--budget", "budget", "bribing budget (default: initial wealth)");

    auto* synth = app.add_subcommand("gen-synthetic", "seeded dataset with planted preference groups");
    synth->add_option("--config", synth_ctx.config_file, "key=value config file");
    for (const auto& [flag, key] : std::vector<std::pair<std::string, std::string>>{
             {"--users", "users"}, {"--items", "items"}, {"--ratings", "ratings"}, {"--groups", "groups"},
             {"--noise", "noise"}, {"--skew", "skew"}, {"--r-bot", "r_bot"}, {"--r-top", "r_top"},
             {"--seed", "seed"}, {"--out", "out"}}) {
        synth_ctx.overrides.add(*synth, flag, key, key);
    }
    synth->add_flag("--dataset-a", dataset_a, "5130 users, 1685 items, 37126 ratings");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*rank) return cmd_rank(rank_ctx, baseline);
        if (*attack) return cmd_attack_sweep(attack_ctx);
        if (*bribe) return cmd_bribe(bribe_ctx);
        if (*synth) return cmd_gen_synthetic(synth_ctx, dataset_a);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}
