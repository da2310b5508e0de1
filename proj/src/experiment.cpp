#include "rankforge/experiment.hpp"

#include "rankforge/clustering.hpp"
#include "rankforge/metrics.hpp"
#include "rankforge/multipartite.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <functional>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>
#include <thread>

namespace rankforge {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

double to_double(const std::string& key, const std::string& text) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
        throw ConfigError("key '" + key + "' expects a number, got '" + text + "'");
    }
    return v;
}

template <typename Int>
Int to_integer(const std::string& key, const std::string& text) {
    Int v = 0;
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError("key '" + key + "' expects an integer, got '" + text + "'");
    return v;
}

bool to_bool(const std::string& key, const std::string& text) {
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError("key '" + key + "' expects true or false, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) {
        part = trim(part);
        if (!part.empty()) out.push_back(part);
    }
    return out;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& part : split_list(text)) out.push_back(to_double(key, part));
    return out;
}

std::string join(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) {
        if (!out.empty()) out.push_back(',');
        out += p;
    }
    return out;
}

std::string join(const std::vector<double>& values) {
    std::vector<std::string> parts;
    for (double v : values) parts.push_back(format_number(v));
    return join(parts);
}

const std::vector<std::string>& known_methods() {
    static const std::vector<std::string> methods = {"li", "bwa", "mrs-ls", "mrs-cs", "mrs-ks"};
    return methods;
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& raw) {
    const std::string value = trim(raw);
    if (key == "mode") {
        parse_system_mode(value);
        mode = value == "mrs" ? "multipartite" : value == "bwa" ? "bipartite" : value;
    } else if (key == "lambda") {
        engine.lambda = to_double(key, value);
    } else if (key == "p") {
        engine.p = to_integer<int>(key, value);
    } else if (key == "aggregator") {
        engine.aggregator = parse_aggregator(value);
    } else if (key == "decay") {
        engine.decay = parse_decay(value);
    } else if (key == "upsilon") {
        engine.upsilon = to_double(key, value);
    } else if (key == "s") {
        engine.s = to_integer<int>(key, value);
    } else if (key == "epsilon") {
        engine.epsilon = to_double(key, value);
    } else if (key == "max_iters") {
        engine.max_iters = to_integer<int>(key, value);
    } else if (key == "safeguard") {
        engine.safeguard_denominator = to_bool(key, value);
    } else if (key == "measure") {
        measure = parse_measure(value);
    } else if (key == "theta") {
        similarity.theta = to_integer<int>(key, value);
    } else if (key == "alpha") {
        alpha = to_double(key, value);
    } else if (key == "r_bot") {
        r_bot = to_integer<int>(key, value);
    } else if (key == "r_top") {
        r_top = to_integer<int>(key, value);
    } else if (key == "scale") {
        if (value != "normalized" && value != "raw") throw ConfigError("scale must be normalized or raw");
        scale = value;
    } else if (key == "attack") {
        attack = parse_attack_kind(value);
    } else if (key == "direction") {
        direction = parse_attack_direction(value);
    } else if (key == "target") {
        target = value;
    } else if (key == "proportions") {
        proportions = to_doubles(key, value);
    } else if (key == "methods") {
        methods = split_list(value);
    } else if (key == "alphas") {
        alphas = to_doubles(key, value);
    } else if (key == "filler_count") {
        filler_count = to_integer<int>(key, value);
    } else if (key == "poisson_lambda") {
        poisson_lambda = to_double(key, value);
    } else if (key == "workers") {
        workers = to_integer<int>(key, value);
    } else if (key == "strategies") {
        strategies = split_list(value);
    } else if (key == "dynamic") {
        dynamic = to_bool(key, value);
    } else if (key == "budget") {
        if (value.empty() || value == "wealth") {
            budget.reset();
        } else {
            budget = to_double(key, value);
        }
    } else if (key == "users") {
        users = to_integer<Index>(key, value);
    } else if (key == "items") {
        items = to_integer<Index>(key, value);
    } else if (key == "ratings") {
        ratings = to_integer<Index>(key, value);
    } else if (key == "groups") {
        groups = to_integer<int>(key, value);
    } else if (key == "noise") {
        noise = to_double(key, value);
    } else if (key == "skew") {
        skew = to_double(key, value);
    } else if (key == "seed") {
        seed = to_integer<std::uint64_t>(key, value);
    } else if (key == "out") {
        out = value;
    } else {
        throw ConfigError("unknown config key '" + key + "'");
    }
}

std::map<std::string, std::string> ExperimentConfig::to_map() const {
    return {
        {"mode", mode},
        {"lambda", format_number(engine.lambda)},
        {"p", std::to_string(engine.p)},
        {"aggregator", std::string(to_string(engine.aggregator))},
        {"decay", std::string(to_string(engine.decay))},
        {"upsilon", format_number(engine.upsilon)},
        {"s", std::to_string(engine.s)},
        {"epsilon", format_number(engine.epsilon)},
        {"max_iters", std::to_string(engine.max_iters)},
        {"safeguard", engine.safeguard_denominator ? "true" : "false"},
        {"measure", std::string(to_string(measure))},
        {"theta", std::to_string(similarity.theta)},
        {"alpha", format_number(alpha)},
        {"r_bot", std::to_string(r_bot)},
        {"r_top", std::to_string(r_top)},
        {"scale", scale},
        {"attack", std::string(to_string(attack))},
        {"direction", std::string(to_string(direction))},
        {"target", target},
        {"proportions", join(proportions)},
        {"methods", join(methods)},
        {"alphas", join(alphas)},
        {"filler_count", std::to_string(filler_count)},
        {"poisson_lambda", format_number(poisson_lambda)},
        {"workers", std::to_string(workers)},
        {"strategies", join(strategies)},
        {"dynamic", dynamic ? "true" : "false"},
        {"budget", budget ? format_number(*budget) : "wealth"},
        {"users", std::to_string(users)},
        {"items", std::to_string(items)},
        {"ratings", std::to_string(ratings)},
        {"groups", std::to_string(groups)},
        {"noise", format_number(noise)},
        {"skew", format_number(skew)},
        {"seed", std::to_string(seed)},
        {"out", out},
    };
}

std::string ExperimentConfig::canonical() const {
    std::string text;
    for (const auto& [k, v] : to_map()) {
        if (k == "out" || k == "workers") continue;  // do not change results
        text += k + "=" + v + "\n";
    }
    return text;
}

std::string ExperimentConfig::hash() const {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : canonical()) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void ExperimentConfig::validate() const {
    engine.validate();
    if (mode != "bipartite" && mode != "multipartite") throw ConfigError("mode must be bipartite or multipartite");
    if (scale != "normalized" && scale != "raw") throw ConfigError("scale must be normalized or raw");
    if (similarity.theta < 1) throw ConfigError("theta must be at least 1");
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ConfigError("alpha must lie in [0, 1]");
    for (double a : alphas) {
        if (!(a >= 0.0 && a <= 1.0)) throw ConfigError("alphas must lie in [0, 1]");
    }
    if (r_bot < 1 || r_bot >= r_top) throw ConfigError("rating bounds must satisfy 1 <= r_bot < r_top");
    for (double p : proportions) {
        if (!(p >= 0.0 && p <= 0.75)) throw ConfigError("proportions must lie in [0, 0.75]");
    }
    for (const auto& m : methods) {
        if (std::find(known_methods().begin(), known_methods().end(), m) == known_methods().end()) {
            throw ConfigError("unknown method '" + m + "' (expected li, bwa, mrs-ls, mrs-cs or mrs-ks)");
        }
    }
    for (const auto& s : strategies) parse_sweep_strategy(s);
    if (filler_count < 0) throw ConfigError("filler_count must be non-negative");
    if (!(poisson_lambda > 0.0)) throw ConfigError("poisson_lambda must be positive");
    if (workers < 0) throw ConfigError("workers must be non-negative");
    if (budget && !(*budget > 0.0)) throw ConfigError("budget must be positive");
    if (users < 1 || items < 1 || ratings < 1 || groups < 1) throw ConfigError("synthetic sizes must be at least 1");
    if (!(noise >= 0.0 && noise <= 1.0)) throw ConfigError("noise must lie in [0, 1]");
    if (!(skew >= 0.0)) throw ConfigError("skew must be non-negative");
}

ExperimentConfig parse_config(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string text = trim(line.substr(0, line.find('#')));
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key=value");
        try {
            cfg.set(trim(text.substr(0, eq)), text.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError("line " + std::to_string(number) + ": " + e.what());
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return parse_config(in);
}

void write_config_header(const ExperimentConfig& cfg, std::ostream& out) {
    out << "# config_hash=" << cfg.hash() << '\n';
    std::istringstream lines(cfg.canonical());
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << '\n';
}

RatingGraph gen_synthetic(const SyntheticSpec& spec) {
    if (spec.users < 1 || spec.items < 1 || spec.ratings < 1 || spec.groups < 1) {
        throw ConfigError("synthetic sizes must be at least 1");
    }
    if (spec.ratings > spec.users * spec.items) throw ConfigError("more ratings than user-item pairs");
    if (spec.r_bot < 1 || spec.r_bot >= spec.r_top) throw ConfigError("rating bounds must satisfy 1 <= r_bot < r_top");

    std::mt19937_64 rng(spec.seed);
    const int levels = spec.r_top - spec.r_bot + 1;
    std::uniform_int_distribution<int> any(spec.r_bot, spec.r_top);

    // Group 0 rates one step inside either end of the scale; group 1, its mirror
    // image, then disagrees with it on every item, and neither matches the extremes
    // that love/hate attackers use.
    const std::vector<int> polar = levels >= 5 ? std::vector<int>{spec.r_bot + 1, spec.r_top - 1}
                                               : std::vector<int>{spec.r_bot, spec.r_top};
    std::uniform_int_distribution<std::size_t> pick_polar(0, polar.size() - 1);
    std::vector<std::vector<int>> profile(static_cast<std::size_t>(spec.groups), std::vector<int>(static_cast<std::size_t>(spec.items)));
    for (Index i = 0; i < spec.items; ++i) profile[0][static_cast<std::size_t>(i)] = polar[pick_polar(rng)];
    for (int gi = 1; gi < spec.groups; ++gi) {
        for (Index i = 0; i < spec.items; ++i) {
            profile[static_cast<std::size_t>(gi)][static_cast<std::size_t>(i)] =
                gi == 1 ? spec.r_bot + spec.r_top - profile[0][static_cast<std::size_t>(i)] : any(rng);
        }
    }

    std::vector<double> weight(static_cast<std::size_t>(spec.items));
    for (Index i = 0; i < spec.items; ++i) weight[static_cast<std::size_t>(i)] = std::pow(static_cast<double>(i + 1), -spec.skew);

    // Every item gets one forced rater (round robin over a shuffled item order) while counts allow.
    std::vector<Index> cover(static_cast<std::size_t>(spec.items));
    std::iota(cover.begin(), cover.end(), Index{0});
    std::shuffle(cover.begin(), cover.end(), rng);

    const Index base = spec.ratings / spec.users;
    const Index extra = spec.ratings % spec.users;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<RatingEntry> entries;
    entries.reserve(static_cast<std::size_t>(spec.ratings));
    std::vector<std::string> user_ids;
    std::vector<char> taken(static_cast<std::size_t>(spec.items));
    std::vector<std::pair<double, Index>> keys;
    for (Index u = 0; u < spec.users; ++u) {
        const Index k = base + (u < extra ? 1 : 0);
        user_ids.push_back("u" + std::to_string(u));
        std::fill(taken.begin(), taken.end(), 0);
        std::vector<Index> chosen;
        for (auto j = static_cast<std::size_t>(u); j < cover.size() && static_cast<Index>(chosen.size()) < k;
             j += static_cast<std::size_t>(spec.users)) {
            chosen.push_back(cover[j]);
            taken[static_cast<std::size_t>(cover[j])] = 1;
        }
        // Weighted sampling without replacement: keep the largest log(U)/w keys.
        keys.clear();
        for (Index i = 0; i < spec.items; ++i) {
            if (taken[static_cast<std::size_t>(i)]) continue;
            keys.emplace_back(std::log(unit(rng)) / weight[static_cast<std::size_t>(i)], i);
        }
        const auto need = static_cast<std::size_t>(k - static_cast<Index>(chosen.size()));
        std::partial_sort(keys.begin(), keys.begin() + static_cast<std::ptrdiff_t>(need), keys.end(),
                          [](const auto& a, const auto& b) { return a.first > b.first || (a.first == b.first && a.second < b.second); });
        for (std::size_t n = 0; n < need; ++n) chosen.push_back(keys[n].second);
        std::sort(chosen.begin(), chosen.end());

        const auto& prof = profile[static_cast<std::size_t>(u % spec.groups)];
        for (Index i : chosen) {
            int raw = prof[static_cast<std::size_t>(i)];
            if (spec.noise > 0.0 && unit(rng) < spec.noise) raw = any(rng);
            entries.push_back({user_ids.back(), "i" + std::to_string(i), static_cast<double>(raw) / spec.r_top, 0});
        }
    }
    return RatingGraph(spec.r_bot, spec.r_top, std::move(entries), std::move(user_ids));
}

Index resolve_target(const RatingGraph& g, const std::string& target) {
    if (!target.empty()) return g.item_index(target);
    const auto top = popularity(g).most_voted();
    if (!top) throw DomainError("graph has no rated item to target");
    return *top;
}

namespace {

// Runs jobs 0..n-1 on up to `workers` threads; each job writes its own slot.
void run_pool(std::size_t n, int workers, const std::function<void(std::size_t)>& job) {
    const unsigned hw = std::max(1U, std::thread::hardware_concurrency());
    const std::size_t threads = std::min<std::size_t>(n, workers > 0 ? static_cast<std::size_t>(workers) : hw);
    if (threads <= 1) {
        for (std::size_t k = 0; k < n; ++k) job(k);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t k = next++; k < n; k = next++) job(k);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    pool.clear();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

struct Method {
    std::string name;
    double alpha = kAbsent;
};

Vector rank_by(const RatingGraph& g, const Method& m, const ExperimentConfig& cfg) {
    if (m.name == "li") return li_baseline_fixed_point(g, cfg.engine.lambda).rankings;
    if (m.name == "bwa") return run_fixed_point(g, cfg.engine).rankings;
    const Measure measure = parse_measure(m.name.substr(4));
    const DeflateCompressor compressor;
    const auto p = build_affinity(g, measure, cfg.similarity, m.alpha, compressor);
    return rank_multipartite(g, p, cfg.engine).display;
}

}  // namespace

std::vector<AttackSweepRow> run_attack_sweep(const RatingGraph& g, const ExperimentConfig& cfg) {
    cfg.validate();
    const Index target = resolve_target(g, cfg.target);

    std::vector<Method> methods;
    const std::vector<double> alphas = cfg.alphas.empty() ? std::vector<double>{cfg.alpha} : cfg.alphas;
    for (const auto& name : cfg.methods) {
        if (name.rfind("mrs-", 0) == 0) {
            for (double a : alphas) methods.push_back({name, a});
        } else {
            methods.push_back({name});
        }
    }

    std::vector<Vector> clean(methods.size());
    run_pool(methods.size(), cfg.workers, [&](std::size_t k) { clean[k] = rank_by(g, methods[k], cfg); });

    const std::size_t points = cfg.proportions.size();
    std::vector<AttackSweepRow> rows(methods.size() * points);
    run_pool(rows.size(), cfg.workers, [&](std::size_t k) {
        const std::size_t mi = k / points;
        const std::size_t pi = k % points;
        AttackSpec spec;
        spec.kind = cfg.attack;
        spec.proportion = cfg.proportions[pi];
        spec.target = g.item_id(target);
        spec.direction = cfg.direction;
        spec.filler_count = cfg.filler_count;
        spec.poisson_lambda = cfg.poisson_lambda;
        spec.seed = cfg.seed + pi;
        const AttackResult attacked = generate_attack(g, spec, clean[mi]);
        const Vector ranked = rank_by(attacked.graph, methods[mi], cfg);

        AttackSweepRow& row = rows[k];
        row.method = methods[mi].name;
        row.alpha = methods[mi].alpha;
        row.proportion = spec.proportion;
        row.attackers = static_cast<Index>(attacked.attackers.size());
        row.tau = robustness_tau(g, clean[mi], attacked.graph, ranked);
        row.clean_target_ranking = clean[mi][target];
        row.target_ranking = ranked[attacked.graph.item_index(spec.target)];
    });
    return rows;
}

void write_attack_sweep_csv(const std::vector<AttackSweepRow>& rows, double scale, std::ostream& out) {
    out << "method,alpha,proportion,attackers,tau,r_target,r_target_clean\n";
    for (const auto& r : rows) {
        out << r.method << ',' << (is_absent(r.alpha) ? "" : format_number(r.alpha)) << ','
            << format_number(r.proportion) << ',' << r.attackers << ','
            << (r.tau ? format_number(*r.tau) : "undefined") << ',' << format_number(r.target_ranking * scale) << ','
            << format_number(r.clean_target_ranking * scale) << '\n';
    }
}

std::vector<std::pair<SystemMode, SweepResult>> run_bribe_experiment(const RatingGraph& g,
                                                                     const ExperimentConfig& cfg) {
    cfg.validate();
    const Index target = resolve_target(g, cfg.target);
    const auto whole = single_component(g.num_users());
    const auto bipartite = rank_multipartite(g, whole, cfg.engine);
    const DeflateCompressor compressor;
    const auto partition = build_affinity(g, cfg.measure, cfg.similarity, cfg.alpha, compressor);
    const auto multipartite = rank_multipartite(g, partition, cfg.engine);

    std::vector<std::pair<SystemMode, SweepResult>> out;
    for (SystemMode mode : {SystemMode::bipartite, SystemMode::multipartite}) {
        for (const auto& name : cfg.strategies) {
            const SweepStrategy strategy = parse_sweep_strategy(name);
            if (mode == SystemMode::multipartite && strategy != SweepStrategy::sigma1 &&
                strategy != SweepStrategy::sigma2) {
                continue;
            }
            for (bool dynamic : {false, true}) {
                if (dynamic && !cfg.dynamic) continue;
                SweepOptions opts{strategy, mode, dynamic, cfg.budget, cfg.seed};
                const bool bi = mode == SystemMode::bipartite;
                out.emplace_back(mode, run_bribe_sweep(g, bi ? whole : partition, bi ? bipartite : multipartite, target,
                                                       opts, cfg.engine));
            }
        }
    }
    return out;
}

}  // namespace rankforge
