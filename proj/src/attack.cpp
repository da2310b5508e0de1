#include "rankforge/attack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <unordered_set>

namespace rankforge {

AttackKind parse_attack_kind(std::string_view name) {
    if (name == "random_spam" || name == "spam") return AttackKind::random_spam;
    if (name == "love_hate") return AttackKind::love_hate;
    if (name == "reputation") return AttackKind::reputation;
    throw ConfigError("unknown attack kind '" + std::string(name) + "' (expected random_spam, love_hate or reputation)");
}

AttackDirection parse_attack_direction(std::string_view name) {
    if (name == "push") return AttackDirection::push;
    if (name == "nuke") return AttackDirection::nuke;
    throw ConfigError("unknown attack direction '" + std::string(name) + "' (expected push or nuke)");
}

std::string_view to_string(AttackKind k) {
    switch (k) {
        case AttackKind::random_spam: return "random_spam";
        case AttackKind::love_hate: return "love_hate";
        case AttackKind::reputation: return "reputation";
    }
    return "?";
}

std::string_view to_string(AttackDirection d) {
    return d == AttackDirection::push ? "push" : "nuke";
}

void AttackSpec::validate() const {
    if (!(proportion >= 0.0 && proportion <= 0.75)) throw ConfigError("attack proportion must lie in [0, 0.75]");
    if (filler_count < 0) throw ConfigError("filler count must be non-negative");
    if (!(poisson_lambda > 0.0)) throw ConfigError("poisson lambda must be positive");
    if (kind != AttackKind::random_spam && target.empty()) throw ConfigError("attack needs a target item");
}

Index attack_size(double proportion, Index n) {
    return static_cast<Index>(std::ceil(proportion * static_cast<double>(n) - 1e-9));
}

double nearest_grid_value(const RatingGraph& g, double ranking) {
    const double raw = ranking * g.r_top();
    auto lower = static_cast<int>(std::floor(raw + 1e-9));
    lower = std::clamp(lower, g.r_bot(), g.r_top());
    int best = lower;
    if (lower < g.r_top()) {
        const double below = std::abs(raw - lower);
        const double above = std::abs(lower + 1 - raw);
        if (above < below - 1e-9) best = lower + 1;
    }
    return static_cast<double>(best) / g.r_top();
}

namespace {

// Fresh attacker ids, skipping any that collide with existing users.
class IdSource {
public:
    IdSource(const RatingGraph& g, std::string prefix) : g_(g), prefix_(std::move(prefix)) {}

    std::string next() {
        for (;;) {
            std::string id = prefix_ + std::to_string(counter_++);
            if (!g_.find_user(id)) return id;
        }
    }

private:
    const RatingGraph& g_;
    std::string prefix_;
    std::size_t counter_ = 0;
};

AttackResult assemble(const RatingGraph& g, std::vector<std::string> attackers, std::vector<ManifestRow> manifest,
                      std::vector<std::string> notes) {
    std::vector<RatingEntry> entries = g.entries();
    entries.reserve(entries.size() + manifest.size());
    for (const auto& row : manifest) entries.push_back({row.attacker, row.item, row.value, 0});
    std::vector<std::string> users = g.user_ids();
    users.insert(users.end(), attackers.begin(), attackers.end());
    return {RatingGraph(g.r_bot(), g.r_top(), std::move(entries), std::move(users)), std::move(attackers),
            std::move(manifest), std::move(notes)};
}

double extreme(const RatingGraph& g, bool high) { return high ? 1.0 : g.min_rating(); }

}  // namespace

AttackResult gen_random_spam(const RatingGraph& g, const AttackSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    const Index total = attack_size(spec.proportion, g.num_ratings());
    std::vector<std::string> attackers;
    std::vector<ManifestRow> manifest;
    if (total == 0 || g.num_items() == 0) return assemble(g, {}, {}, {});

    const auto pop = popularity(g);
    std::vector<double> base(pop.counts.begin(), pop.counts.end());
    const auto grid = g.rating_grid();
    std::poisson_distribution<int> extra(spec.poisson_lambda);
    std::uniform_int_distribution<std::size_t> value(0, grid.size() - 1);
    IdSource ids(g, "spam");

    Index added = 0;
    while (added < total) {
        const Index wanted = 1 + extra(rng);
        const Index k = std::min({wanted, total - added, g.num_items()});
        const std::string id = ids.next();
        attackers.push_back(id);
        std::vector<double> weights = base;
        for (Index n = 0; n < k; ++n) {
            std::discrete_distribution<std::size_t> pick(weights.begin(), weights.end());
            const std::size_t item = pick(rng);
            weights[item] = 0.0;
            manifest.push_back({id, g.item_id(static_cast<Index>(item)), grid[value(rng)], "spam"});
        }
        added += k;
    }
    return assemble(g, std::move(attackers), std::move(manifest), {});
}

AttackResult gen_love_hate(const RatingGraph& g, const AttackSpec& spec) {
    spec.validate();
    const Index target = g.item_index(spec.target);
    std::vector<Index> others;
    for (Index i = 0; i < g.num_items(); ++i) {
        if (i != target) others.push_back(i);
    }
    if (static_cast<Index>(others.size()) < spec.filler_count) {
        throw DomainError("love/hate attack needs " + std::to_string(spec.filler_count) +
                          " non-target items, graph has " + std::to_string(others.size()));
    }

    std::mt19937_64 rng(spec.seed);
    const Index count = attack_size(spec.proportion, static_cast<Index>(g.raters_of(target).size()));
    const bool push = spec.direction == AttackDirection::push;
    IdSource ids(g, "lovehate");
    std::vector<std::string> attackers;
    std::vector<ManifestRow> manifest;
    std::vector<Index> fillers(static_cast<std::size_t>(spec.filler_count));
    for (Index a = 0; a < count; ++a) {
        const std::string id = ids.next();
        attackers.push_back(id);
        manifest.push_back({id, spec.target, extreme(g, push), "target"});
        std::sample(others.begin(), others.end(), fillers.begin(), fillers.size(), rng);
        std::shuffle(fillers.begin(), fillers.end(), rng);
        for (Index f : fillers) manifest.push_back({id, g.item_id(f), extreme(g, !push), "filler"});
    }
    return assemble(g, std::move(attackers), std::move(manifest), {});
}

AttackResult gen_reputation_attack(const RatingGraph& g, const AttackSpec& spec, const Vector& current_rankings) {
    spec.validate();
    const Index target = g.item_index(spec.target);
    if (current_rankings.size() != g.num_items()) throw DomainError("ranking vector size mismatch");

    std::vector<std::string> notes;
    std::vector<std::pair<Index, double>> fillers;
    for (Index i : popularity(g).by_popularity()) {
        if (static_cast<int>(fillers.size()) == spec.filler_count) break;
        if (i == target) continue;
        if (is_absent(current_rankings[i])) {
            notes.push_back("filler " + g.item_id(i) + " skipped: no current ranking");
            continue;
        }
        fillers.emplace_back(i, nearest_grid_value(g, current_rankings[i]));
    }

    const Index count = attack_size(spec.proportion, static_cast<Index>(g.raters_of(target).size()));
    const bool push = spec.direction == AttackDirection::push;
    IdSource ids(g, "repatk");
    std::vector<std::string> attackers;
    std::vector<ManifestRow> manifest;
    for (Index a = 0; a < count; ++a) {
        const std::string id = ids.next();
        attackers.push_back(id);
        for (const auto& [item, value] : fillers) manifest.push_back({id, g.item_id(item), value, "filler"});
        manifest.push_back({id, spec.target, extreme(g, push), "target"});
    }
    return assemble(g, std::move(attackers), std::move(manifest), std::move(notes));
}

AttackResult generate_attack(const RatingGraph& g, const AttackSpec& spec, const Vector& current_rankings) {
    switch (spec.kind) {
        case AttackKind::random_spam: return gen_random_spam(g, spec);
        case AttackKind::love_hate: return gen_love_hate(g, spec);
        case AttackKind::reputation: return gen_reputation_attack(g, spec, current_rankings);
    }
    throw ConfigError("unknown attack kind");
}

void write_manifest_csv(const RatingGraph& g, const AttackResult& res, std::ostream& out) {
    out << "attacker_id,item_id,rating,role\n";
    for (const auto& row : res.manifest) {
        out << row.attacker << ',' << row.item << ',' << format_number(std::round(row.value * g.r_top() * 1e9) / 1e9)
            << ',' << row.role << '\n';
    }
}

}  // namespace rankforge
