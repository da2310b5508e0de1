#include "rankforge/engine.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rankforge {

Aggregator parse_aggregator(std::string_view name) {
    if (name == "avg") return Aggregator::avg;
    if (name == "max") return Aggregator::max;
    if (name == "min") return Aggregator::min;
    throw ConfigError("unknown aggregator '" + std::string(name) + "' (expected avg, max or min)");
}

Decay parse_decay(std::string_view name) {
    if (name == "f1") return Decay::f1;
    if (name == "f2") return Decay::f2;
    if (name == "f3") return Decay::f3;
    if (name == "f4") return Decay::f4;
    throw ConfigError("unknown decay '" + std::string(name) + "' (expected f1, f2, f3 or f4)");
}

std::string_view to_string(Aggregator a) {
    switch (a) {
        case Aggregator::avg: return "avg";
        case Aggregator::max: return "max";
        case Aggregator::min: return "min";
    }
    return "?";
}

std::string_view to_string(Decay d) {
    switch (d) {
        case Decay::f1: return "f1";
        case Decay::f2: return "f2";
        case Decay::f3: return "f3";
        case Decay::f4: return "f4";
    }
    return "?";
}

void EngineConfig::validate() const {
    if (!(lambda >= 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in [0, 1[");
    if (p < 1) throw ConfigError("p must be a positive integer");
    if (!(upsilon > 0.0 && upsilon < 1.0)) throw ConfigError("upsilon must lie in ]0, 1[");
    if (s < 0) throw ConfigError("s must be a natural number");
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (max_iters < 1) throw ConfigError("max_iters must be positive");
}

bool convergence_guaranteed(const EngineConfig& cfg, double rating_span) {
    return cfg.safeguard_denominator || cfg.lambda < 1.0 / (1.0 + rating_span);
}

double contraction_bound(double lambda, double rating_span) {
    return lambda / (1.0 - rating_span * lambda);
}

double EngineState::measured_contraction() const {
    double eta = 0.0;
    for (std::size_t k = 1; k < deltas.size(); ++k) {
        if (deltas[k - 1] > 0.0) eta = std::max(eta, deltas[k] / deltas[k - 1]);
    }
    return eta;
}

double decay_eval(Decay kind, double x, double lambda, double upsilon, int s) {
    if (x < 0.0) throw DomainError("item count must be non-negative");
    switch (kind) {
        case Decay::f1: return lambda;
        case Decay::f2: return lambda * (1.0 - std::exp(-x / 2.0));
        case Decay::f3: return lambda * (1.0 - (1.0 - upsilon) / (1.0 + std::exp(s - x)));
        case Decay::f4: return x >= 10.0 ? 1.0 : 0.5;
    }
    throw ConfigError("unknown decay function");
}

Vector ranking_step(const RatingGraph& g, const Vector& reputations, bool safeguard_denominator) {
    if (reputations.size() != g.num_users()) throw DomainError("reputation vector size mismatch");
    if ((reputations.array() <= 0.0).any()) throw DomainError("reputations must be positive");

    const Vector weighted = g.matrix().transpose() * reputations;
    Vector mass = g.pattern().transpose() * reputations;
    if (safeguard_denominator) mass = mass.cwiseMax(1.0);
    Vector r(g.num_items());
    for (Index i = 0; i < g.num_items(); ++i) {
        r[i] = g.raters_of(i).empty() ? kAbsent : weighted[i] / mass[i];
    }
    return r;
}

Vector reputation_step(const RatingGraph& g, const Vector& rankings, const EngineConfig& cfg) {
    if (rankings.size() != g.num_items()) throw DomainError("ranking vector size mismatch");
    Vector c = Vector::Ones(g.num_users());
    for (Index u = 0; u < g.num_users(); ++u) {
        auto rated = g.items_of(u);
        if (rated.empty()) continue;
        double sum = 0.0;
        double hi = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        for (const auto& [item, value] : rated) {
            const double ri = rankings[item];
            if (is_absent(ri)) throw DomainError("ranking undefined for a rated item");
            const double err = std::pow(std::abs(value - ri), cfg.p);
            sum += err;
            hi = std::max(hi, err);
            lo = std::min(lo, err);
        }
        double e = 0.0;
        switch (cfg.aggregator) {
            case Aggregator::avg: e = sum / static_cast<double>(rated.size()); break;
            case Aggregator::max: e = hi; break;
            case Aggregator::min: e = lo; break;
        }
        const double f = decay_eval(cfg.decay, static_cast<double>(rated.size()), cfg.lambda, cfg.upsilon, cfg.s);
        c[u] = 1.0 - f * e;
    }
    return c;
}

double sup_norm_change(const Vector& a, const Vector& b) {
    if (a.size() != b.size()) throw DomainError("vector size mismatch");
    double d = 0.0;
    for (Index i = 0; i < a.size(); ++i) {
        if (is_absent(a[i]) || is_absent(b[i])) continue;
        d = std::max(d, std::abs(a[i] - b[i]));
    }
    return d;
}

EngineState run_fixed_point(const RatingGraph& g, const EngineConfig& cfg, const std::optional<Vector>& initial) {
    cfg.validate();
    Vector c = initial.value_or(Vector::Ones(g.num_users()));
    if (c.size() != g.num_users()) throw DomainError("initial reputation vector size mismatch");
    if ((c.array() <= 0.0).any() || (c.array() > 1.0).any()) {
        throw DomainError("initial reputations must lie in ]0,1]");
    }

    EngineState state;
    Vector r = ranking_step(g, c, cfg.safeguard_denominator);
    while (state.iterations < cfg.max_iters) {
        Vector next_c = reputation_step(g, r, cfg);
        if ((next_c.array() <= 0.0).any()) {
            // Only reachable outside the admissible lambda range without the safeguard.
            break;
        }
        Vector next_r = ranking_step(g, next_c, cfg.safeguard_denominator);
        const double delta = sup_norm_change(next_r, r);
        c = std::move(next_c);
        r = std::move(next_r);
        state.deltas.push_back(delta);
        ++state.iterations;
        state.final_delta = delta;
        if (delta <= cfg.epsilon) {
            state.converged = true;
            break;
        }
    }
    state.reputations = std::move(c);
    state.rankings = std::move(r);
    return state;
}

EngineState li_baseline_fixed_point(const RatingGraph& g, double lambda, double epsilon, int max_iters) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw ConfigError("lambda must lie in ]0, 1[");
    if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");

    const Vector counts = g.pattern().transpose() * Vector::Ones(g.num_users());
    auto rank = [&](const Vector& c) {
        Vector r = (g.matrix().transpose() * c).cwiseQuotient(counts);
        for (Index i = 0; i < r.size(); ++i) {
            if (counts[i] == 0.0) r[i] = kAbsent;
        }
        return r;
    };
    auto reputation = [&](const Vector& r) {
        Vector c = Vector::Ones(g.num_users());
        for (Index u = 0; u < g.num_users(); ++u) {
            auto rated = g.items_of(u);
            if (rated.empty()) continue;
            double sum = 0.0;
            for (const auto& [item, value] : rated) sum += std::abs(value - r[item]);
            c[u] = 1.0 - lambda / static_cast<double>(rated.size()) * sum;
        }
        return c;
    };

    EngineState state;
    Vector c = Vector::Ones(g.num_users());
    Vector r = rank(c);
    while (state.iterations < max_iters) {
        Vector next_c = reputation(r);
        Vector next_r = rank(next_c);
        const double delta = sup_norm_change(next_r, r);
        c = std::move(next_c);
        r = std::move(next_r);
        state.deltas.push_back(delta);
        ++state.iterations;
        state.final_delta = delta;
        if (delta <= epsilon) {
            state.converged = true;
            break;
        }
    }
    state.reputations = std::move(c);
    state.rankings = std::move(r);
    return state;
}

Vector arithmetic_average(const RatingGraph& g) {
    return ranking_step(g, Vector::Ones(g.num_users()));
}

}  // namespace rankforge
