#include "salp/optimizer.hpp"

#include "salp/errors.hpp"

#include <algorithm>
#include <cmath>

namespace salp {

Bounds::Bounds(double lower, double upper) : lb(lower), ub(upper) {
    if (!(lb <= ub)) throw InvalidInput("bounds need lb <= ub");
}

double OptimizerConfig::param(const std::string& key) const {
    auto it = params.find(key);
    if (it == params.end()) throw ConfigError("missing algorithm parameter '" + key + "'");
    return it->second;
}

double OptimizerConfig::param_or(const std::string& key, double fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

Objective make_objective(const ProblemInstance& inst) {
    const std::size_t m = inst.vm_count();
    Objective obj;
    obj.dimension = inst.task_count();
    obj.bounds = Bounds(1.0, static_cast<double>(m));
    // Captures the instance by value so the objective outlives any caller copy.
    obj.fitness = [inst, m](std::span<const double> x) {
        const auto& sizes = inst.task_sizes();
        const auto& speeds = inst.vm_speeds();
        const double hi = static_cast<double>(m);
        std::vector<double> done(m, 0.0);
        for (std::size_t i = 0; i < x.size(); ++i) {
            const auto j = static_cast<std::size_t>(std::clamp(std::round(x[i]), 1.0, hi)) - 1;
            done[j] += sizes[i] / speeds[j];
        }
        return *std::max_element(done.begin(), done.end());
    };
    return obj;
}

Position clamp_to_bounds(Position pos, const Bounds& b) {
    for (auto& c : pos) c = std::min(std::max(c, b.lb), b.ub);
    return pos;
}

Population init_population(std::size_t n_pop, std::size_t dimension, const Bounds& b, Rng& rng) {
    Population pop;
    pop.positions.assign(n_pop, Position(dimension));
    for (auto& p : pop.positions) {
        for (auto& c : p) c = rng.uniform(b.lb, b.ub);
    }
    return pop;
}

void evaluate_population(Population& pop, SearchContext& ctx) {
    pop.fitnesses.resize(pop.positions.size());
    for (std::size_t i = 0; i < pop.positions.size(); ++i) {
        pop.fitnesses[i] = ctx.evaluate(pop.positions[i]);
    }
}

double c1_schedule(double l, double L, C1Variant variant) {
    const double r = (variant == C1Variant::factor4 ? 4.0 : 1.0) * l / L;
    return 2.0 * std::exp(-(r * r));
}

void validate_config(const OptimizerConfig& cfg) {
    if (cfg.n_pop < 2) throw ConfigError("n_pop must be at least 2");
    if (cfg.max_iter < 1) throw ConfigError("max_iter must be at least 1");
}

RunResult run(Algorithm& algorithm, const Objective& objective, const OptimizerConfig& cfg,
              const IterationObserver& observer) {
    validate_config(cfg);
    if (objective.dimension < 1) throw InvalidInput("objective dimension must be at least 1");
    if (!objective.fitness) throw InvalidInput("objective has no fitness function");

    const auto start = std::chrono::steady_clock::now();
    SearchContext ctx(objective, cfg);
    algorithm.initialize(ctx);

    RunResult result;
    result.trace.reserve(cfg.max_iter);
    for (std::size_t l = 1; l <= cfg.max_iter; ++l) {
        algorithm.iterate(ctx, l);
        result.trace.push_back(algorithm.best().fitness);
        if (observer) observer(l, algorithm);
    }

    result.best_position = algorithm.best().position;
    result.best_fitness = algorithm.best().fitness;
    result.evaluations = ctx.evaluations();
    result.wall_time = std::chrono::steady_clock::now() - start;
    return result;
}

} // namespace salp
