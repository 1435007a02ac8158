#include "salp/baselines.hpp"

#include "salp/errors.hpp"

#include <algorithm>

namespace salp {

PsoParams PsoParams::from_config(const OptimizerConfig& cfg, const Bounds& bounds) {
    PsoParams p;
    p.c1 = cfg.param("c1");
    p.c2 = cfg.param("c2");
    p.w = cfg.param("w");
    if (!(p.w > 0.0 && p.w < 1.0)) throw ConfigError("pso w must lie in (0, 1)");
    if (!(p.c1 > 0.0 && p.c2 > 0.0)) throw ConfigError("pso c1 and c2 must be positive");
    const double fraction = cfg.param_or("v_max_fraction", 0.2);
    if (!(fraction > 0.0)) throw ConfigError("pso v_max_fraction must be positive");
    p.v_max = fraction * (bounds.ub - bounds.lb);
    return p;
}

Swarm init_swarm(SearchContext& ctx) {
    Population start = init_population(ctx.config().n_pop, ctx.dimension(), ctx.bounds(), ctx.rng());
    evaluate_population(start, ctx);

    Swarm s;
    s.positions = start.positions;
    s.velocities.assign(start.size(), Position(ctx.dimension(), 0.0));
    s.fitnesses = start.fitnesses;
    s.personal_best = std::move(start.positions);
    s.personal_best_fitness = std::move(start.fitnesses);
    const auto b = static_cast<std::size_t>(
        std::min_element(s.fitnesses.begin(), s.fitnesses.end()) - s.fitnesses.begin());
    s.global_best = {s.positions[b], s.fitnesses[b]};
    return s;
}

void pso_step(Swarm& swarm, const PsoParams& params, SearchContext& ctx) {
    auto& rng = ctx.rng();
    const auto& bounds = ctx.bounds();
    for (std::size_t i = 0; i < swarm.positions.size(); ++i) {
        auto& x = swarm.positions[i];
        auto& v = swarm.velocities[i];
        const auto& pbest = swarm.personal_best[i];
        const auto& gbest = swarm.global_best.position;
        for (std::size_t j = 0; j < x.size(); ++j) {
            const double r1 = rng.uniform();
            const double r2 = rng.uniform();
            v[j] = params.w * v[j] + params.c1 * r1 * (pbest[j] - x[j]) + params.c2 * r2 * (gbest[j] - x[j]);
            v[j] = std::clamp(v[j], -params.v_max, params.v_max);
            x[j] = std::clamp(x[j] + v[j], bounds.lb, bounds.ub);
        }
        swarm.fitnesses[i] = ctx.evaluate(x);
        if (swarm.fitnesses[i] < swarm.personal_best_fitness[i]) {
            swarm.personal_best[i] = x;
            swarm.personal_best_fitness[i] = swarm.fitnesses[i];
            if (swarm.fitnesses[i] < swarm.global_best.fitness) swarm.global_best = {x, swarm.fitnesses[i]};
        }
    }
}

void PsoOptimizer::initialize(SearchContext& ctx) {
    params_ = PsoParams::from_config(ctx.config(), ctx.bounds());
    swarm_ = init_swarm(ctx);
}

void PsoOptimizer::iterate(SearchContext& ctx, std::size_t) { pso_step(swarm_, params_, ctx); }

} // namespace salp
