#include "salp/mssa.hpp"

#include "salp/errors.hpp"

#include <algorithm>

namespace salp {

namespace {

C1Variant read_variant(const OptimizerConfig& cfg) {
    const double v = cfg.param_or("c1_variant", 0.0);
    if (v == 0.0) return C1Variant::factor4;
    if (v == 1.0) return C1Variant::no_factor;
    throw ConfigError("c1_variant must be 0 (factor4) or 1 (no_factor)");
}

void check_same_length(const Position& a, const Position& b) {
    if (a.size() != b.size()) {
        throw InvalidInput("follower update needs equal-length positions (" + std::to_string(a.size()) +
                           " vs " + std::to_string(b.size()) + ")");
    }
}

void start_swarm(Population& pop, FoodSource& food, SearchContext& ctx) {
    pop = init_population(ctx.config().n_pop, ctx.dimension(), ctx.bounds(), ctx.rng());
    evaluate_population(pop, ctx);
    const auto b = best_index(pop);
    food = {pop.positions[b], pop.fitnesses[b]};
}

} // namespace

MssaParams MssaParams::from_config(const OptimizerConfig& cfg) {
    MssaParams p;
    p.alpha = cfg.param("alpha");
    if (!(p.alpha > 0.0 && p.alpha <= 1.0)) throw ConfigError("mssa alpha must lie in (0, 1]");
    p.c1_variant = read_variant(cfg);
    return p;
}

SsaParams SsaParams::from_config(const OptimizerConfig& cfg) {
    return SsaParams{read_variant(cfg)};
}

std::size_t leader_count(std::size_t n_pop) noexcept { return n_pop / 2; }

std::size_t best_index(const Population& pop) {
    return static_cast<std::size_t>(
        std::min_element(pop.fitnesses.begin(), pop.fitnesses.end()) - pop.fitnesses.begin());
}

Position mssa_leader_update(const FoodSource& food, double alpha, Rng& rng) {
    Position out(food.position.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = food.position[j] + alpha * rng.normal();
    return out;
}

Position mssa_follower_update(const Position& self_pos, const Position& prev_pos, double c1, Rng& rng) {
    check_same_length(self_pos, prev_pos);
    Position out(self_pos.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        out[j] = 0.5 * (self_pos[j] + prev_pos[j]) + c1 * rng.normal();
    }
    return out;
}

SweepCounts mssa_iteration(Population& pop, FoodSource& food, double c1, const MssaParams& params,
                           SearchContext& ctx) {
    if (pop.size() < 2) throw InvalidInput("modified swarm needs at least two salps");
    SweepCounts counts;
    const std::size_t leaders = leader_count(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const bool is_leader = i < leaders;
        Position next = is_leader ? mssa_leader_update(food, params.alpha, ctx.rng())
                                  : mssa_follower_update(pop.positions[i], pop.positions[i - 1], c1, ctx.rng());
        pop.positions[i] = clamp_to_bounds(std::move(next), ctx.bounds());
        pop.fitnesses[i] = ctx.evaluate(pop.positions[i]);

        const bool replace = is_leader ? pop.fitnesses[i] <= food.fitness : pop.fitnesses[i] < food.fitness;
        if (replace) food = {pop.positions[i], pop.fitnesses[i]};
        ++(is_leader ? counts.leader_updates : counts.follower_updates);
    }
    return counts;
}

double ssa_leader_coordinate(double food_j, const Bounds& bounds, double c1, double c2, double c3) noexcept {
    const double step = c1 * ((bounds.ub - bounds.lb) * c2 + bounds.lb);
    return c3 >= 0.5 ? food_j + step : food_j - step;
}

Position ssa_leader_update(const FoodSource& food, const Bounds& bounds, double c1, Rng& rng) {
    Position out(food.position.size());
    for (std::size_t j = 0; j < out.size(); ++j) {
        const double c2 = rng.uniform();
        const double c3 = rng.uniform();
        out[j] = ssa_leader_coordinate(food.position[j], bounds, c1, c2, c3);
    }
    return out;
}

Position ssa_follower_update(const Position& self_pos, const Position& prev_pos) {
    check_same_length(self_pos, prev_pos);
    Position out(self_pos.size());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = 0.5 * (self_pos[j] + prev_pos[j]);
    return out;
}

void ssa_iteration(Population& pop, FoodSource& food, double c1, SearchContext& ctx) {
    for (std::size_t i = 0; i < pop.size(); ++i) {
        pop.positions[i] = i == 0 ? ssa_leader_update(food, ctx.bounds(), c1, ctx.rng())
                                  : ssa_follower_update(pop.positions[i], pop.positions[i - 1]);
    }
    for (auto& p : pop.positions) p = clamp_to_bounds(std::move(p), ctx.bounds());
    evaluate_population(pop, ctx);

    const auto b = best_index(pop);
    if (pop.fitnesses[b] < food.fitness) food = {pop.positions[b], pop.fitnesses[b]};
}

void MssaOptimizer::initialize(SearchContext& ctx) {
    params_ = MssaParams::from_config(ctx.config());
    start_swarm(pop_, food_, ctx);
}

void MssaOptimizer::iterate(SearchContext& ctx, std::size_t l) {
    const double c1 = c1_schedule(static_cast<double>(l), static_cast<double>(ctx.config().max_iter),
                                  params_.c1_variant);
    last_sweep_ = mssa_iteration(pop_, food_, c1, params_, ctx);
}

void SsaOptimizer::initialize(SearchContext& ctx) {
    params_ = SsaParams::from_config(ctx.config());
    start_swarm(pop_, food_, ctx);
}

void SsaOptimizer::iterate(SearchContext& ctx, std::size_t l) {
    const double c1 = c1_schedule(static_cast<double>(l), static_cast<double>(ctx.config().max_iter),
                                  params_.c1_variant);
    ssa_iteration(pop_, food_, c1, ctx);
}

} // namespace salp
