#include "salp/baselines.hpp"

#include "salp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace salp {

void sort_population(Population& pop) {
    std::vector<std::size_t> order(pop.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&pop](std::size_t a, std::size_t b) { return pop.fitnesses[a] < pop.fitnesses[b]; });
    Population sorted;
    sorted.positions.reserve(pop.size());
    sorted.fitnesses.reserve(pop.size());
    for (auto i : order) {
        sorted.positions.push_back(std::move(pop.positions[i]));
        sorted.fitnesses.push_back(pop.fitnesses[i]);
    }
    pop = std::move(sorted);
}

GaParams GaParams::from_config(const OptimizerConfig& cfg) {
    GaParams p;
    p.pc = cfg.param("pc");
    p.pm = cfg.param("pm");
    p.mu = cfg.param("mu");
    p.beta = cfg.param("beta");
    const double rws = cfg.param("rws");
    if (p.pc < 0.0 || p.pm < 0.0) throw ConfigError("ga pc and pm must be non-negative");
    if (p.mu < 0.0 || p.mu > 1.0) throw ConfigError("ga mu must lie in [0, 1]");
    if (p.beta < 0.0) throw ConfigError("ga beta must be non-negative");
    if (rws != 0.0 && rws != 1.0) throw ConfigError("ga rws must be 0 or 1");
    p.roulette = rws == 1.0;
    const auto n = static_cast<double>(cfg.n_pop);
    p.nc = 2 * static_cast<std::size_t>(std::round(p.pc * n / 2.0));
    p.nm = static_cast<std::size_t>(std::round(p.pm * n));
    return p;
}

std::size_t tournament_select(const Population& pop, Rng& rng) {
    std::size_t winner = rng.index(pop.size());
    for (int k = 1; k < 3; ++k) {
        const std::size_t c = rng.index(pop.size());
        if (pop.fitnesses[c] < pop.fitnesses[winner]) winner = c;
    }
    return winner;
}

std::size_t roulette_select(const Population& pop, double beta, Rng& rng) {
    double worst = *std::max_element(pop.fitnesses.begin(), pop.fitnesses.end());
    if (worst == 0.0) worst = 1.0;
    std::vector<double> cumulative(pop.size());
    double total = 0.0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        total += std::exp(-beta * pop.fitnesses[i] / worst);
        cumulative[i] = total;
    }
    const double r = rng.uniform() * total;
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), pop.size() - 1);
}

void ga_generation(Population& pop, const GaParams& params, SearchContext& ctx) {
    auto& rng = ctx.rng();
    const auto& bounds = ctx.bounds();
    const std::size_t n = ctx.dimension();
    auto select = [&] { return params.roulette ? roulette_select(pop, params.beta, rng) : tournament_select(pop, rng); };

    Population children;
    for (std::size_t k = 0; k < params.nc / 2; ++k) {
        const Position& a = pop.positions[select()];
        const Position& b = pop.positions[select()];
        Position y1(n), y2(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double t = rng.uniform();
            y1[j] = t * a[j] + (1.0 - t) * b[j];
            y2[j] = t * b[j] + (1.0 - t) * a[j];
        }
        children.positions.push_back(clamp_to_bounds(std::move(y1), bounds));
        children.positions.push_back(clamp_to_bounds(std::move(y2), bounds));
    }

    const auto genes = std::min(n, static_cast<std::size_t>(std::ceil(params.mu * static_cast<double>(n))));
    const double sigma = 0.1 * (bounds.ub - bounds.lb);
    std::vector<std::size_t> gene_order(n);
    for (std::size_t k = 0; k < params.nm; ++k) {
        Position y = pop.positions[rng.index(pop.size())];
        // Partial Fisher-Yates picks `genes` distinct coordinates.
        std::iota(gene_order.begin(), gene_order.end(), 0);
        for (std::size_t g = 0; g < genes; ++g) {
            std::swap(gene_order[g], gene_order[g + rng.index(n - g)]);
            y[gene_order[g]] += sigma * rng.normal();
        }
        children.positions.push_back(clamp_to_bounds(std::move(y), bounds));
    }

    evaluate_population(children, ctx);
    const std::size_t keep = pop.size();
    for (std::size_t i = 0; i < children.size(); ++i) {
        pop.positions.push_back(std::move(children.positions[i]));
        pop.fitnesses.push_back(children.fitnesses[i]);
    }
    sort_population(pop);
    pop.positions.resize(keep);
    pop.fitnesses.resize(keep);
}

void GaOptimizer::initialize(SearchContext& ctx) {
    params_ = GaParams::from_config(ctx.config());
    pop_ = init_population(ctx.config().n_pop, ctx.dimension(), ctx.bounds(), ctx.rng());
    evaluate_population(pop_, ctx);
    sort_population(pop_);
    best_ = {pop_.positions.front(), pop_.fitnesses.front()};
}

void GaOptimizer::iterate(SearchContext& ctx, std::size_t) {
    ga_generation(pop_, params_, ctx);
    // Elitist truncation keeps the previous best unless something beat it.
    if (pop_.fitnesses.front() < best_.fitness) best_ = {pop_.positions.front(), pop_.fitnesses.front()};
}

} // namespace salp
