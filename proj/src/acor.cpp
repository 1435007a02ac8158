#include "salp/baselines.hpp"

#include "salp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace salp {

AcorParams AcorParams::from_config(const OptimizerConfig& cfg) {
    AcorParams p;
    const double k = cfg.param("archive_size");
    p.q = cfg.param("q");
    p.zeta = cfg.param("zeta");
    if (!(k >= 2.0) || k != std::floor(k)) throw ConfigError("acor archive_size must be an integer >= 2");
    if (!(p.q > 0.0)) throw ConfigError("acor q must be positive");
    if (!(p.zeta > 0.0)) throw ConfigError("acor zeta must be positive");
    p.archive_size = static_cast<std::size_t>(k);
    return p;
}

std::vector<double> acor_weights(std::size_t archive_size, double q) {
    const double k = static_cast<double>(archive_size);
    const double qk = q * k;
    std::vector<double> w(archive_size);
    for (std::size_t r = 0; r < archive_size; ++r) {
        const double d = static_cast<double>(r);
        w[r] = std::exp(-(d * d) / (2.0 * qk * qk)) / (qk * std::sqrt(2.0 * std::numbers::pi));
    }
    return w;
}

void acor_step(Population& archive, const AcorParams& params, std::size_t n_samples, SearchContext& ctx) {
    auto& rng = ctx.rng();
    const std::size_t k = archive.size();
    const std::size_t n = ctx.dimension();

    const auto weights = acor_weights(k, params.q);
    std::vector<double> cumulative(k);
    double total = 0.0;
    for (std::size_t r = 0; r < k; ++r) cumulative[r] = (total += weights[r]);

    // sigma[l][j] = zeta * mean_e |s_e,j - s_l,j|
    std::vector<Position> sigma(k, Position(n, 0.0));
    for (std::size_t l = 0; l < k; ++l) {
        for (std::size_t e = 0; e < k; ++e) {
            for (std::size_t j = 0; j < n; ++j) {
                sigma[l][j] += std::abs(archive.positions[e][j] - archive.positions[l][j]);
            }
        }
        for (auto& s : sigma[l]) s *= params.zeta / static_cast<double>(k - 1);
    }

    Population samples;
    samples.positions.reserve(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const double r = rng.uniform() * total;
        const auto l = std::min(
            static_cast<std::size_t>(std::upper_bound(cumulative.begin(), cumulative.end(), r) - cumulative.begin()),
            k - 1);
        Position x(n);
        for (std::size_t j = 0; j < n; ++j) x[j] = archive.positions[l][j] + sigma[l][j] * rng.normal();
        samples.positions.push_back(clamp_to_bounds(std::move(x), ctx.bounds()));
    }
    evaluate_population(samples, ctx);

    for (std::size_t s = 0; s < samples.size(); ++s) {
        archive.positions.push_back(std::move(samples.positions[s]));
        archive.fitnesses.push_back(samples.fitnesses[s]);
    }
    sort_population(archive);
    archive.positions.resize(k);
    archive.fitnesses.resize(k);
}

void AcorOptimizer::initialize(SearchContext& ctx) {
    params_ = AcorParams::from_config(ctx.config());
    archive_ = init_population(params_.archive_size, ctx.dimension(), ctx.bounds(), ctx.rng());
    evaluate_population(archive_, ctx);
    sort_population(archive_);
    best_ = {archive_.positions.front(), archive_.fitnesses.front()};
}

void AcorOptimizer::iterate(SearchContext& ctx, std::size_t) {
    acor_step(archive_, params_, ctx.config().n_pop, ctx);
    if (archive_.fitnesses.front() < best_.fitness) best_ = {archive_.positions.front(), archive_.fitnesses.front()};
}

} // namespace salp
