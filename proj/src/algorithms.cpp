#include "salp/algorithms.hpp"

#include "salp/baselines.hpp"
#include "salp/errors.hpp"
#include "salp/mssa.hpp"

#include <algorithm>

namespace salp {

bool is_known_algorithm(std::string_view id) noexcept {
    return std::find(kAlgorithmIds.begin(), kAlgorithmIds.end(), id) != kAlgorithmIds.end();
}

std::string algorithm_choices() {
    std::string out;
    for (auto id : kAlgorithmIds) {
        if (!out.empty()) out += '|';
        out += id;
    }
    return out;
}

std::unique_ptr<Algorithm> make_algorithm(std::string_view id) {
    if (id == kMssaId) return std::make_unique<MssaOptimizer>();
    if (id == kSsaId) return std::make_unique<SsaOptimizer>();
    if (id == kGaId) return std::make_unique<GaOptimizer>();
    if (id == kPsoId) return std::make_unique<PsoOptimizer>();
    if (id == kAcorId) return std::make_unique<AcorOptimizer>();
    throw ConfigError("unknown algorithm '" + std::string(id) + "', expected one of " + algorithm_choices());
}

OptimizerConfig default_config(std::string_view id) {
    OptimizerConfig cfg;
    cfg.n_pop = 40;
    cfg.max_iter = 500;
    if (id == kMssaId) {
        cfg.params = {{"alpha", 0.19}};
    } else if (id == kSsaId) {
        cfg.params = {};
    } else if (id == kGaId) {
        cfg.params = {{"pc", 0.8}, {"pm", 0.3}, {"mu", 0.02}, {"beta", 8.0}, {"rws", 0.0}};
    } else if (id == kPsoId) {
        cfg.params = {{"c1", 2.0}, {"c2", 2.0}, {"w", 0.7}};
    } else if (id == kAcorId) {
        cfg.params = {{"archive_size", 40.0}, {"q", 0.9}, {"zeta", 0.1}};
    } else {
        throw ConfigError("unknown algorithm '" + std::string(id) + "', expected one of " + algorithm_choices());
    }
    return cfg;
}

} // namespace salp
