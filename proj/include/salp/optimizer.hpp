#pragma once

// Machinery shared by every population-based optimizer: bounds, population
// and food-source state, the c1 coefficient schedule and the common run loop.

#include "salp/problem.hpp"
#include "salp/rng.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace salp {

/// Per-dimension box, identical in every dimension. For scheduling the box
/// is [1, m]; a single-VM instance degenerates to lb == ub.
struct Bounds {
    double lb = 1.0;
    double ub = 1.0;

    Bounds() = default;
    Bounds(double lower, double upper);

    bool contains(double x) const noexcept { return x >= lb && x <= ub; }
};

struct Population {
    std::vector<Position> positions;
    std::vector<double> fitnesses;

    std::size_t size() const noexcept { return positions.size(); }
};

struct FoodSource {
    Position position;
    double fitness = 0.0;
};

/// Which form of the c1 decay the salp optimizers use.
enum class C1Variant {
    factor4,  // 2 exp(-(4l/L)^2)
    no_factor // 2 exp(-(l/L)^2)
};

struct OptimizerConfig {
    std::size_t n_pop = 40;
    std::size_t max_iter = 500;
    std::map<std::string, double> params;
    std::uint64_t seed = 0;

    /// Throws ConfigError naming the key when it is absent.
    double param(const std::string& key) const;
    double param_or(const std::string& key, double fallback) const;
};

struct RunResult {
    Position best_position;
    double best_fitness = 0.0;
    std::vector<double> trace; // best-so-far after each iteration
    std::size_t evaluations = 0;
    std::chrono::duration<double, std::milli> wall_time{};
};

/// Search problem seen by the optimizers: dimension, box, and a fitness to
/// minimize.
struct Objective {
    std::size_t dimension = 0;
    Bounds bounds;
    std::function<double(std::span<const double>)> fitness;
};

/// makespan(decode(x)) over the box [1, m]^n.
Objective make_objective(const ProblemInstance& inst);

/// Mutable state handed to an algorithm for the duration of one run.
class SearchContext {
public:
    SearchContext(const Objective& objective, const OptimizerConfig& cfg)
        : objective_(objective), cfg_(cfg), rng_(cfg.seed) {}

    double evaluate(std::span<const double> x) {
        ++evaluations_;
        return objective_.fitness(x);
    }

    const Objective& objective() const noexcept { return objective_; }
    const Bounds& bounds() const noexcept { return objective_.bounds; }
    std::size_t dimension() const noexcept { return objective_.dimension; }
    const OptimizerConfig& config() const noexcept { return cfg_; }
    Rng& rng() noexcept { return rng_; }
    std::size_t evaluations() const noexcept { return evaluations_; }

private:
    const Objective& objective_;
    const OptimizerConfig& cfg_;
    Rng rng_;
    std::size_t evaluations_ = 0;
};

/// One optimizer. `initialize` builds and evaluates the starting state,
/// `iterate` performs iteration l (1-based, l = 1..max_iter).
class Algorithm {
public:
    virtual ~Algorithm() = default;

    virtual std::string_view id() const = 0;
    virtual void initialize(SearchContext& ctx) = 0;
    virtual void iterate(SearchContext& ctx, std::size_t l) = 0;

    /// Best solution found so far.
    virtual const FoodSource& best() const = 0;

    /// Every position the algorithm currently holds (post-clamp).
    virtual std::span<const Position> positions() const = 0;
};

/// Called after every iteration with the 1-based iteration index.
using IterationObserver = std::function<void(std::size_t, const Algorithm&)>;

Position clamp_to_bounds(Position pos, const Bounds& b);

/// n_pop positions with every coordinate uniform on [lb, ub]. Draw order:
/// salp-major, dimension-minor. Fitnesses are left empty.
Population init_population(std::size_t n_pop, std::size_t dimension, const Bounds& b, Rng& rng);

/// Evaluate every position of `pop` in order.
void evaluate_population(Population& pop, SearchContext& ctx);

double c1_schedule(double l, double L, C1Variant variant = C1Variant::factor4);

/// Runs exactly cfg.max_iter iterations. Deterministic given cfg.seed apart
/// from wall_time.
RunResult run(Algorithm& algorithm, const Objective& objective, const OptimizerConfig& cfg,
              const IterationObserver& observer = {});

void validate_config(const OptimizerConfig& cfg);

} // namespace salp
