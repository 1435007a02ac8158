#pragma once

// Comparison optimizers on the same continuous search space and decode as
// the salp swarms: a real-coded GA, inertia-weight PSO, and ACOr
// (continuous ant colony with a ranked solution archive).

#include "salp/optimizer.hpp"

#include <cstddef>
#include <string_view>
#include <vector>

namespace salp {

inline constexpr std::string_view kGaId = "ga";
inline constexpr std::string_view kPsoId = "pso";
inline constexpr std::string_view kAcorId = "acor";

// ---------------------------------------------------------------------------
// Genetic algorithm

struct GaParams {
    double pc = 0.8;    // crossover fraction
    double pm = 0.3;    // mutation fraction
    double mu = 0.02;   // per-gene mutation rate
    double beta = 8.0;  // roulette selection pressure
    bool roulette = false;
    std::size_t nc = 32; // offspring per generation, always even
    std::size_t nm = 12; // mutants per generation

    /// Reads pc, pm, mu, beta, rws; nc = round(pc n_pop) rounded to even,
    /// nm = round(pm n_pop).
    static GaParams from_config(const OptimizerConfig& cfg);
};

/// Tournament of size 3 drawn with replacement; lowest fitness wins, ties
/// to the earliest draw.
std::size_t tournament_select(const Population& pop, Rng& rng);

/// Roulette wheel with weights exp(-beta f / f_worst).
std::size_t roulette_select(const Population& pop, double beta, Rng& rng);

/// One generation. `pop` must be sorted by ascending fitness and stays so:
/// nc/2 parent pairs produce nc children by per-gene blend crossover, nm
/// random members are mutated by Gaussian noise on ceil(mu n) distinct
/// genes (sigma = 0.1 (ub - lb)), then parents and children are merged and
/// truncated to the original size.
void ga_generation(Population& pop, const GaParams& params, SearchContext& ctx);

class GaOptimizer final : public Algorithm {
public:
    std::string_view id() const override { return kGaId; }
    void initialize(SearchContext& ctx) override;
    void iterate(SearchContext& ctx, std::size_t l) override;
    const FoodSource& best() const override { return best_; }
    std::span<const Position> positions() const override { return pop_.positions; }

private:
    GaParams params_;
    Population pop_;
    FoodSource best_;
};

// ---------------------------------------------------------------------------
// Particle swarm

struct PsoParams {
    double c1 = 2.0;   // personal learning coefficient
    double c2 = 2.0;   // global learning coefficient
    double w = 0.7;    // inertia weight
    double v_max = 0.0; // absolute per-dimension velocity clamp

    /// Reads c1, c2, w; v_max = v_max_fraction (default 0.2) * (ub - lb).
    static PsoParams from_config(const OptimizerConfig& cfg, const Bounds& bounds);
};

struct Swarm {
    std::vector<Position> positions;
    std::vector<Position> velocities;
    std::vector<double> fitnesses;
    std::vector<Position> personal_best;
    std::vector<double> personal_best_fitness;
    FoodSource global_best;
};

/// Random positions, zero velocities, personal bests at the start points.
Swarm init_swarm(SearchContext& ctx);

/// Canonical inertia-weight update, particle by particle, drawing r1 then r2
/// per dimension. Personal and global bests move on strict improvement and
/// the global best is visible to later particles of the same step.
void pso_step(Swarm& swarm, const PsoParams& params, SearchContext& ctx);

class PsoOptimizer final : public Algorithm {
public:
    std::string_view id() const override { return kPsoId; }
    void initialize(SearchContext& ctx) override;
    void iterate(SearchContext& ctx, std::size_t l) override;
    const FoodSource& best() const override { return swarm_.global_best; }
    std::span<const Position> positions() const override { return swarm_.positions; }

private:
    PsoParams params_;
    Swarm swarm_;
};

// ---------------------------------------------------------------------------
// ACOr

struct AcorParams {
    std::size_t archive_size = 40;
    double q = 0.9;     // intensification factor
    double zeta = 0.1;  // deviation-distance ratio

    static AcorParams from_config(const OptimizerConfig& cfg);
};

/// Kernel weights by rank: exp(-(r-1)^2 / (2 q^2 k^2)) / (q k sqrt(2 pi)).
std::vector<double> acor_weights(std::size_t archive_size, double q);

/// One archive update: n_samples new solutions, each drawn from a Gaussian
/// kernel centred on a weight-chosen archive member with per-dimension
/// deviation zeta * mean distance to the other members; merge and keep the
/// best archive_size. `archive` must be sorted by ascending fitness.
void acor_step(Population& archive, const AcorParams& params, std::size_t n_samples, SearchContext& ctx);

class AcorOptimizer final : public Algorithm {
public:
    std::string_view id() const override { return kAcorId; }
    void initialize(SearchContext& ctx) override;
    void iterate(SearchContext& ctx, std::size_t l) override;
    const FoodSource& best() const override { return best_; }
    std::span<const Position> positions() const override { return archive_.positions; }

private:
    AcorParams params_;
    Population archive_;
    FoodSource best_;
};

/// Stable sort of a population by ascending fitness.
void sort_population(Population& pop);

} // namespace salp
