#pragma once

// Salp swarm optimizers: the standard chain (one leader, midpoint followers)
// and the modified swarm with a leader group that samples around the food
// source and noisy followers.

#include "salp/optimizer.hpp"

#include <cstddef>
#include <string_view>

namespace salp {

inline constexpr std::string_view kMssaId = "mssa";
inline constexpr std::string_view kSsaId = "ssa";

struct MssaParams {
    double alpha = 0.19;           // leader random-step coefficient
    double leader_fraction = 0.5;  // fixed
    C1Variant c1_variant = C1Variant::factor4;

    /// Reads `alpha` (required) and `c1_variant` (0 = factor4, 1 = no_factor).
    static MssaParams from_config(const OptimizerConfig& cfg);
};

struct SsaParams {
    C1Variant c1_variant = C1Variant::factor4;

    static SsaParams from_config(const OptimizerConfig& cfg);
};

/// Number of salps in the leader group for a population of n: floor(n / 2).
std::size_t leader_count(std::size_t n_pop) noexcept;

/// F_j + alpha * N(0,1), one draw per dimension. Not clamped.
Position mssa_leader_update(const FoodSource& food, double alpha, Rng& rng);

/// (self_j + prev_j) / 2 + c1 * N(0,1), one draw per dimension. Not clamped.
Position mssa_follower_update(const Position& self_pos, const Position& prev_pos, double c1, Rng& rng);

struct SweepCounts {
    std::size_t leader_updates = 0;
    std::size_t follower_updates = 0;
};

/// One modified-swarm sweep over salps in index order. Each salp is moved,
/// clamped and evaluated before the next one moves. A leader replaces the
/// food source when its fitness is <= the food's; a follower only when it
/// is strictly better. Replacements are visible to the rest of the sweep.
SweepCounts mssa_iteration(Population& pop, FoodSource& food, double c1, const MssaParams& params,
                           SearchContext& ctx);

/// One coordinate of the standard leader move for given c2, c3.
double ssa_leader_coordinate(double food_j, const Bounds& bounds, double c1, double c2, double c3) noexcept;

/// F_j +/- c1 ((ub - lb) c2 + lb) with c2, c3 ~ U[0,1) drawn per dimension
/// in that order; the sign is + when c3 >= 0.5. Not clamped.
Position ssa_leader_update(const FoodSource& food, const Bounds& bounds, double c1, Rng& rng);

/// Coordinate-wise midpoint of self and predecessor.
Position ssa_follower_update(const Position& self_pos, const Position& prev_pos);

/// One standard-chain sweep: salp 0 follows the food source, salp i > 0
/// moves to the midpoint with the already-moved salp i-1. The whole chain
/// is then clamped and evaluated, and the food source takes the best salp
/// if it is strictly better.
void ssa_iteration(Population& pop, FoodSource& food, double c1, SearchContext& ctx);

/// Index of the first minimum fitness.
std::size_t best_index(const Population& pop);

class MssaOptimizer final : public Algorithm {
public:
    std::string_view id() const override { return kMssaId; }
    void initialize(SearchContext& ctx) override;
    void iterate(SearchContext& ctx, std::size_t l) override;
    const FoodSource& best() const override { return food_; }
    std::span<const Position> positions() const override { return pop_.positions; }

    const Population& population() const noexcept { return pop_; }
    const SweepCounts& last_sweep() const noexcept { return last_sweep_; }

private:
    MssaParams params_;
    Population pop_;
    FoodSource food_;
    SweepCounts last_sweep_;
};

class SsaOptimizer final : public Algorithm {
public:
    std::string_view id() const override { return kSsaId; }
    void initialize(SearchContext& ctx) override;
    void iterate(SearchContext& ctx, std::size_t l) override;
    const FoodSource& best() const override { return food_; }
    std::span<const Position> positions() const override { return pop_.positions; }

private:
    SsaParams params_;
    Population pop_;
    FoodSource food_;
};

} // namespace salp
