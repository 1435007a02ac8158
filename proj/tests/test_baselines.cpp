#include "salp/algorithms.hpp"
#include "salp/baselines.hpp"
#include "salp/errors.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace salp;

namespace {

struct Fixture {
    ProblemInstance inst;
    Objective obj;
    OptimizerConfig cfg;
    SearchContext ctx;

    explicit Fixture(std::string_view algo, std::uint64_t seed = 3)
        : inst(make_instance()), obj(make_objective(inst)), cfg(seeded(default_config(algo), seed)), ctx(obj, cfg) {}

    static OptimizerConfig seeded(OptimizerConfig c, std::uint64_t seed) {
        c.seed = seed;
        return c;
    }

    static ProblemInstance make_instance() {
        InstanceGenSpec spec;
        spec.n = 25;
        spec.m = 6;
        spec.seed = 12;
        return generate_instance(spec);
    }
};

void check_in_bounds(std::span<const Position> ps, const Bounds& b) {
    for (const auto& p : ps) {
        for (double c : p) REQUIRE(b.contains(c));
    }
}

std::size_t differing_coords(const Position& a, const Position& b) {
    std::size_t d = 0;
    for (std::size_t j = 0; j < a.size(); ++j) d += a[j] != b[j];
    return d;
}

} // namespace

TEST_SUITE("baselines") {

TEST_CASE("ga default parameters") {
    const auto p = GaParams::from_config(default_config("ga"));
    CHECK(p.nc == 32);
    CHECK(p.nm == 12);
    CHECK_FALSE(p.roulette);

    auto cfg = default_config("ga");
    cfg.n_pop = 41;
    CHECK(GaParams::from_config(cfg).nc % 2 == 0);
    cfg.params["pc"] = 0.0;
    CHECK(GaParams::from_config(cfg).nc == 0);
    cfg.params["rws"] = 0.5;
    CHECK_THROWS_AS(GaParams::from_config(cfg), ConfigError);
}

TEST_CASE("ga generation keeps size and elitism") {
    for (bool roulette : {false, true}) {
        Fixture f("ga");
        auto params = GaParams::from_config(f.cfg);
        params.roulette = roulette;
        auto pop = init_population(40, f.obj.dimension, f.obj.bounds, f.ctx.rng());
        evaluate_population(pop, f.ctx);
        sort_population(pop);
        for (int g = 0; g < 50; ++g) {
            const double best = pop.fitnesses.front();
            const auto before = f.ctx.evaluations();
            ga_generation(pop, params, f.ctx);
            CHECK(pop.size() == 40);
            CHECK(pop.fitnesses.front() <= best);
            CHECK(std::is_sorted(pop.fitnesses.begin(), pop.fitnesses.end()));
            CHECK(f.ctx.evaluations() - before == params.nc + params.nm);
            check_in_bounds(pop.positions, f.obj.bounds);
        }
    }
}

TEST_CASE("ga without crossover only mutates and selects") {
    Fixture f("ga");
    auto params = GaParams::from_config(f.cfg);
    params.nc = 0;
    auto pop = init_population(40, f.obj.dimension, f.obj.bounds, f.ctx.rng());
    evaluate_population(pop, f.ctx);
    sort_population(pop);
    const auto old = pop.positions;
    ga_generation(pop, params, f.ctx);
    const auto max_genes = static_cast<std::size_t>(std::ceil(params.mu * static_cast<double>(f.obj.dimension)));
    for (const auto& p : pop.positions) {
        const bool explained = std::any_of(old.begin(), old.end(), [&](const Position& o) {
            return differing_coords(o, p) <= max_genes;
        });
        CHECK(explained);
    }
}

TEST_CASE("selection operators prefer fitter members") {
    Population pop;
    for (int i = 0; i < 10; ++i) {
        pop.positions.push_back({static_cast<double>(i)});
        pop.fitnesses.push_back(10.0 + i);
    }
    Rng rng(2);
    int best_t = 0, best_r = 0;
    for (int k = 0; k < 10000; ++k) {
        best_t += tournament_select(pop, rng) == 0;
        best_r += roulette_select(pop, 8.0, rng) == 0;
    }
    // Tournament of 3 from 10: P(best) = 1 - 0.9^3 = 0.271.
    CHECK(best_t == doctest::Approx(2710).epsilon(0.06));
    CHECK(best_r > 1000);

    // Zero worst fitness must not divide by zero.
    Population zeros;
    zeros.positions.assign(3, Position{1.0});
    zeros.fitnesses.assign(3, 0.0);
    CHECK(roulette_select(zeros, 8.0, rng) < 3);
}

TEST_CASE("pso fixed points") {
    Fixture f("pso");
    SUBCASE("frozen swarm") {
        auto swarm = init_swarm(f.ctx);
        for (auto& v : swarm.velocities) std::fill(v.begin(), v.end(), 0.3);
        const auto start = swarm.positions;
        PsoParams params{0.0, 0.0, 0.0, 1.0};
        // w = 0 kills the initial velocity, c1 = c2 = 0 removes attraction.
        pso_step(swarm, params, f.ctx);
        CHECK(swarm.positions == start);
        pso_step(swarm, params, f.ctx);
        CHECK(swarm.positions == start);
    }
    SUBCASE("particle sitting on both bests stays put") {
        auto swarm = init_swarm(f.ctx);
        const Position g = swarm.global_best.position;
        swarm.positions.assign(1, g);
        swarm.velocities.assign(1, Position(g.size(), 0.0));
        swarm.fitnesses.assign(1, swarm.global_best.fitness);
        swarm.personal_best.assign(1, g);
        swarm.personal_best_fitness.assign(1, swarm.global_best.fitness);
        pso_step(swarm, PsoParams::from_config(f.cfg, f.obj.bounds), f.ctx);
        CHECK(swarm.positions[0] == g);
    }
}

TEST_CASE("pso global best never worsens and stays in bounds") {
    Fixture f("pso");
    const auto params = PsoParams::from_config(f.cfg, f.obj.bounds);
    CHECK(params.v_max == doctest::Approx(0.2 * 5.0));
    auto swarm = init_swarm(f.ctx);
    for (int it = 0; it < 100; ++it) {
        const double before = swarm.global_best.fitness;
        pso_step(swarm, params, f.ctx);
        CHECK(swarm.global_best.fitness <= before);
        check_in_bounds(swarm.positions, f.obj.bounds);
        for (const auto& v : swarm.velocities) {
            for (double c : v) REQUIRE(std::abs(c) <= params.v_max);
        }
        for (std::size_t i = 0; i < swarm.positions.size(); ++i) {
            CHECK(swarm.personal_best_fitness[i] >= swarm.global_best.fitness);
        }
    }
    auto bad = f.cfg;
    bad.params["w"] = 1.0;
    CHECK_THROWS_AS(PsoParams::from_config(bad, f.obj.bounds), ConfigError);
}

TEST_CASE("acor kernel weights") {
    const auto w = acor_weights(40, 0.9);
    REQUIRE(w.size() == 40);
    const double qk = 0.9 * 40;
    CHECK(w[0] == doctest::Approx(1.0 / (qk * std::sqrt(2.0 * std::numbers::pi))));
    CHECK(w[5] == doctest::Approx(std::exp(-25.0 / (2.0 * qk * qk)) / (qk * std::sqrt(2.0 * std::numbers::pi))));
    for (double q : {0.01, 0.1, 0.9, 5.0}) {
        const auto ws = acor_weights(10, q);
        CHECK(std::max_element(ws.begin(), ws.end()) == ws.begin());
        CHECK(std::is_sorted(ws.rbegin(), ws.rend()));
    }
}

TEST_CASE("acor archive update") {
    Fixture f("acor");
    auto params = AcorParams::from_config(f.cfg);
    CHECK(params.archive_size == 40);

    SUBCASE("best non-increasing, size constant, bounds respected") {
        auto archive = init_population(40, f.obj.dimension, f.obj.bounds, f.ctx.rng());
        evaluate_population(archive, f.ctx);
        sort_population(archive);
        for (int it = 0; it < 50; ++it) {
            const double before = archive.fitnesses.front();
            const auto evals = f.ctx.evaluations();
            acor_step(archive, params, 40, f.ctx);
            CHECK(archive.size() == 40);
            CHECK(archive.fitnesses.front() <= before);
            CHECK(f.ctx.evaluations() - evals == 40);
            check_in_bounds(archive.positions, f.obj.bounds);
        }
    }
    SUBCASE("zero deviation reproduces archive members") {
        params.zeta = 0.0;
        auto archive = init_population(40, f.obj.dimension, f.obj.bounds, f.ctx.rng());
        evaluate_population(archive, f.ctx);
        sort_population(archive);
        const auto old = archive.positions;
        acor_step(archive, params, 40, f.ctx);
        for (const auto& p : archive.positions) CHECK(std::find(old.begin(), old.end(), p) != old.end());
    }
    auto bad = f.cfg;
    bad.params["archive_size"] = 1;
    CHECK_THROWS_AS(AcorParams::from_config(bad), ConfigError);
}

TEST_CASE("baseline runs respect the evaluation budget") {
    const auto inst = Fixture::make_instance();
    const auto obj = make_objective(inst);
    for (auto id : {"ga", "pso", "acor"}) {
        auto cfg = default_config(id);
        cfg.max_iter = 20;
        cfg.seed = 8;
        auto algo = make_algorithm(id);
        const auto r = run(*algo, obj, cfg);
        const std::size_t per_iter = cfg.n_pop + (std::string_view(id) == "ga" ? 44 : 0);
        CHECK(r.evaluations <= per_iter * 21);
    }
}

}
