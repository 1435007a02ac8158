#include "salp/algorithms.hpp"
#include "salp/errors.hpp"
#include "salp/harness.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

using namespace salp;
namespace fs = std::filesystem;

namespace {

ScenarioSpec small_spec(std::vector<std::string> algos, std::size_t iters = 15) {
    ScenarioSpec spec;
    spec.name = "t";
    spec.vm_count = 4;
    spec.task_counts = {12, 20};
    spec.runs_per_cell = 3;
    spec.base_seed = 5;
    for (const auto& a : algos) {
        auto cfg = default_config(a);
        cfg.n_pop = 10;
        cfg.max_iter = iters;
        spec.algorithms.push_back({a, cfg});
    }
    return spec;
}

void check_same_results(const ScenarioReport& a, const ScenarioReport& b) {
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t c = 0; c < a.cells.size(); ++c) {
        REQUIRE(a.cells[c].runs.size() == b.cells[c].runs.size());
        CHECK(a.cells[c].algorithm == b.cells[c].algorithm);
        for (std::size_t r = 0; r < a.cells[c].runs.size(); ++r) {
            const auto& x = a.cells[c].runs[r];
            const auto& y = b.cells[c].runs[r];
            CHECK(x.seed == y.seed);
            CHECK(x.best_makespan == y.best_makespan);
            CHECK(x.best_assignment == y.best_assignment);
            CHECK(x.evaluations == y.evaluations);
            CHECK(x.trace == y.trace);
        }
    }
}

fs::path temp_dir(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("salp_harness_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::vector<std::string>> read_csv(const fs::path& path) {
    std::ifstream in(path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ',')) cols.push_back(col);
        if (!line.empty() && line.back() == ',') cols.emplace_back();
        rows.push_back(cols);
    }
    return rows;
}

} // namespace

TEST_SUITE("harness") {

TEST_CASE("summarize") {
    const std::vector<double> same{5, 5, 5};
    auto s = summarize(same);
    CHECK(s.mean == 5.0);
    CHECK(s.std == 0.0);

    const std::vector<double> pair{1, 3};
    s = summarize(pair);
    CHECK(s.mean == 2.0);
    CHECK(s.std == doctest::Approx(std::sqrt(2.0)));
    CHECK(s.min == 1.0);
    CHECK(s.max == 3.0);

    const std::vector<double> one{7.5};
    CHECK(summarize(one).std == 0.0);
    CHECK_THROWS_AS(summarize(std::vector<double>{}), InvalidInput);
}

TEST_CASE("300-task column of reference means") {
    // Baseline means for SSA, ACOr, PSO, GA; the table prints Average 284.36
    // and STD 16.4148 for them.
    const std::vector<double> baselines{308.00, 282.69, 275.05, 271.71};
    const auto s = summarize(baselines);
    CHECK(std::abs(s.mean - 284.36) <= 0.005);
    CHECK(std::abs(s.std - 16.4148) <= 0.0005);

    const double mssa = 269.80;
    CHECK(std::abs(improvement_vs(mssa, 308.00) - 12.40) <= 0.005);
    CHECK(std::abs(improvement_vs(mssa, s.mean) - 5.12) <= 0.005);
    double mean_imp = 0.0;
    for (double b : baselines) mean_imp += improvement_vs(mssa, b) / 4.0;
    CHECK(std::abs(mean_imp - 4.89) <= 0.005);
    CHECK(improvement_vs(42.0, 42.0) == 0.0);
    CHECK_THROWS_AS(improvement_vs(1.0, 0.0), InvalidInput);
}

TEST_CASE("derived seeds") {
    CHECK(derive_seed(1, "mssa", 150, 0) == derive_seed(1, "mssa", 150, 0));
    std::set<std::uint64_t> seen;
    for (std::uint64_t base : {0u, 1u})
        for (auto algo : kAlgorithmIds)
            for (std::size_t n : {150u, 200u})
                for (std::size_t r = 0; r < 20; ++r) seen.insert(derive_seed(base, algo, n, r));
    CHECK(seen.size() == 2 * 5 * 2 * 20);
}

TEST_CASE("one-cell scenario") {
    auto spec = small_spec({"mssa"});
    spec.task_counts = {12};
    spec.runs_per_cell = 1;
    const auto rep = run_scenario(spec);
    REQUIRE(rep.cells.size() == 1);
    CHECK(rep.cells[0].runs.size() == 1);
    CHECK_FALSE(rep.any_failed());
    REQUIRE(rep.task_summaries.size() == 1);
    CHECK(rep.task_summaries[0].baseline_count == 0);
    CHECK_FALSE(rep.task_summaries[0].improvement_vs_average.has_value());
}

TEST_CASE("scenario determinism across repetitions and worker counts") {
    auto spec = small_spec({"mssa", "ssa", "ga", "pso", "acor"});
    spec.keep_traces = true;
    const auto a = run_scenario(spec);
    const auto b = run_scenario(spec);
    spec.jobs = 4;
    const auto c = run_scenario(spec);
    check_same_results(a, b);
    check_same_results(a, c);
}

TEST_CASE("any cell run can be regenerated alone") {
    const auto spec = small_spec({"mssa", "pso"});
    const auto rep = run_scenario(spec);
    for (const auto& cell : rep.cells) {
        for (const auto& r : cell.runs) {
            const auto& setup = cell.algorithm == "mssa" ? spec.algorithms[0] : spec.algorithms[1];
            const auto again = run_cell_once(spec, setup, cell.task_count, r.run);
            CHECK(again.best_makespan == r.best_makespan);
            CHECK(again.best_assignment == r.best_assignment);
            CHECK(again.seed == r.seed);
        }
    }
}

TEST_CASE("instances are shared within a task count") {
    auto spec = small_spec({"mssa", "ssa", "ga"});
    auto rep = run_scenario(spec);
    for (auto n : spec.task_counts) {
        std::set<std::uint64_t> sums;
        for (const auto& c : rep.cells) {
            if (c.task_count != n) continue;
            for (const auto& r : c.runs) sums.insert(r.instance_checksum);
        }
        CHECK(sums.size() == 1);
        CHECK(*sums.begin() == scenario_instance(spec, n, 0).checksum());
    }

    spec.fresh_instance_per_run = true;
    rep = run_scenario(spec);
    std::set<std::uint64_t> sums;
    for (const auto& r : rep.cell("mssa", 12)->runs) sums.insert(r.instance_checksum);
    CHECK(sums.size() == 3);
}

TEST_CASE("bad cells fail alone") {
    auto spec = small_spec({"mssa", "ssa"});
    spec.algorithms[0].config.params["alpha"] = 7.0;
    const auto rep = run_scenario(spec);
    CHECK(rep.any_failed());
    CHECK(rep.cell("mssa", 12)->failed);
    CHECK(rep.cell("mssa", 12)->error.find("mssa") != std::string::npos);
    CHECK_FALSE(rep.cell("ssa", 12)->failed);
    CHECK(rep.cell("ssa", 20)->summary.mean > 0.0);
}

TEST_CASE("spec validation") {
    auto spec = small_spec({});
    CHECK_THROWS_AS(run_scenario(spec), ConfigError);
    spec = small_spec({"mssa"});
    spec.runs_per_cell = 0;
    CHECK_THROWS_AS(run_scenario(spec), ConfigError);
    spec = small_spec({"mssa"});
    spec.algorithms[0].id = "sa";
    CHECK_THROWS_AS(run_scenario(spec), ConfigError);
    spec = small_spec({"mssa"});
    spec.task_counts.clear();
    CHECK_THROWS_AS(run_scenario(spec), ConfigError);
}

TEST_CASE("improvement figures") {
    const auto rep = run_scenario(small_spec({"ssa", "ga", "mssa"}));
    for (const auto& ts : rep.task_summaries) {
        const double mssa = rep.cell("mssa", ts.task_count)->summary.mean;
        const double ssa = rep.cell("ssa", ts.task_count)->summary.mean;
        const double ga = rep.cell("ga", ts.task_count)->summary.mean;
        REQUIRE(ts.mssa_mean.has_value());
        CHECK(ts.baseline_count == 2);
        CHECK(ts.baseline_means.mean == doctest::Approx((ssa + ga) / 2));
        CHECK(ts.improvement_vs.at("ssa") == doctest::Approx(100.0 * (ssa - mssa) / ssa));
        CHECK(*ts.improvement_vs_average == doctest::Approx(100.0 * ((ssa + ga) / 2 - mssa) / ((ssa + ga) / 2)));
        CHECK(*ts.mean_of_improvements ==
              doctest::Approx((ts.improvement_vs.at("ssa") + ts.improvement_vs.at("ga")) / 2));
    }
}

TEST_CASE("csv exports round-trip the statistics") {
    const auto dir = temp_dir("csv");
    std::vector<ScenarioReport> reports{run_scenario(small_spec({"ssa", "pso", "mssa"}))};
    write_report_csv(dir / "scenario_report.csv", reports);
    write_summary_csv(dir / "summary.csv", reports);

    const auto raw = read_csv(dir / "scenario_report.csv");
    REQUIRE(raw.size() == 1 + 3 * 2 * 3);
    CHECK(raw[0] == std::vector<std::string>{"scenario", "vm_count", "task_count", "algorithm", "run", "seed",
                                             "best_makespan", "evaluations", "wall_ms"});
    std::map<std::pair<std::string, std::string>, std::vector<double>> values;
    for (std::size_t i = 1; i < raw.size(); ++i) {
        REQUIRE(raw[i].size() == 9);
        values[{raw[i][3], raw[i][2]}].push_back(std::stod(raw[i][6]));
    }

    const auto summary = read_csv(dir / "summary.csv");
    CHECK(summary[0] == std::vector<std::string>{"scenario", "task_count", "algorithm", "mean", "std", "min", "max",
                                                 "improvement_vs_mssa_pct"});
    int checked = 0;
    std::set<std::string> labels;
    for (std::size_t i = 1; i < summary.size(); ++i) {
        labels.insert(summary[i][2]);
        auto it = values.find({summary[i][2], summary[i][1]});
        if (it == values.end()) continue;
        const auto s = summarize(it->second);
        CHECK(std::abs(std::stod(summary[i][3]) - s.mean) <= 1e-9 * s.mean);
        CHECK(std::abs(std::stod(summary[i][4]) - s.std) <= 1e-9 * std::max(1.0, s.std));
        ++checked;
    }
    CHECK(checked == 6);
    CHECK(labels.count("baseline_average") == 1);
    CHECK(labels.count("mean_of_improvements") == 1);
}

TEST_CASE("trace csv and table layout") {
    const auto dir = temp_dir("trace");
    CHECK(trace_file_name("first", "mssa", 3) == "first_mssa_3.csv");
    const std::vector<double> trace{3.5, 2.25, 2.25};
    write_trace_csv(dir / "t.csv", trace);
    const auto rows = read_csv(dir / "t.csv");
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == std::vector<std::string>{"iteration", "best_fitness"});
    CHECK(rows[2] == std::vector<std::string>{"2", "2.25"});

    auto spec = small_spec({"ssa", "mssa"});
    spec.task_counts = {12, 30, 20};
    const auto table = format_table(run_scenario(spec));
    const auto header = table.substr(table.find("tasks"));
    CHECK(header.find("30") < header.find("20"));
    CHECK(header.find("20") < header.find("12"));
    CHECK(table.find("Average") < table.find("mssa"));
    CHECK(table.find("Improvement vs ssa") != std::string::npos);
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 36.666666666666664, 80.88235294117648, 1e-300, 12345678.9}) {
        CHECK(std::stod(format_number(v)) == v);
    }
}

}
