#include "salp/harness.hpp"

#include "salp/algorithms.hpp"
#include "salp/errors.hpp"
#include "salp/mssa.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

namespace salp {

namespace {

void fnv1a(std::uint64_t& h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
}

void fnv1a_u64(std::uint64_t& h, std::uint64_t v) {
    unsigned char bytes[8];
    for (int i = 0; i < 8; ++i) bytes[i] = static_cast<unsigned char>(v >> (8 * i));
    fnv1a(h, bytes, sizeof bytes);
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::ofstream open_csv(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void finish_csv(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

std::string fixed(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

} // namespace

const CellResult* ScenarioReport::cell(std::string_view algorithm, std::size_t task_count) const {
    for (const auto& c : cells) {
        if (c.algorithm == algorithm && c.task_count == task_count) return &c;
    }
    return nullptr;
}

bool ScenarioReport::any_failed() const {
    return std::any_of(cells.begin(), cells.end(), [](const CellResult& c) { return c.failed; });
}

Summary summarize(std::span<const double> values) {
    if (values.empty()) throw InvalidInput("summarize needs at least one value");
    Summary s;
    const double n = static_cast<double>(values.size());
    s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / (n - 1.0));
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    s.min = *lo;
    s.max = *hi;
    return s;
}

double improvement_vs(double mssa_mean, double baseline_mean) {
    if (!(baseline_mean > 0.0)) throw InvalidInput("improvement needs a positive baseline mean");
    return 100.0 * (baseline_mean - mssa_mean) / baseline_mean;
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::string_view algorithm, std::size_t task_count,
                          std::size_t run) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    fnv1a_u64(h, base_seed);
    fnv1a_u64(h, algorithm.size());
    fnv1a(h, algorithm.data(), algorithm.size());
    fnv1a_u64(h, task_count);
    fnv1a_u64(h, run);
    return splitmix64(h);
}

ProblemInstance scenario_instance(const ScenarioSpec& spec, std::size_t task_count, std::size_t run) {
    InstanceGenSpec gen = spec.gen_spec;
    gen.n = task_count;
    gen.m = spec.vm_count;
    gen.seed = derive_seed(spec.base_seed, "instance", task_count, spec.fresh_instance_per_run ? run : 0);
    gen.id = spec.name + "-n" + std::to_string(task_count) + "-m" + std::to_string(spec.vm_count);
    if (spec.fresh_instance_per_run) gen.id += "-r" + std::to_string(run);
    return generate_instance(gen);
}

void validate_scenario(const ScenarioSpec& spec) {
    if (spec.algorithms.empty()) throw ConfigError("scenario '" + spec.name + "' has no algorithms");
    if (spec.task_counts.empty()) throw ConfigError("scenario '" + spec.name + "' has no task counts");
    if (spec.runs_per_cell < 1) throw ConfigError("runs_per_cell must be at least 1");
    if (spec.vm_count < 1) throw ConfigError("vm_count must be at least 1");
    for (auto n : spec.task_counts) {
        if (n < 1) throw ConfigError("task counts must be at least 1");
    }
    for (const auto& a : spec.algorithms) {
        if (!is_known_algorithm(a.id)) {
            throw ConfigError("unknown algorithm '" + a.id + "', expected one of " + algorithm_choices());
        }
    }
}

namespace {

RunRecord execute_run(const ScenarioSpec& spec, const AlgorithmSetup& setup, const ProblemInstance& inst,
                      std::size_t task_count, std::size_t run) {
    OptimizerConfig cfg = setup.config;
    cfg.seed = derive_seed(spec.base_seed, setup.id, task_count, run);
    auto algorithm = make_algorithm(setup.id);
    const auto result = salp::run(*algorithm, make_objective(inst), cfg);

    RunRecord rec;
    rec.run = run;
    rec.seed = cfg.seed;
    rec.best_makespan = result.best_fitness;
    rec.evaluations = result.evaluations;
    rec.wall_ms = result.wall_time.count();
    rec.best_assignment = decode(result.best_position, inst.vm_count());
    if (spec.keep_traces) rec.trace = result.trace;
    rec.instance_checksum = inst.checksum();
    return rec;
}

} // namespace

RunRecord run_cell_once(const ScenarioSpec& spec, const AlgorithmSetup& setup, std::size_t task_count,
                        std::size_t run) {
    return execute_run(spec, setup, scenario_instance(spec, task_count, run), task_count, run);
}

ScenarioReport run_scenario(const ScenarioSpec& spec) {
    validate_scenario(spec);

    std::vector<ProblemInstance> shared;
    if (!spec.fresh_instance_per_run) {
        for (auto n : spec.task_counts) shared.push_back(scenario_instance(spec, n, 0));
    }

    ScenarioReport report;
    report.name = spec.name;
    report.vm_count = spec.vm_count;
    for (const auto& a : spec.algorithms) {
        for (auto n : spec.task_counts) {
            CellResult c;
            c.algorithm = a.id;
            c.task_count = n;
            c.runs.resize(spec.runs_per_cell);
            report.cells.push_back(std::move(c));
        }
    }

    struct Job {
        std::size_t cell;
        std::size_t algorithm;
        std::size_t task_index;
        std::size_t run;
        std::string error;
    };
    std::vector<Job> jobs;
    for (std::size_t a = 0; a < spec.algorithms.size(); ++a) {
        for (std::size_t t = 0; t < spec.task_counts.size(); ++t) {
            for (std::size_t r = 0; r < spec.runs_per_cell; ++r) {
                jobs.push_back({a * spec.task_counts.size() + t, a, t, r, {}});
            }
        }
    }

    auto work = [&](Job& job) {
        const auto& setup = spec.algorithms[job.algorithm];
        const auto n = spec.task_counts[job.task_index];
        try {
            report.cells[job.cell].runs[job.run] =
                spec.fresh_instance_per_run ? run_cell_once(spec, setup, n, job.run)
                                            : execute_run(spec, setup, shared[job.task_index], n, job.run);
        } catch (const std::exception& e) {
            job.error = e.what();
        }
    };

    std::size_t workers = spec.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : spec.jobs;
    workers = std::min(workers, jobs.size());
    if (workers <= 1) {
        for (auto& job : jobs) work(job);
    } else {
        // Each job writes only its own slot, so results do not depend on
        // which thread runs what.
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < jobs.size(); i = next++) work(jobs[i]);
            });
        }
    }

    for (const auto& job : jobs) {
        if (job.error.empty()) continue;
        auto& c = report.cells[job.cell];
        if (!c.failed) {
            c.failed = true;
            c.error = "cell (" + spec.name + ", " + c.algorithm + ", n=" + std::to_string(c.task_count) +
                      ") run " + std::to_string(job.run) + ": " + job.error;
        }
    }

    for (auto& c : report.cells) {
        if (c.failed) continue;
        std::vector<double> values;
        for (const auto& r : c.runs) values.push_back(r.best_makespan);
        c.summary = summarize(values);
    }

    for (auto n : spec.task_counts) {
        TaskCountSummary ts;
        ts.task_count = n;
        std::vector<double> baseline_means;
        std::vector<std::string> baseline_ids;
        for (const auto& c : report.cells) {
            if (c.task_count != n || c.failed) continue;
            if (c.algorithm == kMssaId) {
                ts.mssa_mean = c.summary.mean;
            } else {
                baseline_means.push_back(c.summary.mean);
                baseline_ids.push_back(c.algorithm);
            }
        }
        ts.baseline_count = baseline_means.size();
        if (!baseline_means.empty()) {
            ts.baseline_means = summarize(baseline_means);
            if (ts.mssa_mean) {
                double sum = 0.0;
                for (std::size_t b = 0; b < baseline_means.size(); ++b) {
                    const double imp = improvement_vs(*ts.mssa_mean, baseline_means[b]);
                    ts.improvement_vs[baseline_ids[b]] = imp;
                    sum += imp;
                }
                ts.improvement_vs_average = improvement_vs(*ts.mssa_mean, ts.baseline_means.mean);
                ts.mean_of_improvements = sum / static_cast<double>(baseline_means.size());
            }
        }
        report.task_summaries.push_back(std::move(ts));
    }
    return report;
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trace_file_name(std::string_view scenario, std::string_view algorithm, std::size_t run) {
    return std::string(scenario) + "_" + std::string(algorithm) + "_" + std::to_string(run) + ".csv";
}

void write_trace_csv(const std::filesystem::path& path, std::span<const double> trace) {
    auto out = open_csv(path);
    out << "iteration,best_fitness\n";
    for (std::size_t i = 0; i < trace.size(); ++i) out << (i + 1) << ',' << format_number(trace[i]) << '\n';
    finish_csv(out, path);
}

void write_report_csv(const std::filesystem::path& path, std::span<const ScenarioReport> reports) {
    auto out = open_csv(path);
    out << "scenario,vm_count,task_count,algorithm,run,seed,best_makespan,evaluations,wall_ms\n";
    for (const auto& rep : reports) {
        for (const auto& c : rep.cells) {
            if (c.failed) continue;
            for (const auto& r : c.runs) {
                out << rep.name << ',' << rep.vm_count << ',' << c.task_count << ',' << c.algorithm << ','
                    << r.run << ',' << r.seed << ',' << format_number(r.best_makespan) << ',' << r.evaluations
                    << ',' << fixed(r.wall_ms, 3) << '\n';
            }
        }
    }
    finish_csv(out, path);
}

void write_summary_csv(const std::filesystem::path& path, std::span<const ScenarioReport> reports) {
    auto out = open_csv(path);
    out << "scenario,task_count,algorithm,mean,std,min,max,improvement_vs_mssa_pct\n";
    auto stats = [](const Summary& s) {
        return format_number(s.mean) + ',' + format_number(s.std) + ',' + format_number(s.min) + ',' +
               format_number(s.max);
    };
    for (const auto& rep : reports) {
        for (const auto& ts : rep.task_summaries) {
            for (const auto& c : rep.cells) {
                if (c.task_count != ts.task_count || c.failed) continue;
                out << rep.name << ',' << c.task_count << ',' << c.algorithm << ',' << stats(c.summary) << ',';
                if (auto it = ts.improvement_vs.find(c.algorithm); it != ts.improvement_vs.end()) {
                    out << format_number(it->second);
                }
                out << '\n';
            }
            if (ts.baseline_count > 0) {
                out << rep.name << ',' << ts.task_count << ",baseline_average," << stats(ts.baseline_means) << ',';
                if (ts.improvement_vs_average) out << format_number(*ts.improvement_vs_average);
                out << '\n';
            }
            if (ts.mean_of_improvements) {
                out << rep.name << ',' << ts.task_count << ",mean_of_improvements,,,,,"
                    << format_number(*ts.mean_of_improvements) << '\n';
            }
        }
    }
    finish_csv(out, path);
}

std::string format_table(const ScenarioReport& report) {
    std::vector<std::size_t> columns;
    for (const auto& ts : report.task_summaries) columns.push_back(ts.task_count);
    std::sort(columns.rbegin(), columns.rend());

    auto summary_for = [&](std::size_t n) -> const TaskCountSummary* {
        for (const auto& ts : report.task_summaries) {
            if (ts.task_count == n) return &ts;
        }
        return nullptr;
    };

    std::vector<std::string> algorithms;
    for (const auto& c : report.cells) {
        if (std::find(algorithms.begin(), algorithms.end(), c.algorithm) == algorithms.end()) {
            algorithms.push_back(c.algorithm);
        }
    }
    // Baselines first, mssa after the average rows.
    std::stable_partition(algorithms.begin(), algorithms.end(), [](const std::string& a) { return a != kMssaId; });

    std::ostringstream os;
    char buf[64];
    auto row = [&](const std::string& label, auto value_of) {
        std::snprintf(buf, sizeof buf, "%-28s", label.c_str());
        os << buf;
        for (auto n : columns) {
            const std::string v = value_of(n);
            std::snprintf(buf, sizeof buf, "%12s", v.c_str());
            os << buf;
        }
        os << '\n';
    };

    os << "scenario " << report.name << " (" << report.vm_count << " VMs)\n";
    row("tasks", [](std::size_t n) { return std::to_string(n); });
    bool averages_done = false;
    for (const auto& a : algorithms) {
        if (a == kMssaId && !averages_done) {
            row("Average", [&](std::size_t n) { return fixed(summary_for(n)->baseline_means.mean, 2); });
            row("STD", [&](std::size_t n) { return fixed(summary_for(n)->baseline_means.std, 4); });
            averages_done = true;
        }
        row(a, [&](std::size_t n) {
            const auto* c = report.cell(a, n);
            return (c == nullptr || c->failed) ? std::string("failed") : fixed(c->summary.mean, 2);
        });
    }
    const bool has_mssa = std::find(algorithms.begin(), algorithms.end(), kMssaId) != algorithms.end();
    if (has_mssa) {
        auto pct = [](const std::optional<double>& v) { return v ? fixed(*v, 2) + "%" : std::string("-"); };
        row("Improvement vs average", [&](std::size_t n) { return pct(summary_for(n)->improvement_vs_average); });
        row("Mean of improvements", [&](std::size_t n) { return pct(summary_for(n)->mean_of_improvements); });
        for (const auto& a : algorithms) {
            if (a == kMssaId) continue;
            row("Improvement vs " + a, [&](std::size_t n) {
                const auto& m = summary_for(n)->improvement_vs;
                auto it = m.find(a);
                return it == m.end() ? std::string("-") : fixed(it->second, 2) + "%";
            });
        }
    }
    return os.str();
}

} // namespace salp
