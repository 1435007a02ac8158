#include "cli.hpp"

#include "salp/algorithms.hpp"
#include "salp/errors.hpp"
#include "salp/harness.hpp"
#include "salp/oracle.hpp"
#include "salp/problem.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

namespace salp::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::size_t jobs = 1;
    std::string output_dir = ".";
    std::string algo;
    std::string instance_path;
    std::vector<std::string> overrides;
    bool traces = false;
};

// I/O problems map to exit 1; everything thrown as InvalidInput/ConfigError
// maps to exit 2.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

json load_config(const Options& opt) {
    json doc = json::object();
    if (!opt.config_path.empty()) {
        std::ifstream in(opt.config_path);
        if (!in) throw IoError("cannot open config file " + opt.config_path);
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError("config file " + opt.config_path + " is not valid JSON: " + e.what());
        }
        if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
    }
    for (const auto& o : opt.overrides) apply_override(doc, o);
    return doc;
}

std::uint64_t get_u64(const json& doc, const char* key, std::uint64_t fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& v = doc[key];
    if (!v.is_number_unsigned()) throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

double get_number(const json& doc, const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return doc[key].get<double>();
}

std::string get_string(const json& doc, const char* key, const std::string& fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
    return doc[key].get<std::string>();
}

template <typename Range>
Range get_range(const json& doc, const char* key, Range fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& v = doc[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ConfigError(std::string("'") + key + "' must be a [lo, hi] pair of numbers");
    }
    Range r;
    r.lo = v[0].get<decltype(r.lo)>();
    r.hi = v[1].get<decltype(r.hi)>();
    return r;
}

/// Algorithm defaults, then n_pop / max_iter / params / c1_variant from
/// `doc` layered on top.
OptimizerConfig algorithm_config(const std::string& id, const json& doc, OptimizerConfig base) {
    base.n_pop = get_u64(doc, "n_pop", base.n_pop);
    base.max_iter = get_u64(doc, "max_iter", base.max_iter);
    if (doc.contains("params")) {
        if (!doc["params"].is_object()) throw ConfigError("'params' must be an object");
        for (const auto& [k, v] : doc["params"].items()) {
            if (!v.is_number()) throw ConfigError("parameter '" + k + "' of " + id + " must be a number");
            base.params[k] = v.get<double>();
        }
    }
    if (doc.contains("c1_variant")) {
        const auto variant = get_string(doc, "c1_variant", "factor4");
        if (variant == "factor4") base.params["c1_variant"] = 0.0;
        else if (variant == "no_factor") base.params["c1_variant"] = 1.0;
        else throw ConfigError("c1_variant must be 'factor4' or 'no_factor'");
    }
    validate_config(base);
    return base;
}

std::string require_algorithm(const std::string& id) {
    if (!is_known_algorithm(id)) {
        throw ConfigError("unknown algorithm '" + id + "', valid choices: " + algorithm_choices());
    }
    return id;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

ProblemInstance read_instance(const std::string& path) {
    if (path.empty()) throw ConfigError("no instance given (use --instance PATH or the 'instance' config field)");
    std::ifstream in(path);
    if (!in) throw IoError("cannot open instance file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string join_assignment(const Assignment& a) {
    std::string s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(a[i]);
    }
    return s;
}

int cmd_solve(const Options& opt, std::ostream& out) {
    const json doc = load_config(opt);
    const std::string id = require_algorithm(opt.algo.empty() ? get_string(doc, "algorithm", "mssa") : opt.algo);
    OptimizerConfig cfg = algorithm_config(id, doc, default_config(id));
    cfg.seed = opt.seed.value_or(get_u64(doc, "seed", 0));
    const auto inst = read_instance(opt.instance_path.empty() ? get_string(doc, "instance", "") : opt.instance_path);

    auto algorithm = make_algorithm(id);
    const auto result = run(*algorithm, make_objective(inst), cfg);
    const auto assignment = decode(result.best_position, inst.vm_count());

    const fs::path dir = opt.output_dir;
    ensure_dir(dir);
    {
        const auto path = dir / "result.csv";
        std::ofstream f(path, std::ios::binary);
        if (!f) throw IoError("cannot write " + path.string());
        f << "instance,algorithm,seed,makespan,evaluations,assignment\n"
          << inst.id() << ',' << id << ',' << cfg.seed << ',' << format_number(result.best_fitness) << ','
          << result.evaluations << ',' << join_assignment(assignment) << '\n';
        if (!f) throw IoError("failed writing " + path.string());
    }
    write_trace_csv(dir / trace_file_name(inst.id(), id, 0), result.trace);

    out << "makespan " << format_number(result.best_fitness) << '\n';
    return kExitOk;
}

std::vector<ScenarioSpec> scenario_specs(const Options& opt, const json& doc) {
    const auto base_seed = opt.seed.value_or(get_u64(doc, "base_seed", 0));
    const auto runs = get_u64(doc, "runs_per_cell", 20);
    const bool fresh = doc.value("fresh_instance_per_run", false);

    InstanceGenSpec gen;
    if (doc.contains("instance")) {
        const auto& g = doc["instance"];
        if (!g.is_object()) throw ConfigError("'instance' must be an object");
        gen.task_size_range = get_range(g, "task_size_range", gen.task_size_range);
        gen.vm_speed_range = get_range(g, "vm_speed_range", gen.vm_speed_range);
    }

    // Top-level n_pop / max_iter act as defaults for every algorithm entry.
    json shared = json::object();
    for (const char* key : {"n_pop", "max_iter"}) {
        if (doc.contains(key)) shared[key] = doc[key];
    }

    if (!doc.contains("algorithms") || !doc["algorithms"].is_array()) {
        throw ConfigError("'algorithms' must be a list");
    }
    std::vector<AlgorithmSetup> algorithms;
    for (const auto& entry : doc["algorithms"]) {
        json a = shared;
        if (entry.is_string()) {
            a["id"] = entry;
        } else if (entry.is_object()) {
            a.update(entry);
        } else {
            throw ConfigError("each algorithm entry must be an id string or an object with an 'id'");
        }
        const std::string id = require_algorithm(get_string(a, "id", ""));
        if (!opt.algo.empty() && id != opt.algo) continue;
        algorithms.push_back({id, algorithm_config(id, a, default_config(id))});
    }
    if (!opt.algo.empty()) require_algorithm(opt.algo);
    if (algorithms.empty()) throw ConfigError("no algorithms selected");

    if (!doc.contains("scenarios") || !doc["scenarios"].is_array() || doc["scenarios"].empty()) {
        throw ConfigError("'scenarios' must be a non-empty list");
    }
    std::vector<ScenarioSpec> specs;
    for (const auto& s : doc["scenarios"]) {
        if (!s.is_object()) throw ConfigError("each scenario must be an object");
        ScenarioSpec spec;
        spec.name = get_string(s, "name", "scenario" + std::to_string(specs.size() + 1));
        spec.vm_count = get_u64(s, "vm_count", 0);
        if (!s.contains("task_counts") || !s["task_counts"].is_array()) {
            throw ConfigError("scenario '" + spec.name + "' needs a 'task_counts' list");
        }
        spec.task_counts.clear();
        for (const auto& n : s["task_counts"]) {
            if (!n.is_number_unsigned()) throw ConfigError("task counts must be non-negative integers");
            spec.task_counts.push_back(n.get<std::size_t>());
        }
        spec.runs_per_cell = runs;
        spec.base_seed = base_seed;
        spec.gen_spec = gen;
        spec.algorithms = algorithms;
        spec.fresh_instance_per_run = fresh;
        spec.jobs = opt.jobs;
        spec.keep_traces = opt.traces;
        validate_scenario(spec);
        specs.push_back(std::move(spec));
    }
    return specs;
}

int cmd_scenario(const Options& opt, std::ostream& out, std::ostream& err) {
    if (opt.config_path.empty()) throw ConfigError("scenario needs --config PATH");
    const json doc = load_config(opt);
    const auto specs = scenario_specs(opt, doc);

    const fs::path dir = opt.output_dir;
    ensure_dir(dir);
    if (opt.traces) ensure_dir(dir / "traces");

    std::vector<ScenarioReport> reports;
    bool failed = false;
    for (const auto& spec : specs) {
        auto report = run_scenario(spec);
        for (const auto& c : report.cells) {
            if (c.failed) {
                err << "error: " << c.error << '\n';
                failed = true;
                continue;
            }
            if (!opt.traces) continue;
            for (const auto& r : c.runs) {
                write_trace_csv(dir / "traces" / trace_file_name(spec.name + "-n" + std::to_string(c.task_count),
                                                                 c.algorithm, r.run),
                                r.trace);
            }
        }
        out << format_table(report) << '\n';
        reports.push_back(std::move(report));
    }
    write_report_csv(dir / "scenario_report.csv", reports);
    write_summary_csv(dir / "summary.csv", reports);
    return failed ? kExitFailure : kExitOk;
}

int cmd_gen_instance(const Options& opt, std::ostream& out) {
    const json doc = load_config(opt);
    InstanceGenSpec spec;
    spec.n = get_u64(doc, "n", 0);
    spec.m = get_u64(doc, "m", 0);
    spec.task_size_range = get_range(doc, "task_size_range", spec.task_size_range);
    spec.vm_speed_range = get_range(doc, "vm_speed_range", spec.vm_speed_range);
    spec.seed = opt.seed.value_or(get_u64(doc, "seed", 0));
    spec.id = get_string(doc, "id", "");
    const auto inst = generate_instance(spec);

    const fs::path dir = opt.output_dir;
    ensure_dir(dir);
    const auto path = dir / (inst.id() + ".json");
    try {
        save_instance(inst, path);
    } catch (const std::runtime_error& e) {
        throw IoError(e.what());
    }
    out << path.string() << '\n';
    return kExitOk;
}

int cmd_oracle(const Options& opt, std::ostream& out) {
    const json doc = load_config(opt);
    const auto inst = read_instance(opt.instance_path.empty() ? get_string(doc, "instance", "") : opt.instance_path);
    const auto limit = get_u64(doc, "limit", kDefaultOracleLimit);
    const auto result = brute_force_optimal(inst, limit);
    out << "optimal_makespan " << format_number(result.optimal_makespan) << '\n'
        << "assignment " << join_assignment(result.optimal_assignment) << '\n'
        << "assignments_searched " << result.assignments_searched << '\n';
    return kExitOk;
}

} // namespace

void apply_override(json& doc, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override '" + assignment + "' is not key=value");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);

    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }

    json* node = &doc;
    std::stringstream path(key);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(path, part, '.')) {
        if (part.empty()) throw ConfigError("override key '" + key + "' has an empty segment");
        parts.push_back(part);
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& p = parts[i];
        const bool last = i + 1 == parts.size();
        if (node->is_array()) {
            std::size_t idx = 0;
            try {
                idx = std::stoul(p);
            } catch (const std::exception&) {
                throw ConfigError("override key '" + key + "': '" + p + "' is not an array index");
            }
            if (idx >= node->size()) throw ConfigError("override key '" + key + "': index out of range");
            node = &(*node)[idx];
        } else {
            if (node->is_null()) *node = json::object();
            if (!node->is_object()) throw ConfigError("override key '" + key + "' descends into a scalar");
            node = &(*node)[p];
        }
        if (last) *node = value;
    }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opt;
    CLI::App app{"Salp swarm task scheduler and benchmark harness", "salpsched"};
    app.require_subcommand(1);

    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON config file");
        sub->add_option("--seed", opt.seed, "Seed (overrides the config)");
        sub->add_option("--output", opt.output_dir, "Output directory");
        sub->add_option("--set", opt.overrides, "Config override key=value (repeatable)");
    };

    auto* solve = app.add_subcommand("solve", "Optimize one instance with one algorithm");
    add_common(solve);
    solve->add_option("--instance", opt.instance_path, "Instance JSON file");
    solve->add_option("--algo", opt.algo, "Algorithm: " + algorithm_choices());

    auto* scenario = app.add_subcommand("scenario", "Run a scenario sweep and write CSV reports");
    add_common(scenario);
    scenario->add_option("--jobs", opt.jobs, "Parallel runs (0 = all cores)");
    scenario->add_option("--algo", opt.algo, "Restrict the sweep to one algorithm");
    scenario->add_flag("--traces", opt.traces, "Write per-run convergence traces");

    auto* gen = app.add_subcommand("gen-instance", "Generate a random instance file");
    add_common(gen);

    auto* oracle = app.add_subcommand("oracle", "Brute-force the optimal makespan of a tiny instance");
    add_common(oracle);
    oracle->add_option("--instance", opt.instance_path, "Instance JSON file");

    std::vector<std::string> argv_store{"salpsched"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_store) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(opt, out);
        if (scenario->parsed()) return cmd_scenario(opt, out, err);
        if (gen->parsed()) return cmd_gen_instance(opt, out);
        if (oracle->parsed()) return cmd_oracle(opt, out);
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const SearchSpaceTooLarge& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const json::exception& e) {
        err << "error: invalid config: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace salp::cli
