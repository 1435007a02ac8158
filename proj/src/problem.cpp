#include "salp/problem.hpp"

#include "salp/errors.hpp"
#include "salp/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace salp {

namespace {

void fnv1a(std::uint64_t& h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ULL;
    }
}

void check_assignment(std::span<const int> assignment, const ProblemInstance& inst) {
    if (assignment.size() != inst.task_count()) {
        throw InvalidInput("assignment has " + std::to_string(assignment.size()) +
                           " entries, instance has " + std::to_string(inst.task_count()) + " tasks");
    }
    const auto m = static_cast<int>(inst.vm_count());
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        if (assignment[i] < 1 || assignment[i] > m) {
            throw InvalidInput("task " + std::to_string(i + 1) + " assigned to VM " +
                               std::to_string(assignment[i]) + ", valid range is [1, " +
                               std::to_string(m) + "]");
        }
    }
}

} // namespace

ProblemInstance::ProblemInstance(std::vector<double> task_sizes, std::vector<double> vm_speeds,
                                 std::string id)
    : task_sizes_(std::move(task_sizes)), vm_speeds_(std::move(vm_speeds)), id_(std::move(id)) {
    if (task_sizes_.empty()) throw InvalidInput("instance needs at least one task");
    if (vm_speeds_.empty()) throw InvalidInput("instance needs at least one VM");
    for (double t : task_sizes_) {
        if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("task sizes must be positive and finite");
    }
    for (double c : vm_speeds_) {
        if (!(c > 0.0) || !std::isfinite(c)) throw InvalidInput("VM speeds must be positive and finite");
    }
}

std::uint64_t ProblemInstance::checksum() const noexcept {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const std::uint64_t n = task_sizes_.size();
    const std::uint64_t m = vm_speeds_.size();
    fnv1a(h, &n, sizeof n);
    fnv1a(h, task_sizes_.data(), task_sizes_.size() * sizeof(double));
    fnv1a(h, &m, sizeof m);
    fnv1a(h, vm_speeds_.data(), vm_speeds_.size() * sizeof(double));
    return h;
}

double exec_time(double task_size, double vm_speed) {
    if (!(task_size > 0.0) || !(vm_speed > 0.0)) {
        throw InvalidInput("exec_time needs a positive task size and VM speed");
    }
    return task_size / vm_speed;
}

std::vector<double> completion_times(std::span<const int> assignment, const ProblemInstance& inst) {
    check_assignment(assignment, inst);
    const auto& sizes = inst.task_sizes();
    const auto& speeds = inst.vm_speeds();
    std::vector<double> done(inst.vm_count(), 0.0);
    for (std::size_t i = 0; i < assignment.size(); ++i) {
        const auto j = static_cast<std::size_t>(assignment[i] - 1);
        done[j] += sizes[i] / speeds[j];
    }
    return done;
}

double makespan(std::span<const int> assignment, const ProblemInstance& inst) {
    const auto done = completion_times(assignment, inst);
    return *std::max_element(done.begin(), done.end());
}

Assignment decode(std::span<const double> pos, std::size_t m) {
    const double hi = static_cast<double>(m);
    Assignment out(pos.size());
    std::transform(pos.begin(), pos.end(), out.begin(), [hi](double c) {
        return static_cast<int>(std::clamp(std::round(c), 1.0, hi));
    });
    return out;
}

double lower_bound(const ProblemInstance& inst) {
    const auto& sizes = inst.task_sizes();
    const auto& speeds = inst.vm_speeds();
    const double total_work = std::accumulate(sizes.begin(), sizes.end(), 0.0);
    const double total_speed = std::accumulate(speeds.begin(), speeds.end(), 0.0);
    const double largest = *std::max_element(sizes.begin(), sizes.end());
    const double fastest = *std::max_element(speeds.begin(), speeds.end());
    return std::max(total_work / total_speed, largest / fastest);
}

ProblemInstance generate_instance(const InstanceGenSpec& spec) {
    if (spec.n < 1 || spec.m < 1) throw InvalidInput("instance generation needs n >= 1 and m >= 1");
    const auto& ts = spec.task_size_range;
    const auto& vs = spec.vm_speed_range;
    if (ts.lo < 1 || ts.lo > ts.hi) throw InvalidInput("task size range must satisfy 1 <= lo <= hi");
    if (!(vs.lo > 0.0) || !(vs.lo <= vs.hi) || !std::isfinite(vs.hi)) {
        throw InvalidInput("VM speed range must satisfy 0 < lo <= hi");
    }

    Rng rng(spec.seed);
    std::vector<double> sizes(spec.n);
    const auto width = static_cast<std::size_t>(ts.hi - ts.lo + 1);
    for (auto& s : sizes) s = static_cast<double>(ts.lo + static_cast<long long>(rng.index(width)));

    std::vector<double> speeds(spec.m);
    for (auto& c : speeds) {
        c = std::round(rng.uniform(vs.lo, vs.hi) * 10.0) / 10.0;
        c = std::clamp(c, vs.lo, vs.hi);
    }

    std::string id = spec.id;
    if (id.empty()) {
        id = "gen-n" + std::to_string(spec.n) + "-m" + std::to_string(spec.m) + "-s" +
             std::to_string(spec.seed);
    }
    return ProblemInstance(std::move(sizes), std::move(speeds), std::move(id));
}

ProblemInstance parse_instance(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInput(std::string("instance is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InvalidInput("instance document must be a JSON object");
    auto numbers = [&doc](const char* key) {
        if (!doc.contains(key) || !doc[key].is_array()) {
            throw InvalidInput(std::string("instance field '") + key + "' must be an array of numbers");
        }
        std::vector<double> out;
        for (const auto& v : doc[key]) {
            if (!v.is_number()) throw InvalidInput(std::string("instance field '") + key + "' holds a non-number");
            out.push_back(v.get<double>());
        }
        return out;
    };
    std::string id = "instance";
    if (doc.contains("id")) {
        if (!doc["id"].is_string()) throw InvalidInput("instance field 'id' must be a string");
        id = doc["id"].get<std::string>();
    }
    return ProblemInstance(numbers("task_sizes"), numbers("vm_speeds"), std::move(id));
}

ProblemInstance load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::string instance_to_json(const ProblemInstance& inst) {
    nlohmann::ordered_json doc;
    doc["id"] = inst.id();
    doc["task_sizes"] = inst.task_sizes();
    doc["vm_speeds"] = inst.vm_speeds();
    return doc.dump(2) + "\n";
}

void save_instance(const ProblemInstance& inst, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write instance file " + path.string());
    out << instance_to_json(inst);
    if (!out) throw std::runtime_error("failed writing instance file " + path.string());
}

} // namespace salp
