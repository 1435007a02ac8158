#pragma once

// Static task-to-VM scheduling: instances, the continuous <-> discrete
// encoding and the makespan objective.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace salp {

/// Continuous search-space point; one coordinate per task, read as a fuzzy
/// 1-based VM index.
using Position = std::vector<double>;

/// Discrete schedule: entry i is the 1-based VM index running task i.
using Assignment = std::vector<int>;

/// Immutable scheduling problem: n task sizes (work units) and m VM speeds
/// (work units per second). Construction validates n, m >= 1 and positivity.
class ProblemInstance {
public:
    ProblemInstance(std::vector<double> task_sizes, std::vector<double> vm_speeds,
                    std::string id = "instance");

    const std::vector<double>& task_sizes() const noexcept { return task_sizes_; }
    const std::vector<double>& vm_speeds() const noexcept { return vm_speeds_; }
    const std::string& id() const noexcept { return id_; }
    std::size_t task_count() const noexcept { return task_sizes_.size(); }
    std::size_t vm_count() const noexcept { return vm_speeds_.size(); }

    /// FNV-1a over the raw bytes of sizes and speeds. Equal instances have
    /// equal checksums; the id is not included.
    std::uint64_t checksum() const noexcept;

    friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;

private:
    std::vector<double> task_sizes_;
    std::vector<double> vm_speeds_;
    std::string id_;
};

struct IntRange {
    long long lo = 0;
    long long hi = 0;
};

struct RealRange {
    double lo = 0.0;
    double hi = 0.0;
};

/// Recipe for a random instance. Sizes are uniform integers, speeds are
/// uniform reals rounded to one decimal.
struct InstanceGenSpec {
    std::size_t n = 0;
    std::size_t m = 0;
    IntRange task_size_range{10, 45};
    RealRange vm_speed_range{1.0, 4.0};
    std::uint64_t seed = 0;
    std::string id;
};

double exec_time(double task_size, double vm_speed);

std::vector<double> completion_times(std::span<const int> assignment, const ProblemInstance& inst);

double makespan(std::span<const int> assignment, const ProblemInstance& inst);

/// Round half away from zero, then clamp to [1, m].
Assignment decode(std::span<const double> pos, std::size_t m);

/// max(total work / total speed, largest task / fastest VM). Never exceeds
/// the optimal makespan.
double lower_bound(const ProblemInstance& inst);

ProblemInstance generate_instance(const InstanceGenSpec& spec);

// JSON instance files: {"id": ..., "task_sizes": [...], "vm_speeds": [...]}
ProblemInstance load_instance(const std::filesystem::path& path);
ProblemInstance parse_instance(const std::string& json_text);
std::string instance_to_json(const ProblemInstance& inst);
void save_instance(const ProblemInstance& inst, const std::filesystem::path& path);

} // namespace salp
