#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "goldilocks/serialize.hpp"

namespace gold {

constexpr int kSchemaVersion = 1;

enum class ExperimentKind { MetricTable, Geodesic, Goldilocks, Visibility, Gromov, Dynamics };
std::string to_string(ExperimentKind k);
ExperimentKind experiment_kind_from_string(const std::string& s);

// Hard caps on configurable resolutions.
struct ResolutionCaps {
    static constexpr std::size_t path_samples = 4096;
    static constexpr std::size_t trials = 256;
    static constexpr std::size_t orbit_length = 100000;
    static constexpr std::size_t grid_levels = 256;
    static constexpr std::size_t table_samples = 100000;
};

struct ExperimentConfig {
    int schema_version = kSchemaVersion;
    ExperimentKind kind = ExperimentKind::MetricTable;
    Json domain;                              // {"kind", "params"} or {"corpus": name}
    std::map<std::string, double> tolerances;
    std::map<std::string, std::size_t> resolutions;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    unsigned threads = 1;
    Json params = Json::object();             // experiment-specific inputs
    Json raw;                                 // snapshot as given

    double tolerance(const std::string& key, double fallback) const;
    std::size_t resolution(const std::string& key, std::size_t fallback) const;
};

// Throws SchemaError with a message naming the offending field.
ExperimentConfig parse_config(const Json& j);
ExperimentConfig load_config(const std::filesystem::path& path);
// Resolves the domain reference.
DomainSpec config_domain(const ExperimentConfig& config);

struct OutputFile {
    std::string name;
    std::uintmax_t bytes = 0;
};

struct RunManifest {
    Json config;
    std::string tool_version;
    double wall_clock_seconds = 0.0;
    std::vector<std::pair<std::string, double>> timings;
    std::vector<OutputFile> outputs;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string threads_source;

    Json to_json() const;
};

struct RunOverrides {
    std::optional<std::string> output_dir;
    std::optional<std::uint64_t> seed;
    std::optional<unsigned> threads;
};

// Executes the experiment and writes report.json, CSV tables and manifest.json into the
// output directory, each via write-temp-then-rename.
RunManifest run(ExperimentConfig config, const RunOverrides& overrides = {});

// Writes `content` to `path` through a temporary file in the same directory.
void write_atomic(const std::filesystem::path& path, const std::string& content);

// Machine-readable error document for failed runs.
Json error_json(const std::exception& e);

// Human-readable corpus listing.
std::string corpus_listing();
Json corpus_json();

}  // namespace gold
