#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace youngmat::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "youngmat 0.1.0";

enum ExitCode : int { kOk = 0, kValidationError = 2, kNumericalError = 3 };

/// Everything a subcommand reads. Fields a subcommand does not use are ignored.
struct RunConfig {
    std::string subcommand;
    std::optional<int> r;
    std::vector<std::int64_t> parts;
    std::int64_t dilation = 1;
    std::string entries = "complex-gaussian";
    std::optional<double> truncation;
    std::int64_t replicas = 20;
    int k_max = 4;
    std::int64_t bins = 60;
    std::optional<std::pair<double, double>> range;
    std::int64_t grid = 511;
    double tol = 1e-8;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "json";
    bool oracle_trees = false;
    int tree_max_k = 6;
    std::int64_t vertices = 0;
    std::int64_t samples = 100000;
    std::int64_t size = 0;
    unsigned threads = 1;
};

/// Config echo; `config_from_json` accepts the same object (missing keys keep defaults).
Json to_json(const RunConfig& config);
RunConfig config_from_json(const Json& j);

/// Throws ConfigError for any parameter outside its documented range.
void validate(const RunConfig& config);

struct ResultRecord {
    Json config;
    Json results;
    Json provenance;
    std::string version = kVersion;
    /// Short human-readable summary; not part of the JSON document.
    std::string summary;
};

Json to_json(const ResultRecord& record);
ResultRecord record_from_json(const Json& j);

/// Validates and executes the subcommand without writing anything.
ResultRecord execute(const RunConfig& config);

/// CSV rendering of the record's histogram or density grid (ConfigError when it has neither).
std::string to_csv(const ResultRecord& record);

/// Executes, writes the document to config.out (or `out` when empty), and maps errors
/// to exit codes: 0 success, 2 validation error, 3 numerical failure.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace youngmat::cli
