#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "youngmat/cli.hpp"
#include "youngmat/error.hpp"

namespace {

using youngmat::cli::RunConfig;

// --config is applied first so explicit flags override the file
RunConfig base_config(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        std::string_view arg = argv[i];
        std::string path;
        if (arg == "--config" && i + 1 < argc) {
            path = argv[i + 1];
        } else if (arg.starts_with("--config=")) {
            path = std::string(arg.substr(9));
        } else {
            continue;
        }
        std::ifstream in(path);
        if (!in) throw youngmat::Error(youngmat::ErrorCode::ConfigError, "cannot read config file '" + path + "'");
        youngmat::cli::Json j;
        try {
            in >> j;
        } catch (const std::exception& e) {
            throw youngmat::Error(youngmat::ErrorCode::ConfigError, std::string("config file is not JSON: ") + e.what());
        }
        return youngmat::cli::config_from_json(j);
    }
    return {};
}

std::pair<double, double> parse_range(const std::string& text) {
    std::stringstream in(text);
    double lo = 0.0;
    double hi = 0.0;
    char comma = 0;
    if (!(in >> lo >> comma >> hi) || comma != ',' || !in.eof()) {
        throw youngmat::Error(youngmat::ErrorCode::ConfigError, "--range expects lo,hi");
    }
    return {lo, hi};
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig config;
    try {
        config = base_config(argc, argv);
    } catch (const youngmat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return youngmat::cli::kValidationError;
    }

    CLI::App app{"Shaped random matrices and the limit laws of their spectra"};
    app.require_subcommand(1);
    std::string config_path;
    int r = 0;
    std::uint64_t seed = 0;
    double trunc = 0.0;
    std::string range;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "JSON config (same schema as the config echo)");
        sub->add_option("--out", config.out, "Output file; stdout when omitted");
        sub->add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--threads", config.threads, "Worker threads (0 = all cores); results do not depend on it");
    };

    CLI::App* shape = app.add_subcommand("shape", "Young diagram statistics");
    shape->add_option("--parts", config.parts, "Parts a,b,c,...")->delimiter(',');
    shape->add_option("--dilation", config.dilation, "Dilation factor N");
    common(shape);

    CLI::App* moments = app.add_subcommand("moments", "Exact generalized Catalan numbers and limit moments");
    moments->add_option("--r", r, "Order r");
    moments->add_option("--kmax", config.k_max, "Largest moment order");
    moments->add_flag("--oracle-trees", config.oracle_trees, "Add brute-force r-plane tree counts");
    moments->add_option("--tree-max-k", config.tree_max_k, "Largest k for tree counts");
    common(moments);

    CLI::App* trees = app.add_subcommand("trees", "Count r-plane trees by enumeration");
    trees->add_option("--r", r, "Order r");
    trees->add_option("--vertices", config.vertices, "Number of vertices");
    common(trees);

    CLI::App* simulate = app.add_subcommand("simulate", "Block-shaped ensemble simulation");
    simulate->add_option("--r", r, "Order r");
    simulate->add_option("--dilation", config.dilation, "Block size N");
    simulate->add_option("--entries", config.entries, "complex-gaussian|real-gaussian|rademacher|centered-uniform");
    simulate->add_option("--trunc", trunc, "Truncation level C");
    simulate->add_option("--replicas", config.replicas, "Number of replicas");
    simulate->add_option("--seed", seed, "Master seed (required)");
    simulate->add_option("--kmax", config.k_max, "Largest moment order");
    simulate->add_option("--bins", config.bins, "Histogram bins");
    simulate->add_option("--range", range, "Histogram range lo,hi");
    simulate->add_option("--grid", config.grid, "Limit CDF grid size");
    simulate->add_option("--tol", config.tol, "Limit CDF quadrature tolerance");
    common(simulate);

    CLI::App* law = app.add_subcommand("law", "Limit law density grid and cross-checks");
    law->add_option("--r", r, "Order r");
    law->add_option("--grid", config.grid, "Grid size");
    law->add_option("--tol", config.tol, "Quadrature tolerance");
    law->add_option("--kmax", config.k_max, "Largest moment order for cross-checks");
    common(law);

    CLI::App* sample_law = app.add_subcommand("sample-law", "Beta-product Monte Carlo of the limit law");
    sample_law->add_option("--r", r, "Order r");
    sample_law->add_option("--samples", config.samples, "Number of draws");
    sample_law->add_option("--seed", seed, "Master seed (required)");
    sample_law->add_option("--bins", config.bins, "Histogram bins");
    sample_law->add_option("--range", range, "Histogram range lo,hi");
    sample_law->add_option("--kmax", config.k_max, "Largest moment order");
    sample_law->add_option("--grid", config.grid, "Reference grid size");
    sample_law->add_option("--tol", config.tol, "Reference quadrature tolerance");
    common(sample_law);

    CLI::App* triangular = app.add_subcommand("triangular", "Triangular (staircase) ensemble");
    triangular->add_option("--size", config.size, "Staircase size N");
    triangular->add_option("--replicas", config.replicas, "Number of replicas");
    triangular->add_option("--seed", seed, "Master seed (required)");
    triangular->add_option("--entries", config.entries, "Entry distribution");
    triangular->add_option("--trunc", trunc, "Truncation level C");
    triangular->add_option("--kmax", config.k_max, "Largest moment order");
    triangular->add_option("--bins", config.bins, "Histogram bins");
    triangular->add_option("--range", range, "Histogram range lo,hi");
    common(triangular);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? youngmat::cli::kOk : youngmat::cli::kValidationError;
    }

    CLI::App* chosen = app.get_subcommands().front();
    config.subcommand = chosen->get_name();
    auto given = [&](const char* name) {
        try {
            return chosen->count(name) > 0;
        } catch (const CLI::OptionNotFound&) {
            return false;
        }
    };
    try {
        if (given("--r")) config.r = r;
        if (given("--seed")) config.seed = seed;
        if (given("--trunc")) config.truncation = trunc;
        if (given("--range")) config.range = parse_range(range);
    } catch (const youngmat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return youngmat::cli::kValidationError;
    }
    return youngmat::cli::run(config, std::cout, std::cerr);
}
