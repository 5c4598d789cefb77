#include "youngmat/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "youngmat/combinatorics.hpp"
#include "youngmat/error.hpp"
#include "youngmat/limitlaw.hpp"
#include "youngmat/matrix_lab.hpp"
#include "youngmat/partitions.hpp"
#include "youngmat/random.hpp"
#include "youngmat/spectra.hpp"

namespace youngmat::cli {

namespace {

const std::set<std::string> kSubcommands{"shape", "moments", "trees", "simulate", "law", "sample-law", "triangular"};
const std::set<std::string> kStochastic{"simulate", "sample-law", "triangular"};
const std::set<std::string> kCsvCapable{"simulate", "law", "sample-law", "triangular"};

constexpr std::int64_t kSampleChunk = 1 << 16;

[[noreturn]] void config_error(const std::string& what) { throw Error(ErrorCode::ConfigError, what); }

void require(bool ok, const std::string& what) {
    if (!ok) config_error(what);
}

Json exact_json(const BigRat& value) { return Json{{"exact", to_string(value)}, {"value", to_double(value)}}; }

Json to_json(const Histogram& h) {
    return Json{{"lo", h.edges.front()},   {"hi", h.edges.back()},       {"edges", h.edges},
                {"counts", h.counts},      {"density", h.density},       {"underflow", h.underflow},
                {"overflow", h.overflow},  {"total", h.total}};
}

std::pair<double, double> histogram_range(const RunConfig& c, double natural_hi) {
    if (c.range) return *c.range;
    return {0.0, 1.05 * natural_hi};
}

EntryDistribution entry_distribution(const RunConfig& c) {
    EntryDistribution dist = EntryDistribution::of(parse_entry_kind(c.entries));
    if (c.truncation) dist = truncate_standardize(dist, *c.truncation);
    return dist;
}

std::vector<double> pooled(const std::vector<Spectrum>& spectra) {
    std::vector<double> all;
    for (const Spectrum& s : spectra) all.insert(all.end(), s.values.data(), s.values.data() + s.values.size());
    return all;
}

// sup |F - G| over [lo, hi], probing both knot sets inside the window and the window ends
template <CdfLike F, CdfLike G>
double window_discrepancy(const F& f, const G& g, double lo, double hi) {
    double sup = 0.0;
    auto visit = [&](double x) {
        if (x < lo || x > hi) return;
        sup = std::max(sup, std::abs(f.cdf(x) - g.cdf(x)));
        if (x > lo) sup = std::max(sup, std::abs(f.cdf_left(x) - g.cdf_left(x)));
    };
    visit(lo);
    visit(hi);
    for (double x : f.knots()) visit(x);
    for (double x : g.knots()) visit(x);
    return sup;
}

Json provenance(const RunConfig& c, std::int64_t substreams, double seconds) {
    Json p;
    p["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
    p["substreams"] = Json{{"first", 0}, {"count", substreams}};
    p["wall_clock_seconds"] = seconds;
    return p;
}

Json moment_table(const std::vector<MomentStats>& stats, std::int64_t replicas,
                  const std::function<BigRat(int)>& limit) {
    Json rows = Json::array();
    for (const MomentStats& m : stats) {
        const BigRat exact = limit(m.k);
        const double target = to_double(exact);
        rows.push_back(Json{{"k", m.k},
                            {"mean", m.mean},
                            {"variance", m.variance},
                            {"standard_error", std::sqrt(m.variance / static_cast<double>(replicas))},
                            {"limit", to_string(exact)},
                            {"limit_value", target},
                            {"relative_error", std::abs(m.mean - target) / target}});
    }
    return rows;
}

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// --------------------------------------------------------------------------

ResultRecord run_shape(const RunConfig& c) {
    const Partition lambda{std::span<const Partition::Part>(c.parts)};
    const Partition shape = dilate(lambda, c.dilation);
    ResultRecord rec;
    Json& res = rec.results;
    res["parts"] = lambda.parts();
    res["dilation"] = c.dilation;
    res["dilated_parts"] = shape.parts();
    res["length"] = shape.length();
    res["weight"] = shape.weight();
    res["conjugate"] = conjugate(shape).parts();
    res["balance_ratio"] = exact_json(balance_ratio(lambda, c.dilation));
    const bool drawable = shape.length() <= 200 && shape[1] <= 200;
    res["diagram"] = drawable ? Json(render_diagram(shape)) : Json(nullptr);

    std::ostringstream text;
    if (drawable) text << render_diagram(shape);
    text << "shape     " << to_string(shape) << "\n"
         << "length    " << shape.length() << "\n"
         << "weight    " << shape.weight() << "\n"
         << "conjugate " << to_string(conjugate(shape)) << "\n"
         << "balance   " << to_string(balance_ratio(lambda, c.dilation)) << "\n";
    rec.summary = text.str();
    return rec;
}

ResultRecord run_moments(const RunConfig& c) {
    const int r = *c.r;
    ResultRecord rec;
    Json rows = Json::array();
    std::ostringstream text;
    text << "k  C<" << r << ">_k  m_k\n";
    for (int k = 0; k <= c.k_max; ++k) {
        const BigNat count = gen_catalan(r, k);
        const BigRat m = limit_moment(r, k);
        Json row{{"k", k}, {"gen_catalan", count.str()}, {"moment", exact_json(m)}};
        text << k << "  " << count << "  " << to_string(m);
        if (c.oracle_trees && k <= c.tree_max_k) {
            const BigNat trees = count_r_plane_trees(r, k + 1);
            row["tree_count"] = trees.str();
            row["tree_match"] = trees == count;
            text << "  trees=" << trees;
        }
        text << "\n";
        rows.push_back(std::move(row));
    }
    rec.results["r"] = r;
    rec.results["moments"] = std::move(rows);
    rec.summary = text.str();
    return rec;
}

ResultRecord run_trees(const RunConfig& c) {
    const int r = *c.r;
    const BigNat trees = count_r_plane_trees(r, c.vertices);
    const BigNat formula = gen_catalan(r, c.vertices - 1);
    ResultRecord rec;
    rec.results = Json{{"r", r},
                       {"vertices", c.vertices},
                       {"tree_count", trees.str()},
                       {"gen_catalan", formula.str()},
                       {"match", trees == formula}};
    rec.summary = "r-plane trees on " + std::to_string(c.vertices) + " vertices: " + trees.str() +
                  " (gen_catalan " + formula.str() + ")\n";
    return rec;
}

ResultRecord run_simulate(const RunConfig& c) {
    const int r = *c.r;
    const EntryDistribution dist = entry_distribution(c);
    EnsembleConfig ens{dilate(staircase(r), c.dilation), c.dilation, dist, c.k_max, c.replicas, *c.seed, c.threads};
    const std::vector<Spectrum> spectra = run_ensemble(ens);
    const std::vector<MomentStats> stats = moment_stats(spectra, c.k_max);

    const double edge = support_edge(r).value;
    const auto [lo, hi] = histogram_range(c, edge);
    const std::vector<double> values = pooled(spectra);
    const Histogram hist = histogram(values, static_cast<std::size_t>(c.bins), lo, hi);
    const EmpiricalDistribution empirical(values);
    const LinearCdf limit = cdf_grid(r, c.grid, c.tol, c.threads);
    const double levy = levy_distance(limit, empirical);
    const double ks = ks_distance(limit, empirical);

    ResultRecord rec;
    Json& res = rec.results;
    res["r"] = r;
    res["dimension"] = r * c.dilation;
    res["moments"] = moment_table(stats, c.replicas, [r](int k) { return limit_moment(r, k); });
    res["histogram"] = to_json(hist);
    res["distances"] = Json{{"levy", levy}, {"ks", ks}};

    std::ostringstream text;
    text << "k  mean  stderr  limit\n";
    for (const MomentStats& m : stats) {
        text << m.k << "  " << m.mean << "  " << std::sqrt(m.variance / c.replicas) << "  "
             << to_double(limit_moment(r, m.k)) << "\n";
    }
    text << "levy " << levy << "  ks " << ks << "\n";
    rec.summary = text.str();
    rec.provenance = provenance(c, c.replicas, 0.0);
    return rec;
}

Json edge_fit_json(const DensityGrid& grid, Edge edge) {
    try {
        const EdgeFit fit = edge_exponent_fit(grid, edge);
        return Json{{"slope", fit.slope}, {"intercept", fit.intercept}, {"points", fit.points}};
    } catch (const Error& e) {
        if (e.code() != ErrorCode::InsufficientPoints) throw;
        return Json(nullptr);
    }
}

// the trapezoid rule loses all digits to cancellation once 2^((r+1)k) dwarfs m_k
std::optional<ContourMoment> contour_or_null(int r, int k) {
    try {
        return contour_moment(r, k);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::NoConvergence) throw;
        return std::nullopt;
    }
}

ResultRecord run_law(const RunConfig& c) {
    const int r = *c.r;
    const SupportEdge edge = support_edge(r);
    const DensityGrid grid = density_grid(r, c.grid, c.tol, c.threads);
    const LinearCdf cdf = cdf_from_grid(grid);

    ResultRecord rec;
    Json& res = rec.results;
    res["r"] = r;
    res["edge"] = exact_json(edge.exact);
    res["total_mass"] = grid.total_mass();
    res["mass_error"] = grid.mass_error();
    res["density_grid"] = Json{{"x", std::vector<double>(grid.x.begin(), grid.x.end())},
                               {"density", std::vector<double>(grid.density.begin(), grid.density.end())},
                               {"abs_err", std::vector<double>(grid.abs_error.begin(), grid.abs_error.end())}};
    res["cdf"] = Json{{"x", cdf.x()}, {"F", cdf.f()}};
    const double expected_lower = -static_cast<double>(r) / (r + 1);
    res["edge_fits"] = Json{{"lower", edge_fit_json(grid, Edge::Lower)},
                            {"lower_expected", expected_lower},
                            {"upper", edge_fit_json(grid, Edge::Upper)},
                            {"upper_expected", 0.5}};

    Json rows = Json::array();
    std::ostringstream text;
    text << "L(" << r << ") = " << to_string(edge.exact) << " = " << edge.value << "\n"
         << "mass " << grid.total_mass() << "\n"
         << "k  exact  grid  contour\n";
    for (int k = 0; k <= c.k_max; ++k) {
        const BigRat exact = limit_moment(r, k);
        const double target = to_double(exact);
        const double on_grid = grid.moment(k);
        const std::optional<ContourMoment> contour = contour_or_null(r, k);
        rows.push_back(Json{{"k", k},
                            {"exact", to_string(exact)},
                            {"exact_value", target},
                            {"beta_product", to_string(beta_product_moment(r, k))},
                            {"beta_product_match", beta_product_moment(r, k) == exact},
                            {"grid", on_grid},
                            {"grid_relative_error", std::abs(on_grid - target) / target},
                            {"contour", contour ? Json(contour->value) : Json(nullptr)},
                            {"contour_imag", contour ? Json(contour->imag) : Json(nullptr)}});
        text << k << "  " << to_string(exact) << "  " << on_grid << "  ";
        if (contour) {
            text << contour->value << "\n";
        } else {
            text << "n/a\n";
        }
    }
    res["moments"] = std::move(rows);
    rec.summary = text.str();
    rec.provenance = provenance(c, 0, 0.0);
    return rec;
}

ResultRecord run_sample_law(const RunConfig& c) {
    const int r = *c.r;
    const BetaProductSampler sampler(r);
    const std::int64_t chunks = (c.samples + kSampleChunk - 1) / kSampleChunk;
    std::vector<std::vector<double>> parts(static_cast<std::size_t>(chunks));
    auto fill = [&](std::int64_t chunk) {
        RandomStream stream = substream(*c.seed, static_cast<std::uint64_t>(chunk));
        const std::int64_t begin = chunk * kSampleChunk;
        const std::int64_t end = std::min(c.samples, begin + kSampleChunk);
        auto& out = parts[static_cast<std::size_t>(chunk)];
        out.reserve(static_cast<std::size_t>(end - begin));
        for (std::int64_t i = begin; i < end; ++i) out.push_back(sampler(stream));
    };
    const unsigned workers = std::min<std::int64_t>(
        chunks, c.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : c.threads);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < chunks; ++i) fill(i);
    } else {
        std::atomic<std::int64_t> next{0};
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (std::int64_t i = next++; i < chunks; i = next++) fill(i);
            });
        }
        for (auto& worker : pool) worker.join();
    }
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(c.samples));
    for (const auto& p : parts) samples.insert(samples.end(), p.begin(), p.end());

    const double edge = support_edge(r).value;
    const auto [lo, hi] = histogram_range(c, edge);
    const Histogram hist = histogram(samples, static_cast<std::size_t>(c.bins), lo, hi);
    const LinearCdf limit = cdf_grid(r, c.grid, c.tol, c.threads);
    std::vector<double> reference;
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        reference.push_back((limit.cdf(hist.edges[i + 1]) - limit.cdf(hist.edges[i])) / hist.width(i));
    }
    const EmpiricalDistribution empirical(samples);
    const double ks = ks_distance(limit, empirical);

    Json moments = Json::array();
    const auto n = static_cast<double>(samples.size());
    for (int k = 0; k <= c.k_max; ++k) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (double y : samples) {
            const double p = std::pow(y, k);
            sum += p;
            sum_sq += p * p;
        }
        const double mean = sum / n;
        const double var = n > 1 ? (sum_sq - n * mean * mean) / (n - 1) : 0.0;
        const BigRat exact = limit_moment(r, k);
        moments.push_back(Json{{"k", k},
                               {"mean", mean},
                               {"standard_error", std::sqrt(std::max(var, 0.0) / n)},
                               {"limit", to_string(exact)},
                               {"limit_value", to_double(exact)}});
    }

    ResultRecord rec;
    rec.results = Json{{"r", r},
                       {"samples", c.samples},
                       {"histogram", to_json(hist)},
                       {"reference_density", reference},
                       {"ks", ks},
                       {"moments", moments}};
    rec.summary = "samples " + std::to_string(c.samples) + "  ks " + format_double(ks) + "\n";
    rec.provenance = provenance(c, chunks, 0.0);
    return rec;
}

ResultRecord run_triangular(const RunConfig& c) {
    const EntryDistribution dist = entry_distribution(c);
    EnsembleConfig ens{staircase(c.size), c.size, dist, c.k_max, c.replicas, *c.seed, c.threads};
    const std::vector<Spectrum> spectra = run_ensemble(ens);
    const std::vector<MomentStats> stats = moment_stats(spectra, c.k_max);

    const auto [lo, hi] = histogram_range(c, std::numbers::e);
    const std::vector<double> values = pooled(spectra);
    const Histogram hist = histogram(values, static_cast<std::size_t>(c.bins), lo, hi);
    std::vector<double> centres;
    std::vector<double> dh_values;
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        centres.push_back(0.5 * (hist.edges[i] + hist.edges[i + 1]));
        dh_values.push_back(dh_density(centres.back()));
    }
    const EmpiricalDistribution empirical(values);
    const LinearCdf dh = dh_cdf();
    constexpr double kWindowLo = 0.2;
    constexpr double kWindowHi = 2.5;
    const double window_ks = window_discrepancy(empirical, dh, kWindowLo, kWindowHi);

    ResultRecord rec;
    Json& res = rec.results;
    res["size"] = c.size;
    res["moments"] = moment_table(stats, c.replicas, [](int k) { return dh_moment(k); });
    res["histogram"] = to_json(hist);
    res["dh_density"] = Json{{"x", centres}, {"density", dh_values}};
    res["distances"] = Json{{"window", {kWindowLo, kWindowHi}}, {"ks_window", window_ks}, {"ks", ks_distance(empirical, dh)}};

    std::ostringstream text;
    text << "k  mean  dh\n";
    for (const MomentStats& m : stats) text << m.k << "  " << m.mean << "  " << to_double(dh_moment(m.k)) << "\n";
    text << "sup discrepancy on [0.2, 2.5] " << window_ks << "\n";
    rec.summary = text.str();
    rec.provenance = provenance(c, c.replicas, 0.0);
    return rec;
}

template <typename T>
void read_field(const Json& j, const char* key, T& field) {
    if (j.contains(key) && !j.at(key).is_null()) field = j.at(key).get<T>();
}

template <typename T>
void read_field(const Json& j, const char* key, std::optional<T>& field) {
    if (!j.contains(key)) return;
    if (j.at(key).is_null()) {
        field.reset();
    } else {
        field = j.at(key).get<T>();
    }
}

}  // namespace

Json to_json(const RunConfig& c) {
    Json j;
    j["subcommand"] = c.subcommand;
    j["r"] = c.r ? Json(*c.r) : Json(nullptr);
    j["parts"] = c.parts;
    j["dilation"] = c.dilation;
    j["entries"] = c.entries;
    j["truncation"] = c.truncation ? Json(*c.truncation) : Json(nullptr);
    j["replicas"] = c.replicas;
    j["kmax"] = c.k_max;
    j["bins"] = c.bins;
    j["range"] = c.range ? Json{c.range->first, c.range->second} : Json(nullptr);
    j["grid"] = c.grid;
    j["tol"] = c.tol;
    j["seed"] = c.seed ? Json(*c.seed) : Json(nullptr);
    j["out"] = c.out;
    j["format"] = c.format;
    j["oracle_trees"] = c.oracle_trees;
    j["tree_max_k"] = c.tree_max_k;
    j["vertices"] = c.vertices;
    j["samples"] = c.samples;
    j["size"] = c.size;
    j["threads"] = c.threads;
    return j;
}

RunConfig config_from_json(const Json& j) {
    if (!j.is_object()) config_error("config must be a JSON object");
    RunConfig c;
    try {
        read_field(j, "subcommand", c.subcommand);
        read_field(j, "r", c.r);
        read_field(j, "parts", c.parts);
        read_field(j, "dilation", c.dilation);
        read_field(j, "entries", c.entries);
        read_field(j, "truncation", c.truncation);
        read_field(j, "replicas", c.replicas);
        read_field(j, "kmax", c.k_max);
        read_field(j, "bins", c.bins);
        if (j.contains("range") && !j.at("range").is_null()) {
            const auto range = j.at("range").get<std::vector<double>>();
            if (range.size() != 2) config_error("range must have two entries");
            c.range = std::pair{range[0], range[1]};
        }
        read_field(j, "grid", c.grid);
        read_field(j, "tol", c.tol);
        read_field(j, "seed", c.seed);
        read_field(j, "out", c.out);
        read_field(j, "format", c.format);
        read_field(j, "oracle_trees", c.oracle_trees);
        read_field(j, "tree_max_k", c.tree_max_k);
        read_field(j, "vertices", c.vertices);
        read_field(j, "samples", c.samples);
        read_field(j, "size", c.size);
        read_field(j, "threads", c.threads);
    } catch (const nlohmann::json::exception& e) {
        config_error(std::string("malformed config: ") + e.what());
    }
    return c;
}

void validate(const RunConfig& c) {
    require(kSubcommands.contains(c.subcommand), "unknown subcommand '" + c.subcommand + "'");
    require(c.format == "json" || c.format == "csv", "format must be json or csv");
    require(c.format == "json" || kCsvCapable.contains(c.subcommand),
            "csv output is only available for simulate, law, sample-law and triangular");
    if (kStochastic.contains(c.subcommand)) require(c.seed.has_value(), "--seed is required for " + c.subcommand);

    const std::string& s = c.subcommand;
    if (s != "shape" && s != "triangular") {
        require(c.r.has_value(), "--r is required for " + s);
        require(*c.r >= 1 && *c.r <= 64, "--r must lie in [1, 64]");
    }
    if (s == "law" || s == "simulate" || s == "sample-law") require(*c.r <= 12, "--r must lie in [1, 12]");
    require(c.k_max >= 0 && c.k_max <= 1000, "--kmax must lie in [0, 1000]");
    if (s == "simulate" || s == "triangular" || s == "law" || s == "sample-law") {
        require(c.k_max <= 30, "--kmax must lie in [0, 30] for numerical subcommands");
    }
    require(c.bins >= 1 && c.bins <= 1'000'000, "--bins must lie in [1, 1e6]");
    if (c.range) require(c.range->first < c.range->second, "--range needs lo < hi");
    require(c.grid >= 16 && c.grid <= 1'000'000, "--grid must lie in [16, 1e6]");
    require(c.tol > 0.0 && c.tol <= 1e-2, "--tol must lie in (0, 1e-2]");

    if (s == "shape") {
        require(!c.parts.empty(), "--parts is required for shape");
        require(c.dilation >= 1 && c.dilation <= 1'000'000, "--dilation must lie in [1, 1e6]");
        try {
            (void)dilate(Partition{std::span<const Partition::Part>(c.parts)}, c.dilation);
        } catch (const Error& e) {
            config_error(std::string("invalid partition: ") + e.what());
        }
    }
    if (s == "moments") {
        require(c.tree_max_k >= 0 && c.tree_max_k <= 11, "--tree-max-k must lie in [0, 11]");
    }
    if (s == "trees") require(c.vertices >= 1 && c.vertices <= 12, "--vertices must lie in [1, 12]");
    if (s == "simulate" || s == "triangular") {
        try {
            (void)parse_entry_kind(c.entries);
        } catch (const Error& e) {
            config_error(e.what());
        }
        if (c.truncation) require(*c.truncation > 0.0, "--trunc must be positive");
        require(c.replicas >= 2 && c.replicas <= 1'000'000, "--replicas must lie in [2, 1e6]");
    }
    if (s == "simulate") require(c.dilation >= 1 && *c.r * c.dilation <= 4000, "matrix dimension r*N must lie in [1, 4000]");
    if (s == "triangular") require(c.size >= 1 && c.size <= 4000, "--size must lie in [1, 4000]");
    if (s == "sample-law") require(c.samples >= 1 && c.samples <= 50'000'000, "--samples must lie in [1, 5e7]");
}

Json to_json(const ResultRecord& record) {
    return Json{{"config", record.config},
                {"results", record.results},
                {"provenance", record.provenance},
                {"version", record.version}};
}

ResultRecord record_from_json(const Json& j) {
    ResultRecord rec;
    try {
        rec.config = j.at("config");
        rec.results = j.at("results");
        rec.provenance = j.at("provenance");
        rec.version = j.at("version").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        config_error(std::string("malformed result record: ") + e.what());
    }
    return rec;
}

ResultRecord execute(const RunConfig& config) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    ResultRecord rec;
    const std::string& s = config.subcommand;
    if (s == "shape") {
        rec = run_shape(config);
    } else if (s == "moments") {
        rec = run_moments(config);
    } else if (s == "trees") {
        rec = run_trees(config);
    } else if (s == "simulate") {
        rec = run_simulate(config);
    } else if (s == "law") {
        rec = run_law(config);
    } else if (s == "sample-law") {
        rec = run_sample_law(config);
    } else {
        rec = run_triangular(config);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (rec.provenance.is_null()) rec.provenance = provenance(config, 0, seconds);
    rec.provenance["wall_clock_seconds"] = seconds;
    rec.config = to_json(config);
    return rec;
}

std::string to_csv(const ResultRecord& record) {
    std::ostringstream out;
    const Json& res = record.results;
    if (res.contains("histogram")) {
        const Json& h = res.at("histogram");
        const auto edges = h.at("edges").get<std::vector<double>>();
        const auto counts = h.at("counts").get<std::vector<std::uint64_t>>();
        const auto density = h.at("density").get<std::vector<double>>();
        out << "bin_left,bin_right,count,density\n";
        for (std::size_t i = 0; i < counts.size(); ++i) {
            out << format_double(edges[i]) << ',' << format_double(edges[i + 1]) << ',' << counts[i] << ','
                << format_double(density[i]) << '\n';
        }
        return out.str();
    }
    if (res.contains("density_grid")) {
        const Json& g = res.at("density_grid");
        const auto x = g.at("x").get<std::vector<double>>();
        const auto f = g.at("density").get<std::vector<double>>();
        const auto e = g.at("abs_err").get<std::vector<double>>();
        out << "x,density,abs_err\n";
        for (std::size_t i = 0; i < x.size(); ++i) {
            out << format_double(x[i]) << ',' << format_double(f[i]) << ',' << format_double(e[i]) << '\n';
        }
        return out.str();
    }
    config_error("result has no histogram or density grid to write as csv");
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const ResultRecord rec = execute(config);
        const std::string document = config.format == "csv" ? to_csv(rec) : to_json(rec).dump(2) + "\n";
        if (config.out.empty()) {
            out << document;
        } else {
            std::ofstream file(config.out);
            if (!file) config_error("cannot open output file '" + config.out + "'");
            file << document;
            if (!file) config_error("failed writing output file '" + config.out + "'");
            out << rec.summary;
        }
        return kOk;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return e.code() == ErrorCode::ConfigError ? kValidationError : kNumericalError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kNumericalError;
    }
}

}  // namespace youngmat::cli
