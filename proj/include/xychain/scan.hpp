#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "xychain/analysis.hpp"
#include "xychain/ensemble.hpp"

namespace xychain {

inline constexpr const char* kToolVersion = "0.1.0";

enum class ScanAxis { MeanField, MeanAnisotropy };

enum class Product {
    ChiSummary,
    GapHistogram,
    ChiHistogram,
    ScalingFit,
    SelfAveraging,
    Collapse,
    GriffithsExtent
};

// Declarative sweep description; see configs/ for examples. The axis sweeps
// the mean field or mean anisotropy, `fixed_value` pins the other one.
struct ScanConfig {
    ScanAxis scan_axis = ScanAxis::MeanField;
    std::vector<double> axis_values;
    double fixed_value = 0.0;
    std::vector<double> sigma_list;
    std::vector<int> size_list;
    EnsembleConfig ensemble;
    std::vector<Product> outputs;
    int histogram_bins = kDefaultHistogramBins;
};

struct RunManifest {
    nlohmann::json config_echo;
    std::uint64_t master_seed = 0;
    std::string version;
    struct PointCount {
        double sigma;
        double axis_value;
        int size;
        int n_samples;
        int n_flagged;
    };
    std::vector<PointCount> points;
    double wall_clock_seconds = 0.0;

    nlohmann::json to_json() const;
};

// Parses and validates a raw JSON config document, applying defaults
// (sigma_list {0.1, 0.2, 0.3, 0.4} when omitted, ensemble direction from the
// scan axis). Unknown keys and violated invariants raise ConfigError naming
// the offending field.
ScanConfig validate_config(const nlohmann::json& raw);
ScanConfig load_config(const std::filesystem::path& file);

nlohmann::json config_to_json(const ScanConfig& cfg);

// Executes the sweep and writes the requested CSV products plus
// manifest.json under out_dir. Deterministic in (config, master_seed)
// regardless of worker count. On failure a PARTIAL_OUTPUT marker file is
// left behind.
RunManifest run_scan(const ScanConfig& cfg,
                     const std::filesystem::path& out_dir);

// Derives plot-ready CSVs from scan products found in products_dir. Throws
// AnalysisError when no recognized product file is present.
std::vector<std::filesystem::path> emit_plot_data(
    const std::filesystem::path& products_dir,
    const std::filesystem::path& out_dir);

// (sigma, axis_value, L) -> chi samples, as written by the Collapse product.
using ChiSamplesTable =
    std::map<std::tuple<double, double, int>, std::vector<double>>;
ChiSamplesTable read_chi_samples(const std::filesystem::path& file);

// Fits the requested collapse forms to the ln chi samples of one parameter
// point and writes rescaled ECDF files plus a summary CSV.
std::vector<std::filesystem::path> run_collapse(
    const std::filesystem::path& samples_file, double sigma, double axis_value,
    const std::vector<CollapseKind>& kinds,
    const std::filesystem::path& out_dir);

struct OracleCheckResult {
    int n_total = 0;
    int n_compared = 0;
    int n_degenerate = 0;
    double max_abs_diff = 0.0;
};

// Cross-checks the determinant fidelity against the Fock-space overlap on
// random small-L realizations; writes oracle_check.csv when out_dir is
// non-empty.
OracleCheckResult run_oracle_check(int n_per_combo, std::uint64_t master_seed,
                                   const std::filesystem::path& out_dir = {});

// "%.17g" rendering used by every CSV writer; round-trips doubles exactly.
std::string format_double(double x);

}  // namespace xychain
