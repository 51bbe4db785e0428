#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "xychain/chain.hpp"
#include "xychain/fidelity.hpp"

namespace xychain {

struct EnsembleConfig {
    int n_realizations = 1;
    std::uint64_t master_seed = 0;
    Direction direction = Direction::Field;
    bool record_gap = false;
    bool compute_chi = true;  // gap-only runs skip the chi estimator
    std::optional<double> frobenius_step;  // overrides the default chi step
    int n_workers = 1;
};

// Per-point samples. chi_samples holds converged, unflagged estimates only;
// when chi is computed, n_flagged + chi_samples.size() == n_realizations.
// Gaps are recorded for every realization.
struct SampleSet {
    std::vector<double> chi_samples;
    std::vector<double> gap_samples;
    int n_flagged = 0;
    ChainSpec spec;
};

struct EnsembleSummary {
    double ave = 0.0;  // arithmetic mean
    double typ = 0.0;  // geometric mean, exp(mean(ln chi))
    double var = 0.0;  // population variance
    double R = 0.0;    // var / ave^2
    int n = 0;
};

enum class HistogramNormalization { Counts, Density };

struct Histogram {
    std::vector<double> bin_edges;       // size counts.size() + 1, sorted
    std::vector<std::int64_t> counts;
    HistogramNormalization normalization = HistogramNormalization::Counts;

    std::vector<double> densities() const;  // counts / (total * width)
};

inline constexpr int kDefaultHistogramBins = 100;

// Deterministic disorder ensemble: sample i uses realization index i of the
// master seed, so any worker count or schedule yields bit-identical output.
// Throws NumericError if more than 1% of realizations fail to decompose.
SampleSet run_ensemble(const ChainSpec& spec, const EnsembleConfig& cfg);

EnsembleSummary summarize_samples(const std::vector<double>& samples);
EnsembleSummary summarize(const SampleSet& s);

Histogram make_histogram(const std::vector<double>& samples, int n_bins,
                         std::optional<std::pair<double, double>> range = {},
                         HistogramNormalization norm =
                             HistogramNormalization::Counts);

}  // namespace xychain
