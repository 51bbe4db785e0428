#include "xychain/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <string>
#include <thread>

#include "xychain/errors.hpp"
#include "xychain/polar.hpp"

namespace xychain {

namespace {

struct RealizationResult {
    double chi = 0.0;
    double gap = 0.0;
    bool flagged = false;
    bool failed = false;
};

RealizationResult evaluate_one(const ChainSpec& spec, const EnsembleConfig& cfg,
                               int index) {
    RealizationResult res;
    const DisorderRealization r =
        sample_realization(spec, cfg.master_seed, static_cast<std::uint64_t>(index));
    try {
        if (cfg.record_gap || !cfg.compute_chi) {
            const Eigen::VectorXd s = singular_values(build_matrices(r).Z);
            res.gap = kGapFactor * s(s.size() - 1);
        }
        if (cfg.compute_chi) {
            ChiEstimate e =
                cfg.frobenius_step
                    ? chi_frobenius(r, cfg.direction, *cfg.frobenius_step)
                    : chi(r, cfg.direction);
            res.chi = e.chi;
            res.flagged = !e.converged || e.near_singular || !(e.chi > 0.0);
        }
    } catch (const DecompositionError&) {
        res.failed = true;
    } catch (const NumericError&) {
        res.failed = true;
    }
    return res;
}

}  // namespace

SampleSet run_ensemble(const ChainSpec& spec, const EnsembleConfig& cfg) {
    spec.validate();
    if (cfg.n_realizations < 1)
        throw ConfigError("run_ensemble: n_realizations must be >= 1");

    const int n = cfg.n_realizations;
    std::vector<RealizationResult> results(n);

    const int workers = std::max(1, cfg.n_workers);
    if (workers == 1) {
        for (int i = 0; i < n; ++i) results[i] = evaluate_one(spec, cfg, i);
    } else {
        // Workers pull indices from a shared counter; aggregation below is
        // by index, so the schedule never affects the output.
        std::atomic<int> next{0};
        auto work = [&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                results[i] = evaluate_one(spec, cfg, i);
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    int n_failed = 0;
    SampleSet out;
    out.spec = spec;
    for (const auto& res : results) {
        if (res.failed) {
            ++n_failed;
            ++out.n_flagged;
            continue;
        }
        if (cfg.record_gap || !cfg.compute_chi) out.gap_samples.push_back(res.gap);
        if (cfg.compute_chi) {
            if (res.flagged)
                ++out.n_flagged;
            else
                out.chi_samples.push_back(res.chi);
        }
    }
    if (n_failed > n / 100)
        throw NumericError("run_ensemble: " + std::to_string(n_failed) + "/" +
                           std::to_string(n) +
                           " realizations failed decomposition");
    return out;
}

EnsembleSummary summarize_samples(const std::vector<double>& samples) {
    if (samples.size() < 2)
        throw StatisticsError("summarize: need at least 2 samples");
    const double n = static_cast<double>(samples.size());
    double sum = 0.0, sum_ln = 0.0;
    for (double x : samples) {
        sum += x;
        sum_ln += std::log(x);
    }
    EnsembleSummary s;
    s.n = static_cast<int>(samples.size());
    s.ave = sum / n;
    s.typ = std::exp(sum_ln / n);
    double ss = 0.0;
    for (double x : samples) {
        const double d = x - s.ave;
        ss += d * d;
    }
    s.var = ss / n;  // population variance
    s.R = s.var / (s.ave * s.ave);
    return s;
}

EnsembleSummary summarize(const SampleSet& s) {
    return summarize_samples(s.chi_samples);
}

Histogram make_histogram(const std::vector<double>& samples, int n_bins,
                         std::optional<std::pair<double, double>> range,
                         HistogramNormalization norm) {
    if (samples.empty())
        throw StatisticsError("make_histogram: empty sample vector");
    if (n_bins < 2) throw StatisticsError("make_histogram: need >= 2 bins");

    double lo, hi;
    if (range) {
        lo = range->first;
        hi = range->second;
    } else {
        auto [mn, mx] = std::minmax_element(samples.begin(), samples.end());
        lo = *mn;
        hi = *mx;
    }
    if (!(hi > lo)) hi = lo + 1.0;  // all-identical samples: one-bin spread

    Histogram h;
    h.normalization = norm;
    h.counts.assign(n_bins, 0);
    h.bin_edges.resize(n_bins + 1);
    const double width = (hi - lo) / n_bins;
    for (int b = 0; b <= n_bins; ++b) h.bin_edges[b] = lo + b * width;
    h.bin_edges[n_bins] = hi;

    for (double x : samples) {
        int b = static_cast<int>((x - lo) / width);
        if (x >= hi) b = n_bins - 1;  // right edge closes the last bin
        if (b < 0 || b >= n_bins) continue;  // outside an explicit range
        ++h.counts[b];
    }
    return h;
}

std::vector<double> Histogram::densities() const {
    std::int64_t total = 0;
    for (auto c : counts) total += c;
    std::vector<double> d(counts.size(), 0.0);
    if (total == 0) return d;
    for (std::size_t b = 0; b < counts.size(); ++b) {
        const double width = bin_edges[b + 1] - bin_edges[b];
        d[b] = static_cast<double>(counts[b]) / (static_cast<double>(total) * width);
    }
    return d;
}

}  // namespace xychain
