#pragma once

#include <map>
#include <utility>
#include <vector>

#include "xychain/ensemble.hpp"

namespace xychain {

struct PowerLawFit {
    double exponent = 0.0;
    double intercept = 0.0;        // ln of the prefactor
    double exponent_stderr = 0.0;
    double r_squared = 0.0;
};

// OLS of ln(values) on ln(sizes). Needs >= 3 points, all values > 0.
PowerLawFit power_law_fit(const std::vector<double>& sizes,
                          const std::vector<double>& values);

enum class Use { Average, Typical };

// chi ~ L^Delta fit of per-size ensemble summaries. Typical regresses
// mean(ln chi) on ln L, identical to fitting the geometric mean.
PowerLawFit scaling_dimension(
    const std::vector<std::pair<double, EnsembleSummary>>& per_size, Use use);

enum class SelfAveragingKind {
    SelfAveraging,
    WeaklySelfAveraging,
    NonSelfAveraging
};

struct SelfAveragingClass {
    double b = 0.0;
    double b_stderr = 0.0;
    SelfAveragingKind kind = SelfAveragingKind::SelfAveraging;
};

// R ~ L^b fit with finite-ensemble thresholds: b = -1 within
// max(0.1, 2 stderr) is self-averaging, b >= -max(0.05, 2 stderr) is
// non-self-averaging, anything between is weakly self-averaging.
SelfAveragingClass self_averaging_classify(
    const std::map<double, double>& R_per_size);

struct ParameterInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
};

// Maximal contiguous run of scan points whose gap histogram attains its
// maximum in the first (zero-gap) bin. Histograms must share binning.
ParameterInterval griffiths_extent(
    const std::vector<std::pair<double, Histogram>>& scan);

enum class Transition { Ising, Anisotropy };

// McKenzie distance from criticality. Throws on sigma = 0.
double mckenzie_delta(double lambda, double gamma, double sigma, Transition t);

// z from Delta_chi = 2 z + 2 - 2 Delta_O.
inline double dynamical_exponent(double delta_chi, double delta_O) {
    return (delta_chi - 2.0 + 2.0 * delta_O) / 2.0;
}

enum class CollapseKind { PowerLaw, StretchedExp, Mixed, Extensive };

struct CollapseForm {
    CollapseKind form = CollapseKind::PowerLaw;
    double alpha = 0.0;
    double beta = 0.0;
};

// Elementwise rescaling of ln chi samples:
//   PowerLaw     ln chi - alpha ln L
//   StretchedExp L^-beta ln chi
//   Mixed        L^beta (ln chi - alpha ln L)
//   Extensive    ln chi - ln L
std::vector<double> rescale_distribution(const std::vector<double>& ln_chi,
                                         int L, const CollapseForm& form);

// Two-sample Kolmogorov-Smirnov distance between empirical CDFs.
double ks_distance(std::vector<double> a, std::vector<double> b);

// Mean pairwise KS distance; 0 means perfect collapse. Needs >= 2 sets of
// >= 50 samples each.
double collapse_quality(const std::vector<std::vector<double>>& sets);

struct CollapseFit {
    CollapseForm form;
    double quality = 0.0;
};

inline constexpr double kCollapseAlphaMax = 3.0;
inline constexpr double kCollapseBetaMax = 1.0;
inline constexpr double kCollapseCoarseStep = 0.02;
inline constexpr double kCollapseFineStep = 0.002;

// Deterministic coarse-grid + local-refinement minimization of
// collapse_quality over the free parameters of the given form. Ties break
// toward the lowest alpha, then the lowest beta.
CollapseFit fit_collapse(
    const std::vector<std::pair<int, std::vector<double>>>& samples_per_size,
    CollapseKind kind);

}  // namespace xychain
