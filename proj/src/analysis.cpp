#include "xychain/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "xychain/errors.hpp"

namespace xychain {

PowerLawFit power_law_fit(const std::vector<double>& sizes,
                          const std::vector<double>& values) {
    const std::size_t n = sizes.size();
    if (values.size() != n)
        throw AnalysisError("power_law_fit: size/value length mismatch");
    if (n < 3) throw AnalysisError("power_law_fit: need >= 3 points");

    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(sizes[i] > 0.0) || !(values[i] > 0.0))
            throw AnalysisError("power_law_fit: inputs must be > 0");
        lx[i] = std::log(sizes[i]);
        ly[i] = std::log(values[i]);
    }

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;

    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    if (sxx == 0.0) throw AnalysisError("power_law_fit: degenerate sizes");

    PowerLawFit f;
    f.exponent = sxy / sxx;
    f.intercept = my - f.exponent * mx;

    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (f.intercept + f.exponent * lx[i]);
        ss_res += r * r;
    }
    f.exponent_stderr =
        std::sqrt(std::max(0.0, ss_res / static_cast<double>(n - 2)) / sxx);
    f.r_squared = (syy == 0.0) ? 1.0 : std::max(0.0, 1.0 - ss_res / syy);
    return f;
}

PowerLawFit scaling_dimension(
    const std::vector<std::pair<double, EnsembleSummary>>& per_size, Use use) {
    std::vector<double> sizes, values;
    for (const auto& [L, s] : per_size) {
        sizes.push_back(L);
        values.push_back(use == Use::Average ? s.ave : s.typ);
    }
    return power_law_fit(sizes, values);
}

SelfAveragingClass self_averaging_classify(
    const std::map<double, double>& R_per_size) {
    std::vector<double> sizes, values;
    for (const auto& [L, R] : R_per_size) {
        sizes.push_back(L);
        values.push_back(R);
    }
    const PowerLawFit f = power_law_fit(sizes, values);

    SelfAveragingClass c;
    c.b = f.exponent;
    c.b_stderr = f.exponent_stderr;
    if (std::abs(c.b + 1.0) <= std::max(0.1, 2.0 * c.b_stderr))
        c.kind = SelfAveragingKind::SelfAveraging;
    else if (c.b >= -std::max(0.05, 2.0 * c.b_stderr))
        c.kind = SelfAveragingKind::NonSelfAveraging;
    else
        c.kind = SelfAveragingKind::WeaklySelfAveraging;
    return c;
}

ParameterInterval griffiths_extent(
    const std::vector<std::pair<double, Histogram>>& scan) {
    if (scan.empty()) return {};
    const auto& edges0 = scan.front().second.bin_edges;
    for (const auto& [x, h] : scan)
        if (h.bin_edges != edges0)
            throw AnalysisError(
                "griffiths_extent: histograms must share binning");

    auto zero_peaked = [](const Histogram& h) {
        const auto mx = *std::max_element(h.counts.begin(), h.counts.end());
        return !h.counts.empty() && h.counts.front() == mx;
    };

    ParameterInterval best;
    std::size_t i = 0;
    while (i < scan.size()) {
        if (!zero_peaked(scan[i].second)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < scan.size() && zero_peaked(scan[j + 1].second)) ++j;
        const double lo = scan[i].first, hi = scan[j].first;
        if (best.empty || hi - lo > best.hi - best.lo)
            best = {lo, hi, false};
        i = j + 1;
    }
    return best;
}

double mckenzie_delta(double lambda, double gamma, double sigma, Transition t) {
    if (!(sigma > 0.0))
        throw AnalysisError("mckenzie_delta: sigma must be > 0");
    const double s2 = sigma * sigma;
    if (t == Transition::Ising) return std::abs(gamma) * (lambda - 1.0) / s2;
    return gamma * (1.0 - lambda * lambda) / s2;
}

std::vector<double> rescale_distribution(const std::vector<double>& ln_chi,
                                         int L, const CollapseForm& form) {
    if (L <= 0) throw AnalysisError("rescale_distribution: L must be > 0");
    if (!std::isfinite(form.alpha) || !std::isfinite(form.beta))
        throw AnalysisError("rescale_distribution: non-finite parameters");
    const double lnL = std::log(static_cast<double>(L));
    std::vector<double> out(ln_chi.size());
    switch (form.form) {
        case CollapseKind::PowerLaw:
            for (std::size_t i = 0; i < ln_chi.size(); ++i)
                out[i] = ln_chi[i] - form.alpha * lnL;
            break;
        case CollapseKind::StretchedExp: {
            const double scale = std::pow(static_cast<double>(L), -form.beta);
            for (std::size_t i = 0; i < ln_chi.size(); ++i)
                out[i] = scale * ln_chi[i];
            break;
        }
        case CollapseKind::Mixed: {
            const double scale = std::pow(static_cast<double>(L), form.beta);
            for (std::size_t i = 0; i < ln_chi.size(); ++i)
                out[i] = scale * (ln_chi[i] - form.alpha * lnL);
            break;
        }
        case CollapseKind::Extensive:
            for (std::size_t i = 0; i < ln_chi.size(); ++i)
                out[i] = ln_chi[i] - lnL;
            break;
    }
    return out;
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty())
        throw AnalysisError("ks_distance: empty sample set");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t ia = 0, ib = 0;
    double d = 0.0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        d = std::max(d, std::abs(ia / na - ib / nb));
    }
    return d;
}

double collapse_quality(const std::vector<std::vector<double>>& sets) {
    if (sets.size() < 2)
        throw AnalysisError("collapse_quality: need >= 2 sample sets");
    for (const auto& s : sets)
        if (s.size() < 50)
            throw AnalysisError("collapse_quality: sets need >= 50 samples");
    double total = 0.0;
    int pairs = 0;
    for (std::size_t i = 0; i < sets.size(); ++i)
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            total += ks_distance(sets[i], sets[j]);
            ++pairs;
        }
    return total / pairs;
}

namespace {

double quality_at(
    const std::vector<std::pair<int, std::vector<double>>>& samples_per_size,
    const CollapseForm& form) {
    std::vector<std::vector<double>> rescaled;
    rescaled.reserve(samples_per_size.size());
    for (const auto& [L, s] : samples_per_size)
        rescaled.push_back(rescale_distribution(s, L, form));
    return collapse_quality(rescaled);
}

}  // namespace

CollapseFit fit_collapse(
    const std::vector<std::pair<int, std::vector<double>>>& samples_per_size,
    CollapseKind kind) {
    if (samples_per_size.size() < 3)
        throw AnalysisError("fit_collapse: need >= 3 sizes");

    const bool free_alpha =
        kind == CollapseKind::PowerLaw || kind == CollapseKind::Mixed;
    const bool free_beta =
        kind == CollapseKind::StretchedExp || kind == CollapseKind::Mixed;

    auto search = [&](double a_lo, double a_hi, double b_lo, double b_hi,
                      double step) {
        CollapseFit best;
        best.quality = std::numeric_limits<double>::infinity();
        const int na = free_alpha
                           ? static_cast<int>(std::round((a_hi - a_lo) / step))
                           : 0;
        const int nb = free_beta
                           ? static_cast<int>(std::round((b_hi - b_lo) / step))
                           : 0;
        for (int ib = 0; ib <= nb; ++ib) {
            for (int ia = 0; ia <= na; ++ia) {
                CollapseForm form{kind, free_alpha ? a_lo + ia * step : 0.0,
                                  free_beta ? b_lo + ib * step : 0.0};
                const double q = quality_at(samples_per_size, form);
                // strict < keeps the lowest alpha, then lowest beta, on ties
                if (q < best.quality ||
                    (q == best.quality &&
                     (form.alpha < best.form.alpha ||
                      (form.alpha == best.form.alpha &&
                       form.beta < best.form.beta)))) {
                    best.form = form;
                    best.quality = q;
                }
            }
        }
        return best;
    };

    CollapseFit coarse = search(0.0, kCollapseAlphaMax, 0.0, kCollapseBetaMax,
                                kCollapseCoarseStep);
    if (!free_alpha && !free_beta) return coarse;

    const double a0 = std::max(0.0, coarse.form.alpha - kCollapseCoarseStep);
    const double a1 =
        std::min(kCollapseAlphaMax, coarse.form.alpha + kCollapseCoarseStep);
    const double b0 = std::max(0.0, coarse.form.beta - kCollapseCoarseStep);
    const double b1 =
        std::min(kCollapseBetaMax, coarse.form.beta + kCollapseCoarseStep);
    CollapseFit fine = search(a0, a1, b0, b1, kCollapseFineStep);
    return fine.quality <= coarse.quality ? fine : coarse;
}

}  // namespace xychain
