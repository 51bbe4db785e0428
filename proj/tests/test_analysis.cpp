#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "xychain/analysis.hpp"
#include "xychain/errors.hpp"

using namespace xychain;

TEST_CASE("power_law_fit recovers exact power laws") {
    std::vector<double> sizes{100, 200, 300, 400, 500};
    std::vector<double> sq, lin;
    for (double L : sizes) {
        sq.push_back(3.0 * L * L);
        lin.push_back(0.7 * L);
    }
    const auto f2 = power_law_fit(sizes, sq);
    CHECK(f2.exponent == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(f2.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-10));
    CHECK(f2.exponent_stderr < 1e-10);
    CHECK(f2.r_squared == doctest::Approx(1.0));

    const auto f1 = power_law_fit(sizes, lin);
    CHECK(f1.exponent == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("power_law_fit input validation") {
    CHECK_THROWS_AS(power_law_fit({1, 2}, {1, 2}), AnalysisError);
    CHECK_THROWS_AS(power_law_fit({1, 2, 3}, {1, -2, 3}), AnalysisError);
    CHECK_THROWS_AS(power_law_fit({1, 2, 3}, {1, 2}), AnalysisError);
}

TEST_CASE("scaling_dimension reduces to power_law_fit when variance is zero") {
    std::vector<std::pair<double, EnsembleSummary>> per_size;
    for (double L : {64.0, 128.0, 256.0}) {
        EnsembleSummary s;
        s.ave = s.typ = 5.0 * L * L;
        per_size.emplace_back(L, s);
    }
    CHECK(scaling_dimension(per_size, Use::Average).exponent ==
          doctest::Approx(2.0).epsilon(1e-10));
    CHECK(scaling_dimension(per_size, Use::Typical).exponent ==
          doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("self-averaging classification on synthetic data") {
    std::map<double, double> inv, grow;
    for (double L : {100.0, 200.0, 300.0, 400.0}) {
        inv[L] = 7.0 / L;
        grow[L] = 0.4 * std::sqrt(L);
    }
    const auto a = self_averaging_classify(inv);
    CHECK(a.b == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(a.kind == SelfAveragingKind::SelfAveraging);

    const auto g = self_averaging_classify(grow);
    CHECK(g.b == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(g.kind == SelfAveragingKind::NonSelfAveraging);

    std::map<double, double> weak;
    for (double L : {100.0, 200.0, 300.0, 400.0}) weak[L] = 2.0 / std::sqrt(L);
    CHECK(self_averaging_classify(weak).kind ==
          SelfAveragingKind::WeaklySelfAveraging);
}

namespace {

Histogram hist_with_peak(int peak_bin) {
    Histogram h;
    h.bin_edges = {0.0, 0.1, 0.2, 0.3, 0.4};
    h.counts = {1, 1, 1, 1};
    h.counts[peak_bin] = 10;
    return h;
}

}  // namespace

TEST_CASE("griffiths_extent finds the zero-peaked run") {
    std::vector<std::pair<double, Histogram>> scan;
    for (double x : {-0.2, -0.1, 0.0, 0.1, 0.2})
        scan.emplace_back(x, hist_with_peak(2));
    CHECK(griffiths_extent(scan).empty);

    scan.clear();
    scan.emplace_back(-0.2, hist_with_peak(3));
    scan.emplace_back(-0.1, hist_with_peak(0));
    scan.emplace_back(0.0, hist_with_peak(0));
    scan.emplace_back(0.1, hist_with_peak(0));
    scan.emplace_back(0.2, hist_with_peak(2));
    const auto iv = griffiths_extent(scan);
    CHECK(!iv.empty);
    CHECK(iv.lo == doctest::Approx(-0.1));
    CHECK(iv.hi == doctest::Approx(0.1));

    // refining the grid with agreeing histograms keeps the interval
    scan.insert(scan.begin() + 2, {-0.05, hist_with_peak(0)});
    const auto iv2 = griffiths_extent(scan);
    CHECK(iv2.lo == doctest::Approx(iv.lo));
    CHECK(iv2.hi == doctest::Approx(iv.hi));

    // inconsistent binning is rejected
    Histogram other = hist_with_peak(0);
    other.bin_edges[1] = 0.05;
    scan.emplace_back(0.3, other);
    CHECK_THROWS_AS(griffiths_extent(scan), AnalysisError);
}

TEST_CASE("mckenzie_delta printed formulas") {
    CHECK(mckenzie_delta(1.0, 1.0, 0.2, Transition::Ising) ==
          doctest::Approx(0.0));
    CHECK(mckenzie_delta(1.09, 1.0, 0.3, Transition::Ising) ==
          doctest::Approx(1.0));
    CHECK(mckenzie_delta(0.5, 0.06, 0.3, Transition::Anisotropy) ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(mckenzie_delta(1.0, 1.0, 0.0, Transition::Ising),
                    AnalysisError);
}

TEST_CASE("dynamical exponent algebra") {
    CHECK(dynamical_exponent(2.0, 1.0) == doctest::Approx(1.0));
    CHECK(dynamical_exponent(4.0, 1.0) == doctest::Approx(2.0));
    CHECK(dynamical_exponent(2.0, 0.0) == doctest::Approx(0.0));
}

TEST_CASE("rescale_distribution transforms") {
    const std::vector<double> ln_chi{0.5, 1.5, 2.5};

    const auto id =
        rescale_distribution(ln_chi, 100, {CollapseKind::PowerLaw, 0.0, 0.0});
    CHECK(id == ln_chi);

    // samples at exactly ln(c L) collapse to ln c under the extensive form
    for (int L : {100, 200, 400}) {
        const std::vector<double> v{std::log(3.0 * L)};
        const auto out =
            rescale_distribution(v, L, {CollapseKind::Extensive, 0, 0});
        CHECK(out[0] == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    }

    // monotone in ln chi for each form
    for (CollapseKind k :
         {CollapseKind::PowerLaw, CollapseKind::StretchedExp,
          CollapseKind::Mixed, CollapseKind::Extensive}) {
        const auto out =
            rescale_distribution(ln_chi, 64, {k, 0.62, 0.5});
        CHECK(out[0] < out[1]);
        CHECK(out[1] < out[2]);
    }
}

TEST_CASE("ks_distance limits") {
    std::vector<double> a(60), b(60);
    for (int i = 0; i < 60; ++i) {
        a[i] = i * 0.1;
        b[i] = 100.0 + i * 0.1;
    }
    CHECK(ks_distance(a, a) == doctest::Approx(0.0));
    CHECK(ks_distance(a, b) == doctest::Approx(1.0));
}

TEST_CASE("collapse_quality invariances") {
    std::vector<std::vector<double>> sets;
    for (int s = 0; s < 3; ++s) {
        std::vector<double> v;
        for (int i = 0; i < 80; ++i)
            v.push_back(std::sin(i * 0.31 + s) + 0.2 * s);
        sets.push_back(v);
    }
    const double q = collapse_quality(sets);
    std::swap(sets[0], sets[2]);
    CHECK(collapse_quality(sets) == doctest::Approx(q));

    // common shift leaves pairwise KS distances unchanged
    for (auto& v : sets)
        for (auto& x : v) x += 3.7;
    CHECK(collapse_quality(sets) == doctest::Approx(q));

    CHECK_THROWS_AS(collapse_quality({{1.0}}), AnalysisError);
    CHECK_THROWS_AS(
        collapse_quality({std::vector<double>(10, 1.0),
                          std::vector<double>(10, 2.0)}),
        AnalysisError);
}

namespace {

// deterministic standard-normal-ish quantiles shared by all sizes
std::vector<double> base_quantiles(int n) {
    std::vector<double> q;
    for (int i = 1; i <= n; ++i) {
        const double u = static_cast<double>(i) / (n + 1);
        q.push_back(std::log(u / (1.0 - u)) * 0.55);  // logistic approx
    }
    return q;
}

}  // namespace

TEST_CASE("quality improves as the rescaling approaches the true exponent") {
    const double alpha_true = 1.3;
    std::vector<std::pair<int, std::vector<double>>> per_size;
    for (int L : {100, 200, 400}) {
        auto v = base_quantiles(120);
        for (auto& x : v) x += alpha_true * std::log(L);
        per_size.emplace_back(L, v);
    }
    double prev = 1e9;
    for (double alpha : {0.0, 0.6, 1.0, 1.3}) {
        std::vector<std::vector<double>> resc;
        for (const auto& [L, v] : per_size)
            resc.push_back(
                rescale_distribution(v, L, {CollapseKind::PowerLaw, alpha, 0}));
        const double q = collapse_quality(resc);
        CHECK(q <= prev);
        prev = q;
    }
    // rescaling at the true exponent leaves only float-rounding non-ties
    CHECK(prev <= 1.0 / 120 + 1e-12);
}

TEST_CASE("fit_collapse recovers synthetic exponents") {
    // power law: ln chi = alpha ln L + base
    {
        std::vector<std::pair<int, std::vector<double>>> per_size;
        for (int L : {100, 200, 400}) {
            auto v = base_quantiles(100);
            for (auto& x : v) x += 1.3 * std::log(L);
            per_size.emplace_back(L, v);
        }
        const auto f = fit_collapse(per_size, CollapseKind::PowerLaw);
        CHECK(f.form.alpha == doctest::Approx(1.3).epsilon(0.02));
        CHECK(f.quality < 0.05);
    }
    // stretched exponential: ln chi = L^0.3 * (c + spread)
    {
        std::vector<std::pair<int, std::vector<double>>> per_size;
        for (int L : {100, 200, 400}) {
            auto v = base_quantiles(100);
            for (auto& x : v) x = std::pow(L, 0.3) * (2.0 + 0.3 * x);
            per_size.emplace_back(L, v);
        }
        const auto f = fit_collapse(per_size, CollapseKind::StretchedExp);
        CHECK(f.form.beta == doctest::Approx(0.30).epsilon(0.07));
        CHECK(f.quality < 0.05);
    }
    CHECK_THROWS_AS(
        fit_collapse({{100, base_quantiles(60)}, {200, base_quantiles(60)}},
                     CollapseKind::PowerLaw),
        AnalysisError);
}
