#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xychain/chain.hpp"
#include "xychain/errors.hpp"

using namespace xychain;

TEST_CASE("zero-variance sampling returns the means exactly") {
    ChainSpec spec{5, 0.5, 1.0, 0.0};
    const auto r = sample_realization(spec, 987654321u, 3);
    for (int i = 0; i < 5; ++i) {
        CHECK(r.fields(i) == 0.5);
        CHECK(r.anisotropies(i) == 1.0);
    }
}

TEST_CASE("sampling is deterministic and index-separable") {
    ChainSpec spec{17, 0.5, 0.3, 0.25};
    const auto a = sample_realization(spec, 11, 4);
    const auto b = sample_realization(spec, 11, 4);
    CHECK(a.fields == b.fields);
    CHECK(a.anisotropies == b.anisotropies);

    // schedule independence: the same index drawn out of order is identical
    const auto later = sample_realization(spec, 11, 9);
    const auto again = sample_realization(spec, 11, 4);
    CHECK(a.fields == again.fields);
    CHECK(later.fields != a.fields);
}

TEST_CASE("sampled moments satisfy CLT bounds") {
    ChainSpec spec{100, 0.5, 1.0, 0.3};
    const int n_real = 10000;
    double sum = 0.0, sum2 = 0.0;
    const double n_draws = 100.0 * n_real;
    for (int idx = 0; idx < n_real; ++idx) {
        const auto r = sample_realization(spec, 2024, idx);
        sum += r.fields.sum();
        sum2 += r.fields.squaredNorm();
    }
    const double mean = sum / n_draws;
    const double sd = std::sqrt(sum2 / n_draws - mean * mean);
    const double se = 0.3 / std::sqrt(n_draws);
    CHECK(std::abs(mean - 0.5) <= 5.0 * se);
    CHECK(std::abs(sd - 0.3) <= 0.02 * 0.3);
}

TEST_CASE("invalid specs are rejected") {
    CHECK_THROWS_AS(sample_realization(ChainSpec{2, 0, 0, 0.1}, 1, 0),
                    ConfigError);
    CHECK_THROWS_AS(sample_realization(ChainSpec{10, 0, 0, -0.1}, 1, 0),
                    ConfigError);
}

TEST_CASE("L=3 uniform chain matches the printed entries") {
    ChainSpec spec{3, 1.0, 1.0, 0.0};
    const auto m = build_matrices(sample_realization(spec, 0, 0));
    Eigen::Matrix3d A_expect, B_expect;
    A_expect << -2, -1, -1, -1, -2, -1, -1, -1, -2;
    B_expect << 0, -1, 1, 1, 0, -1, -1, 1, 0;
    CHECK((m.A - A_expect).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.B - B_expect).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.Z - (m.A - m.B)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("coupling matrices satisfy the entry-level invariants") {
    ChainSpec spec{12, 0.7, 0.4, 0.3};
    const auto r = sample_realization(spec, 5, 17);
    const auto m = build_matrices(r);
    const int L = 12;

    CHECK((m.A - m.A.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((m.B + m.B.transpose()).cwiseAbs().maxCoeff() == 0.0);

    for (int i = 0; i < L; ++i)
        for (int j = 0; j < L; ++j) {
            const double a = m.A(i, j), b = m.B(i, j);
            if (i == j) {
                CHECK(a == -2.0 * r.fields(i));
                CHECK(b == 0.0);
            } else if (j == i + 1) {
                CHECK(a == -1.0);
                CHECK(b == -r.anisotropies(i));
            } else if (i == j + 1) {
                CHECK(a == -1.0);
                CHECK(b == r.anisotropies(j));
            } else if (i == 0 && j == L - 1) {
                CHECK(a == -1.0);
                CHECK(b == r.anisotropies(L - 1));
            } else if (i == L - 1 && j == 0) {
                CHECK(a == -1.0);
                CHECK(b == -r.anisotropies(L - 1));
            } else {
                CHECK(a == 0.0);
                CHECK(b == 0.0);
            }
        }
}

TEST_CASE("shift_realization moves only the chosen direction") {
    ChainSpec spec{8, 0.4, 0.6, 0.2};
    const auto r = sample_realization(spec, 99, 0);

    const auto same = shift_realization(r, Direction::Field, 0.0);
    CHECK(same.fields == r.fields);
    CHECK(same.anisotropies == r.anisotropies);

    const auto shifted = shift_realization(r, Direction::Field, 0.1);
    CHECK((shifted.fields - r.fields.array().matrix())
              .isApprox(Eigen::VectorXd::Constant(8, 0.1)));
    CHECK(shifted.anisotropies == r.anisotropies);

    const auto round =
        shift_realization(shift_realization(r, Direction::Anisotropy, 0.37),
                          Direction::Anisotropy, -0.37);
    CHECK((round.anisotropies - r.anisotropies).cwiseAbs().maxCoeff() < 1e-15);
}
