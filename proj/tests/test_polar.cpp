#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xychain/chain.hpp"
#include "xychain/errors.hpp"
#include "xychain/polar.hpp"

using namespace xychain;

namespace {

Eigen::MatrixXd random_z(int L, std::uint64_t seed, double sigma = 0.3) {
    ChainSpec spec{L, 0.8, 0.7, sigma};
    return build_matrices(sample_realization(spec, seed, 0)).Z;
}

}  // namespace

TEST_CASE("identity and positive diagonal matrices") {
    const auto pi = polar_decompose(Eigen::MatrixXd::Identity(4, 4));
    CHECK((pi.T - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() <
          1e-14);
    CHECK(pi.singular_values.isApproxToConstant(1.0, 1e-14));

    Eigen::MatrixXd d = Eigen::Vector2d(3.0, 2.0).asDiagonal();
    const auto pd = polar_decompose(d);
    CHECK((pd.T - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() <
          1e-14);
    CHECK(pd.singular_values(0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(pd.singular_values(1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(min_singular_value(pd) == doctest::Approx(2.0));
    CHECK(energy_gap(pd) == doctest::Approx(2.0));  // gap factor g = 1
}

TEST_CASE("factors satisfy the polar invariants on random realizations") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const Eigen::MatrixXd Z = random_z(50, seed);
        const auto p = polar_decompose(Z);

        CHECK((p.T.transpose() * p.T - Eigen::MatrixXd::Identity(50, 50))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);

        const Eigen::MatrixXd Lambda =
            p.U * p.singular_values.asDiagonal() * p.U.transpose();
        const double scale = std::max(1.0, Z.cwiseAbs().maxCoeff());
        CHECK((Lambda * p.T - Z).cwiseAbs().maxCoeff() < 1e-8 * scale);

        for (int i = 0; i + 1 < 50; ++i)
            CHECK(p.singular_values(i) >= p.singular_values(i + 1));
        CHECK(p.singular_values(49) >= 0.0);

        // transpose has the same singular values
        const auto pt = polar_decompose(Eigen::MatrixXd(Z.transpose()));
        CHECK((p.singular_values - pt.singular_values).cwiseAbs().maxCoeff() <
              1e-10);
    }
}

TEST_CASE("clean-chain spectrum is invariant under cyclic relabeling") {
    ChainSpec spec{16, 0.5, 0.8, 0.0};
    auto r = sample_realization(spec, 0, 0);
    const auto s0 = singular_values(build_matrices(r).Z);

    // rotating a translation-invariant chain changes nothing, but go through
    // an explicit relabeling of a weakly-disordered chain as well
    ChainSpec dis{16, 0.5, 0.8, 0.1};
    auto rd = sample_realization(dis, 4, 0);
    DisorderRealization rot = rd;
    for (int i = 0; i < 16; ++i) {
        rot.fields(i) = rd.fields((i + 5) % 16);
        rot.anisotropies(i) = rd.anisotropies((i + 5) % 16);
    }
    const auto sa = singular_values(build_matrices(rd).Z);
    const auto sb = singular_values(build_matrices(rot).Z);
    CHECK((sa - sb).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(s0.size() == 16);
}

TEST_CASE("gapped vs critical clean chains") {
    // gamma = 1, lambda = 2: gap stays away from zero as L grows
    double prev_gap = 0.0;
    for (int L : {16, 32, 64}) {
        ChainSpec spec{L, 2.0, 1.0, 0.0};
        const auto p =
            polar_decompose(build_matrices(sample_realization(spec, 0, 0)).Z);
        const double g = energy_gap(p);
        CHECK(g > 1.0);
        prev_gap = g;
    }
    CHECK(prev_gap > 1.0);

    // gamma = 1, lambda = 1 (critical): gap shrinks toward zero. Odd sizes
    // keep the k = pi mode off the grid so Z stays invertible.
    double last = 1e9;
    for (int L : {33, 65, 129}) {
        ChainSpec spec{L, 1.0, 1.0, 0.0};
        const auto p =
            polar_decompose(build_matrices(sample_realization(spec, 0, 0)).Z);
        const double g = energy_gap(p);
        CHECK(g < last);
        last = g;
    }
    CHECK(last < 0.1);
}

TEST_CASE("input validation") {
    Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(4, 4);
    bad(1, 2) = std::nan("");
    CHECK_THROWS_AS(polar_decompose(bad), NumericError);
    CHECK_THROWS_AS(polar_decompose(Eigen::MatrixXd::Zero(3, 4)),
                    NumericError);
}

TEST_CASE("near-singular flag") {
    Eigen::MatrixXd d = Eigen::Vector3d(1.0, 0.5, 1e-14).asDiagonal();
    CHECK(polar_decompose(d).near_singular());
    Eigen::MatrixXd ok = Eigen::Vector3d(1.0, 0.5, 1e-6).asDiagonal();
    CHECK(!polar_decompose(ok).near_singular());
}
