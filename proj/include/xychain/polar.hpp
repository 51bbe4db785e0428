#pragma once

#include <Eigen/Dense>

namespace xychain {

// Singular values below kNearSingularRatio * s_max make the orthogonal polar
// factor ill-conditioned; downstream results carry the flag.
inline constexpr double kNearSingularRatio = 1e-12;

// Single global calibration constant relating the smallest singular value of
// Z to the many-body gap E1 - E0. Fixed once against the small-L Fock-space
// oracle (see tests); guarded by a test.
inline constexpr double kGapFactor = 1.0;

// Output of the polar decomposition Z = Lambda * T with T = U V^T orthogonal
// and Lambda = U diag(s) U^T positive semi-definite.
struct PolarFactors {
    Eigen::MatrixXd T;
    Eigen::MatrixXd U;
    Eigen::MatrixXd V;
    Eigen::VectorXd singular_values;  // non-increasing, all >= 0

    bool near_singular() const {
        const auto& s = singular_values;
        return s(s.size() - 1) < kNearSingularRatio * s(0);
    }
};

// Dense SVD (LAPACK dgesdd). Throws NumericError on non-finite input and
// DecompositionError if the SVD fails to converge.
PolarFactors polar_decompose(const Eigen::MatrixXd& Z);

// Singular values only; cheaper when T is not needed (gap statistics).
Eigen::VectorXd singular_values(const Eigen::MatrixXd& Z);

inline double min_singular_value(const PolarFactors& p) {
    return p.singular_values(p.singular_values.size() - 1);
}

// Single-particle gap from the spectrum of Lambda.
inline double energy_gap(const PolarFactors& p) {
    return kGapFactor * min_singular_value(p);
}

}  // namespace xychain
