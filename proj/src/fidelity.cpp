#include "xychain/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "xychain/errors.hpp"

namespace xychain {

namespace {

double log_abs_det(const Eigen::MatrixXd& M) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(M);
    double acc = 0.0;
    const auto& d = lu.matrixLU().diagonal();
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        const double a = std::abs(d(i));
        if (a == 0.0) return -std::numeric_limits<double>::infinity();
        acc += std::log(a);
    }
    return acc;
}

// T at the shifted parameter point, accumulating the near-singular flag.
Eigen::MatrixXd shifted_T(const DisorderRealization& r, Direction dir,
                          double dx, bool& flag) {
    PolarFactors p = polar_decompose(build_z_shifted(r, dir, dx));
    flag = flag || p.near_singular();
    return p.T;
}

double frobenius_chi_at(const DisorderRealization& r, Direction dir, double h,
                        bool& flag) {
    const Eigen::MatrixXd Tp = shifted_T(r, dir, +h, flag);
    const Eigen::MatrixXd Tm = shifted_T(r, dir, -h, flag);
    const double dT_norm2 = ((Tp - Tm) / (2.0 * h)).squaredNorm();
    return dT_norm2 / 8.0;
}

bool rel_close(double a, double b, double tol) {
    const double scale = std::max(std::abs(a), std::abs(b));
    if (scale == 0.0) return true;
    return std::abs(a - b) <= tol * scale;
}

std::string seed_tag(const DisorderRealization& r) {
    return " (master_seed=" + std::to_string(r.master_seed) +
           ", index=" + std::to_string(r.realization_index) + ")";
}

}  // namespace

double fidelity(const PolarFactors& a, const PolarFactors& b) {
    if (a.T.rows() != b.T.rows())
        throw NumericError("fidelity: dimension mismatch");
    const double lad = log_abs_det(0.5 * (a.T + b.T));
    if (std::isinf(lad)) return 0.0;
    return std::clamp(std::exp(0.5 * lad), 0.0, 1.0);
}

double fidelity(const Eigen::MatrixXd& Za, const Eigen::MatrixXd& Zb) {
    return fidelity(polar_decompose(Za), polar_decompose(Zb));
}

Eigen::MatrixXd polar_factor_derivative(const DisorderRealization& r,
                                        Direction dir, double h,
                                        bool* near_singular) {
    if (h <= 0.0) throw NumericError("polar_factor_derivative: h must be > 0");
    bool flag = false;
    const Eigen::MatrixXd Tp = shifted_T(r, dir, +h, flag);
    const Eigen::MatrixXd Tm = shifted_T(r, dir, -h, flag);
    if (near_singular) *near_singular = flag;
    return (Tp - Tm) / (2.0 * h);
}

ChiEstimate chi_log_fidelity(const DisorderRealization& r, Direction dir,
                             double dx) {
    if (dx <= 0.0) throw NumericError("chi_log_fidelity: dx must be > 0");
    bool flag = false;
    const Eigen::MatrixXd T0 = shifted_T(r, dir, 0.0, flag);
    PolarFactors p0;  // reuse T only; fidelity needs just T
    p0.T = T0;

    auto chi_at = [&](double step) {
        bool f2 = false;
        PolarFactors ps;
        ps.T = shifted_T(r, dir, step, f2);
        flag = flag || f2;
        const double F = fidelity(p0, ps);
        if (F == 0.0)
            throw StepTooLargeError("chi_log_fidelity: F = 0 at dx=" +
                                    std::to_string(step) + seed_tag(r));
        return -2.0 * std::log(F) / (step * step);
    };

    const double c1 = chi_at(dx);
    const double c2 = chi_at(dx / 2.0);
    ChiEstimate e;
    e.chi = c2;
    e.method = ChiMethod::LogFidelity;
    e.step = dx / 2.0;
    e.converged = rel_close(c1, c2, kChiRelTol);
    e.near_singular = flag;
    return e;
}

ChiEstimate chi_frobenius(const DisorderRealization& r, Direction dir,
                          double h) {
    if (h <= 0.0) throw NumericError("chi_frobenius: h must be > 0");
    bool flag = false;
    const double c1 = frobenius_chi_at(r, dir, h, flag);
    const double c2 = frobenius_chi_at(r, dir, h / 2.0, flag);
    ChiEstimate e;
    e.chi = c2;
    e.method = ChiMethod::FrobeniusDerivative;
    e.step = h / 2.0;
    e.converged = rel_close(c1, c2, kChiRelTol);
    e.near_singular = flag;
    return e;
}

ChiEstimate chi(const DisorderRealization& r, Direction dir) {
    try {
        bool flag = false;
        double h = kDefaultFrobeniusStep;
        double prev = frobenius_chi_at(r, dir, h, flag);
        ChiEstimate e;
        e.method = ChiMethod::FrobeniusDerivative;
        // Each halving reuses the previous h/2 evaluation as the new h one.
        for (int k = 0; k <= kMaxStepHalvings; ++k) {
            const double cur = frobenius_chi_at(r, dir, h / 2.0, flag);
            e.chi = cur;
            e.step = h / 2.0;
            e.near_singular = flag;
            if (rel_close(prev, cur, kChiRelTol)) {
                e.converged = true;
                return e;
            }
            prev = cur;
            h /= 2.0;
        }
        e.converged = false;
        return e;
    } catch (const DecompositionError& err) {
        throw DecompositionError(err.what() + seed_tag(r));
    }
}

}  // namespace xychain
