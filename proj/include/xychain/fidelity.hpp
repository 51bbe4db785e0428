#pragma once

#include <Eigen/Dense>

#include "xychain/chain.hpp"
#include "xychain/polar.hpp"

namespace xychain {

enum class ChiMethod { LogFidelity, FrobeniusDerivative };

struct ChiEstimate {
    double chi = 0.0;
    ChiMethod method = ChiMethod::FrobeniusDerivative;
    double step = 0.0;          // step at which `chi` was evaluated
    bool converged = false;     // two-step Richardson check passed
    bool near_singular = false; // some Z along the way was near-singular
};

// Finite-difference defaults; halved automatically when the Richardson
// check fails. Truncation is O(step^2), round-off grows as 1/step, so the
// defaults sit between the two.
inline constexpr double kDefaultLogFidelityStep = 1e-4;
inline constexpr double kDefaultFrobeniusStep = 1e-5;
inline constexpr double kChiRelTol = 1e-3;
inline constexpr int kMaxStepHalvings = 4;

// Ground-state fidelity sqrt(|det((Ta + Tb)/2)|), accumulated as log|det|
// through a pivoted LU so it does not underflow at large L.
double fidelity(const PolarFactors& a, const PolarFactors& b);
double fidelity(const Eigen::MatrixXd& Za, const Eigen::MatrixXd& Zb);

// Central-difference derivative of the orthogonal polar factor along `dir`,
// (T(x+h) - T(x-h)) / (2h). Sets `near_singular` if either endpoint is.
Eigen::MatrixXd polar_factor_derivative(const DisorderRealization& r,
                                        Direction dir, double h,
                                        bool* near_singular = nullptr);

// chi from the log-fidelity limit, evaluated at dx and dx/2; the reported
// value is the dx/2 one. Throws StepTooLargeError if F vanishes at the
// given step.
ChiEstimate chi_log_fidelity(const DisorderRealization& r, Direction dir,
                             double dx);

// chi = (1/8) ||dT/dx||_F^2 with the central-difference derivative,
// cross-checked between h and h/2.
ChiEstimate chi_frobenius(const DisorderRealization& r, Direction dir,
                          double h);

// Default estimator: chi_frobenius at the default step, halving the step up
// to kMaxStepHalvings times until converged. Never-converged results are
// returned with converged = false.
ChiEstimate chi(const DisorderRealization& r, Direction dir);

}  // namespace xychain
