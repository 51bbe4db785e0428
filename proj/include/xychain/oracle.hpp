#pragma once

#include <Eigen/Dense>

#include "xychain/chain.hpp"

namespace xychain {

// Capacity limit for the dense Fock-space construction (dimension 2^L).
inline constexpr int kMaxOracleLength = 12;

// Dense quadratic fermion Hamiltonian in the full occupation-number basis.
// Basis state n has bit i set when mode i+1 is occupied; fermionic signs
// follow the Jordan-Wigner string on the bit string.
struct FockOperator {
    Eigen::MatrixXd matrix;
    int length = 0;

    Eigen::Index dimension() const { return matrix.rows(); }
};

struct GroundStates {
    double e0 = 0.0;
    double e1 = 0.0;
    Eigen::VectorXd ground;   // normalized eigenvector of e0
    bool degenerate = false;  // e1 - e0 < 1e-10
};

FockOperator build_fock_hamiltonian(const Eigen::MatrixXd& A,
                                    const Eigen::MatrixXd& B);
FockOperator build_fock_hamiltonian(const DisorderRealization& r);

// Two lowest eigenvalues and the ground eigenvector of the dense spectrum.
GroundStates exact_ground(const FockOperator& H);

// |<psi0(x)|psi0(x+dx)>| from full diagonalization at both points. Throws
// AnalysisError when either ground state is degenerate.
double exact_fidelity(const DisorderRealization& r, Direction dir, double dx);

}  // namespace xychain
