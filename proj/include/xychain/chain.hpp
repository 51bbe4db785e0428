#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace xychain {

// Parameter-space direction along which the susceptibility is taken: a
// uniform shift of all site fields or all site anisotropies, with the
// disorder pattern frozen.
enum class Direction { Field, Anisotropy };

// Ensemble-level parameters of the disordered XY chain.
struct ChainSpec {
    int length = 0;               // L, number of sites
    double mean_field = 0.0;      // lambda
    double mean_anisotropy = 0.0; // gamma
    double disorder_sigma = 0.0;  // std. dev. of both site distributions

    // throws ConfigError on L < 3 or sigma < 0
    void validate() const;
};

// One sampled chain: per-site fields and anisotropies plus seed provenance.
// Regenerating with the same (master_seed, realization_index, spec) yields
// bit-identical vectors.
struct DisorderRealization {
    Eigen::VectorXd fields;
    Eigen::VectorXd anisotropies;
    std::uint64_t master_seed = 0;
    std::uint64_t realization_index = 0;

    int length() const { return static_cast<int>(fields.size()); }
};

// A symmetric, B antisymmetric, Z = A - B.
struct CouplingMatrices {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    Eigen::MatrixXd Z;
};

// Draws the 2L site parameters, fields first then anisotropies, from
// N(mean, sigma^2). Deterministic in (master_seed, index); independent of
// any other index.
DisorderRealization sample_realization(const ChainSpec& spec,
                                       std::uint64_t master_seed,
                                       std::uint64_t index);

// Closed-ring coupling matrices of the quadratic fermion Hamiltonian:
//   A_ii = -2 lambda_i, A_{i,i+1} = A_{i+1,i} = -1, A_{1L} = A_{L1} = -1
//   B_{j+1,j} = gamma_j, B_{i,i+1} = -gamma_i, B_{1L} = gamma_L = -B_{L1}
CouplingMatrices build_matrices(const DisorderRealization& r);

// Uniform shift of the mean along `dir`; the disorder pattern is unchanged.
DisorderRealization shift_realization(const DisorderRealization& r,
                                      Direction dir, double dx);

// Z at shifted parameters, without materializing A and B separately.
Eigen::MatrixXd build_z_shifted(const DisorderRealization& r, Direction dir,
                                double dx);

}  // namespace xychain
