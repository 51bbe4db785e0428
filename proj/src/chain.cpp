#include "xychain/chain.hpp"

#include <string>

#include "xychain/errors.hpp"
#include "xychain/rng.hpp"

namespace xychain {

void ChainSpec::validate() const {
    if (length < 3)
        throw ConfigError("ChainSpec: length must be >= 3, got " +
                          std::to_string(length));
    if (disorder_sigma < 0.0)
        throw ConfigError("ChainSpec: disorder_sigma must be >= 0, got " +
                          std::to_string(disorder_sigma));
}

DisorderRealization sample_realization(const ChainSpec& spec,
                                       std::uint64_t master_seed,
                                       std::uint64_t index) {
    spec.validate();
    const int L = spec.length;
    DisorderRealization r;
    r.fields.resize(L);
    r.anisotropies.resize(L);
    r.master_seed = master_seed;
    r.realization_index = index;

    GaussianStream g(stream_seed(master_seed, index));
    // Fixed draw order: lambda_1..lambda_L, gamma_1..gamma_L.
    for (int i = 0; i < L; ++i)
        r.fields(i) = spec.mean_field + spec.disorder_sigma * g.normal();
    for (int i = 0; i < L; ++i)
        r.anisotropies(i) = spec.mean_anisotropy + spec.disorder_sigma * g.normal();
    return r;
}

CouplingMatrices build_matrices(const DisorderRealization& r) {
    const int L = r.length();
    if (L < 3) throw ConfigError("build_matrices: need L >= 3");
    if (r.anisotropies.size() != L)
        throw ConfigError("build_matrices: field/anisotropy length mismatch");

    CouplingMatrices m;
    m.A = Eigen::MatrixXd::Zero(L, L);
    m.B = Eigen::MatrixXd::Zero(L, L);
    for (int i = 0; i < L; ++i) m.A(i, i) = -2.0 * r.fields(i);
    for (int i = 0; i + 1 < L; ++i) {
        m.A(i, i + 1) = -1.0;
        m.A(i + 1, i) = -1.0;
        m.B(i + 1, i) = r.anisotropies(i);
        m.B(i, i + 1) = -r.anisotropies(i);
    }
    m.A(0, L - 1) = -1.0;
    m.A(L - 1, 0) = -1.0;
    m.B(0, L - 1) = r.anisotropies(L - 1);
    m.B(L - 1, 0) = -r.anisotropies(L - 1);
    m.Z = m.A - m.B;
    return m;
}

DisorderRealization shift_realization(const DisorderRealization& r,
                                      Direction dir, double dx) {
    DisorderRealization out = r;
    if (dir == Direction::Field)
        out.fields.array() += dx;
    else
        out.anisotropies.array() += dx;
    return out;
}

Eigen::MatrixXd build_z_shifted(const DisorderRealization& r, Direction dir,
                                double dx) {
    return build_matrices(shift_realization(r, dir, dx)).Z;
}

}  // namespace xychain
