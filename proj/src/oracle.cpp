#include "xychain/oracle.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "xychain/errors.hpp"

namespace xychain {

namespace {

// Jordan-Wigner sign of the string left of mode i: (-1)^(# occupied j < i).
inline double jw_sign(std::uint32_t state, int i) {
    const std::uint32_t mask = (1u << i) - 1u;
    return (std::popcount(state & mask) & 1) ? -1.0 : 1.0;
}

struct ModeState {
    std::uint32_t state;
    double amp;  // 0 amplitude encodes annihilation of the state
};

inline ModeState annihilate(ModeState s, int i) {
    if (s.amp == 0.0 || !(s.state >> i & 1u)) return {0u, 0.0};
    return {s.state & ~(1u << i), s.amp * jw_sign(s.state, i)};
}

inline ModeState create(ModeState s, int i) {
    if (s.amp == 0.0 || (s.state >> i & 1u)) return {0u, 0.0};
    return {s.state | (1u << i), s.amp * jw_sign(s.state, i)};
}

}  // namespace

FockOperator build_fock_hamiltonian(const Eigen::MatrixXd& A,
                                    const Eigen::MatrixXd& B) {
    const int L = static_cast<int>(A.rows());
    if (L < 1 || L > kMaxOracleLength)
        throw ConfigError("build_fock_hamiltonian: L must be in [1, " +
                          std::to_string(kMaxOracleLength) + "], got " +
                          std::to_string(L));
    if (A.cols() != L || B.rows() != L || B.cols() != L)
        throw ConfigError("build_fock_hamiltonian: A, B must be LxL");

    const std::uint32_t dim = 1u << L;
    FockOperator H;
    H.length = L;
    H.matrix = Eigen::MatrixXd::Zero(dim, dim);

    auto add = [&](std::uint32_t col, ModeState out, double coeff) {
        if (out.amp != 0.0) H.matrix(out.state, col) += coeff * out.amp;
    };

    for (std::uint32_t n = 0; n < dim; ++n) {
        const ModeState in{n, 1.0};
        for (int i = 0; i < L; ++i) {
            for (int j = 0; j < L; ++j) {
                // c^dag_i A_ij c_j
                if (A(i, j) != 0.0)
                    add(n, create(annihilate(in, j), i), A(i, j));
                if (B(i, j) != 0.0) {
                    // (1/2) B_ij c^dag_i c^dag_j
                    add(n, create(create(in, j), i), 0.5 * B(i, j));
                    // (1/2) B_ij c_j c_i
                    add(n, annihilate(annihilate(in, i), j), 0.5 * B(i, j));
                }
            }
        }
    }
    return H;
}

FockOperator build_fock_hamiltonian(const DisorderRealization& r) {
    const CouplingMatrices m = build_matrices(r);
    return build_fock_hamiltonian(m.A, m.B);
}

GroundStates exact_ground(const FockOperator& H) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H.matrix);
    if (es.info() != Eigen::Success)
        throw NumericError("exact_ground: eigensolver failed");
    GroundStates g;
    g.e0 = es.eigenvalues()(0);
    g.e1 = es.eigenvalues()(1);
    g.ground = es.eigenvectors().col(0);
    g.degenerate = (g.e1 - g.e0) < 1e-10;
    return g;
}

double exact_fidelity(const DisorderRealization& r, Direction dir, double dx) {
    const GroundStates a = exact_ground(build_fock_hamiltonian(r));
    const GroundStates b =
        exact_ground(build_fock_hamiltonian(shift_realization(r, dir, dx)));
    if (a.degenerate || b.degenerate)
        throw AnalysisError("exact_fidelity: degenerate ground state");
    return std::abs(a.ground.dot(b.ground));
}

}  // namespace xychain
