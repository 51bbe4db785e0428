#include "xychain/polar.hpp"

#include <lapacke.h>

#include <string>

#include "xychain/errors.hpp"

namespace xychain {

namespace {

void check_input(const Eigen::MatrixXd& Z) {
    if (Z.rows() != Z.cols())
        throw NumericError("polar_decompose: matrix must be square");
    if (Z.rows() == 0) throw NumericError("polar_decompose: empty matrix");
    if (!Z.allFinite())
        throw NumericError("polar_decompose: non-finite entries in input");
}

}  // namespace

PolarFactors polar_decompose(const Eigen::MatrixXd& Z) {
    check_input(Z);
    const lapack_int n = static_cast<lapack_int>(Z.rows());

    Eigen::MatrixXd work = Z;  // dgesdd destroys its input
    PolarFactors p;
    p.U.resize(n, n);
    p.singular_values.resize(n);
    Eigen::MatrixXd VT(n, n);

    const lapack_int info = LAPACKE_dgesdd(
        LAPACK_COL_MAJOR, 'A', n, n, work.data(), n, p.singular_values.data(),
        p.U.data(), n, VT.data(), n);
    if (info != 0)
        throw DecompositionError("polar_decompose: dgesdd failed, info=" +
                                 std::to_string(info));

    p.V = VT.transpose();
    p.T.noalias() = p.U * VT;
    return p;
}

Eigen::VectorXd singular_values(const Eigen::MatrixXd& Z) {
    check_input(Z);
    const lapack_int n = static_cast<lapack_int>(Z.rows());
    Eigen::MatrixXd work = Z;
    Eigen::VectorXd s(n);
    const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', n, n,
                                           work.data(), n, s.data(), nullptr,
                                           n, nullptr, n);
    if (info != 0)
        throw DecompositionError("singular_values: dgesdd failed, info=" +
                                 std::to_string(info));
    return s;
}

}  // namespace xychain
