#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#ifdef BESSEL_HAVE_LAPACKE
#include <lapacke.h>
#endif

namespace bessel::linalg {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// All singular values, descending. Dense LAPACK divide-and-conquer when
/// available (with the real fast path), Eigen otherwise.
inline std::vector<double> singular_values(const Matrix& M) {
    const int n = int(M.rows()), m = int(M.cols());
    std::vector<double> s(std::min(n, m));
#ifdef BESSEL_HAVE_LAPACKE
    const bool real = M.imag().cwiseAbs().maxCoeff() == 0.0;
    int info = 0;
    if (real) {
        Eigen::MatrixXd A = M.real();
        info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', n, m, A.data(), n, s.data(),
                              nullptr, 1, nullptr, 1);
    } else {
        Matrix A = M;
        info = LAPACKE_zgesdd(LAPACK_COL_MAJOR, 'N', n, m,
                              reinterpret_cast<lapack_complex_double*>(A.data()), n,
                              s.data(), nullptr, 1, nullptr, 1);
    }
    if (info != 0) throw std::runtime_error("gesdd failed to converge");
#else
    Eigen::BDCSVD<Matrix> svd(M);
    const auto& sv = svd.singularValues();
    for (int i = 0; i < sv.size(); ++i) s[i] = sv[i];
#endif
    return s;
}

inline double sigma_max(const Matrix& M) { return singular_values(M).front(); }

inline double sigma_min(const Matrix& M) { return singular_values(M).back(); }

/// Hermitian (A^* A + I)^{-1/2} via eigendecomposition.
inline Matrix inv_sqrt_gram_plus_identity(const Matrix& A) {
    const Matrix G = A.adjoint() * A + Matrix::Identity(A.cols(), A.cols());
    Eigen::SelfAdjointEigenSolver<Matrix> es(G);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed");
    Eigen::VectorXd lam = es.eigenvalues();
    Eigen::VectorXd inv_sqrt = lam.array().sqrt().inverse();
    return es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
}

} // namespace bessel::linalg
