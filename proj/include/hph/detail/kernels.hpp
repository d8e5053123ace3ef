// Dense and sparse decompositions behind plain functions.
//
// Header-only by default. Defining HPH_SEPARATE_KERNELS turns these into declarations,
// and exactly one translation unit must then define HPH_KERNELS_IMPL before including
// this header (see src/kernels.cpp). That keeps the heavy Eigen instantiations in one
// object file instead of every includer.
#pragma once

#include <Eigen/Core>

#if defined(HPH_KERNELS_IMPL)
#define HPH_KERNEL_API
#define HPH_KERNEL_DEFINE 1
#elif defined(HPH_SEPARATE_KERNELS)
#define HPH_KERNEL_API
#define HPH_KERNEL_DEFINE 0
#else
#define HPH_KERNEL_API inline
#define HPH_KERNEL_DEFINE 1
#endif

#if HPH_KERNEL_DEFINE
#include <Eigen/Dense>
#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseQR>
#include <algorithm>
#include <cmath>
#endif

namespace hph::kernels {

/// Singular values (descending) and the thin left singular vectors.
HPH_KERNEL_API void thin_svd_left(const Eigen::MatrixXd& A, Eigen::VectorXd& sigma, Eigen::MatrixXd& U);

/// Singular values (descending) and the full right singular vectors.
HPH_KERNEL_API void full_svd_right(const Eigen::MatrixXd& A, Eigen::VectorXd& sigma, Eigen::MatrixXd& V);

/// Singular values only, descending.
HPH_KERNEL_API Eigen::VectorXd singular_values(const Eigen::MatrixXd& A);

/// Kernel from a column-pivoted sparse QR of A^T. Returns false if QR fails; the
/// caller is responsible for validating the result.
HPH_KERNEL_API bool sparse_qr_kernel(const Eigen::MatrixXd& A, Eigen::MatrixXd& K);

#if HPH_KERNEL_DEFINE

namespace detail {
// Eigen 3.4.0 BDCSVD sometimes returns wrong singular vectors when singular values
// cluster at zero. A result is accepted only if Q is orthonormal and the columns of
// A Q (resp. A^T Q) are mutually orthogonal with norms sigma; otherwise JacobiSVD redoes it.
inline bool singular_basis_ok(const Eigen::MatrixXd& AQ, const Eigen::MatrixXd& Q, const Eigen::VectorXd& sigma)
{
    const Eigen::Index k = Q.cols();
    if (k == 0)
        return true;
    if (!Q.allFinite() || !AQ.allFinite() || !sigma.allFinite())
        return false;
    if (!((Q.transpose() * Q - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff() <= 1e-10))
        return false;
    Eigen::MatrixXd G = AQ.transpose() * AQ;
    for (Eigen::Index i = 0; i < std::min<Eigen::Index>(k, sigma.size()); ++i)
        G(i, i) -= sigma(i) * sigma(i);
    const double scale = sigma.size() ? std::max(1.0, sigma(0) * sigma(0)) : 1.0;
    return G.cwiseAbs().maxCoeff() <= 1e-10 * scale;
}
} // namespace detail

HPH_KERNEL_API void thin_svd_left(const Eigen::MatrixXd& A, Eigen::VectorXd& sigma, Eigen::MatrixXd& U)
{
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU);
    sigma = svd.singularValues();
    U = svd.matrixU();
    if (!detail::singular_basis_ok(A.transpose() * U, U, sigma)) {
        Eigen::JacobiSVD<Eigen::MatrixXd> jac(A, Eigen::ComputeThinU);
        sigma = jac.singularValues();
        U = jac.matrixU();
    }
}

HPH_KERNEL_API void full_svd_right(const Eigen::MatrixXd& A, Eigen::VectorXd& sigma, Eigen::MatrixXd& V)
{
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    sigma = svd.singularValues();
    V = svd.matrixV();
    if (!detail::singular_basis_ok(A * V, V, sigma)) {
        Eigen::JacobiSVD<Eigen::MatrixXd> jac(A, Eigen::ComputeFullV);
        sigma = jac.singularValues();
        V = jac.matrixV();
    }
}

HPH_KERNEL_API Eigen::VectorXd singular_values(const Eigen::MatrixXd& A)
{
    if (A.rows() == 0 || A.cols() == 0)
        return Eigen::VectorXd(0);
    Eigen::VectorXd sigma = Eigen::BDCSVD<Eigen::MatrixXd>(A).singularValues();
    if (!sigma.allFinite())
        sigma = Eigen::JacobiSVD<Eigen::MatrixXd>(A).singularValues();
    return sigma;
}

HPH_KERNEL_API bool sparse_qr_kernel(const Eigen::MatrixXd& A, Eigen::MatrixXd& K)
{
    const Eigen::Index n = A.cols();
    Eigen::SparseMatrix<double> At = A.transpose().sparseView();
    At.makeCompressed();
    Eigen::SparseQR<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> qr;
    qr.compute(At);
    if (qr.info() != Eigen::Success)
        return false;
    const Eigen::Index rank = qr.rank();
    if (rank >= n) {
        K = Eigen::MatrixXd(n, 0);
        return true;
    }
    Eigen::MatrixXd E = Eigen::MatrixXd::Zero(n, n - rank);
    for (Eigen::Index j = 0; j < n - rank; ++j)
        E(rank + j, j) = 1.0;
    K = qr.matrixQ() * E;
    // Q is orthogonal only up to roundoff; tidy the columns with a thin QR.
    Eigen::HouseholderQR<Eigen::MatrixXd> tidy(K);
    K = tidy.householderQ() * Eigen::MatrixXd::Identity(n, n - rank);
    return true;
}

#endif

} // namespace hph::kernels
