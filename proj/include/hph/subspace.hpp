// Subspaces of Euclidean chain spaces: orthonormal bases, kernels, projections,
// intersections, preimages, principal angles and the Grassmann distance.
#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "config.hpp"
#include "detail/kernels.hpp"
#include "error.hpp"

namespace hph {

/// How a singular value is compared against the tolerance.
///  relative: sigma > tol * sigma_max (used for raw input matrices)
///  absolute: sigma > tol (used for compositions of orthonormal bases and projections,
///            where every nonzero singular value of interest is O(1))
enum class RankRule { relative, absolute };

class Subspace {
public:
    Subspace() = default;

    static Subspace zero(Eigen::Index n, double tol = default_tolerance())
    {
        return Subspace(Eigen::MatrixXd(n, 0), tol);
    }

    /// Wraps a basis that is already orthonormal. No check is made.
    static Subspace from_orthonormal(Eigen::MatrixXd basis, double tol = default_tolerance())
    {
        return Subspace(std::move(basis), tol);
    }

    Eigen::Index ambient_dim() const noexcept { return basis_.rows(); }
    Eigen::Index dim() const noexcept { return basis_.cols(); }
    bool is_zero() const noexcept { return basis_.cols() == 0; }
    const Eigen::MatrixXd& basis() const noexcept { return basis_; }
    double tol() const noexcept { return tol_; }

    Eigen::MatrixXd projector() const { return basis_ * basis_.transpose(); }

private:
    Subspace(Eigen::MatrixXd basis, double tol) : basis_(std::move(basis)), tol_(tol) {}

    Eigen::MatrixXd basis_;
    double tol_ = 1e-9;
};

struct PrincipalAngles {
    std::vector<double> angles;  // non-decreasing, in [0, pi/2]

    std::size_t size() const noexcept { return angles.size(); }
    double largest() const noexcept { return angles.empty() ? 0.0 : angles.back(); }
};

namespace detail {

inline void require_same_ambient(Eigen::Index a, Eigen::Index b, const char* what)
{
    if (a != b)
        throw Error(ErrorKind::DimensionMismatch,
                    std::string(what) + ": ambient dimensions " + std::to_string(a) + " and " + std::to_string(b) + " differ");
}

inline double threshold(double sigma_max, double tol, RankRule rule)
{
    return rule == RankRule::relative ? tol * sigma_max : tol;
}

/// Dense kernel via a full SVD.
inline Eigen::MatrixXd dense_kernel(const Eigen::MatrixXd& M, double tol, RankRule rule)
{
    const Eigen::Index n = M.cols();
    if (M.rows() == 0 || n == 0)
        return Eigen::MatrixXd::Identity(n, n);
    Eigen::VectorXd sv;
    Eigen::MatrixXd V;
    kernels::full_svd_right(M, sv, V);
    const double smax = sv.size() ? sv(0) : 0.0;
    if (smax == 0.0)
        return Eigen::MatrixXd::Identity(n, n);
    const double cut = threshold(smax, tol, rule);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cut)
        ++rank;
    return V.rightCols(n - rank);
}

/// Kernel of a large, sparse-ish matrix from a column-pivoted sparse QR of M^T.
/// Returns false if the result fails its residual check; the caller then falls back
/// to the dense path.
inline bool sparse_kernel(const Eigen::MatrixXd& M, double tol, RankRule rule, Eigen::MatrixXd& out)
{
    Eigen::MatrixXd K;
    if (!kernels::sparse_qr_kernel(M, K))
        return false;
    const double scale = std::max(1.0, M.cwiseAbs().maxCoeff());
    const double residual = K.cols() ? (M * K).cwiseAbs().maxCoeff() : 0.0;
    const double allowed = std::max(1e-10, threshold(scale, tol, rule)) * std::sqrt(static_cast<double>(M.cols()));
    if (residual > allowed)
        return false;
    out = std::move(K);
    return true;
}

inline constexpr Eigen::Index dense_kernel_limit = 512;

} // namespace detail

/// Orthonormal basis of the column space of V.
inline Subspace orthonormalize(const Eigen::MatrixXd& V, double tol = default_tolerance(), RankRule rule = RankRule::relative)
{
    const Eigen::Index n = V.rows();
    if (V.cols() == 0 || n == 0)
        return Subspace::zero(n, tol);
    Eigen::VectorXd sv;
    Eigen::MatrixXd U;
    kernels::thin_svd_left(V, sv, U);
    const double smax = sv(0);
    if (smax == 0.0)
        return Subspace::zero(n, tol);
    const double cut = detail::threshold(smax, tol, rule);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cut)
        ++rank;
    return Subspace::from_orthonormal(U.leftCols(rank), tol);
}

/// Orthonormal basis of {x : Mx = 0}.
inline Subspace nullspace(const Eigen::MatrixXd& M, double tol = default_tolerance(), RankRule rule = RankRule::relative)
{
    if (M.cols() > detail::dense_kernel_limit && M.rows() > 0) {
        Eigen::MatrixXd K;
        if (detail::sparse_kernel(M, tol, rule, K))
            return Subspace::from_orthonormal(std::move(K), tol);
    }
    return Subspace::from_orthonormal(detail::dense_kernel(M, tol, rule), tol);
}

inline Eigen::VectorXd project(const Subspace& S, const Eigen::VectorXd& z)
{
    detail::require_same_ambient(S.ambient_dim(), z.size(), "project");
    return S.basis() * (S.basis().transpose() * z);
}

/// Column-wise projection.
inline Eigen::MatrixXd project(const Subspace& S, const Eigen::MatrixXd& Z)
{
    detail::require_same_ambient(S.ambient_dim(), Z.rows(), "project");
    return S.basis() * (S.basis().transpose() * Z);
}

/// Projection onto the orthogonal complement of S.
inline Eigen::MatrixXd project_out(const Subspace& S, const Eigen::MatrixXd& Z)
{
    return Z - project(S, Z);
}

/// True when every basis vector of W lies in V up to tol.
inline bool contained_in(const Subspace& W, const Subspace& V, double tol)
{
    detail::require_same_ambient(W.ambient_dim(), V.ambient_dim(), "contained_in");
    if (W.is_zero())
        return true;
    Eigen::MatrixXd r = project_out(V, W.basis());
    return r.colwise().norm().maxCoeff() <= tol;
}

/// A + B.
inline Subspace span_sum(const Subspace& A, const Subspace& B, double tol = default_tolerance())
{
    detail::require_same_ambient(A.ambient_dim(), B.ambient_dim(), "span_sum");
    Eigen::MatrixXd stacked(A.ambient_dim(), A.dim() + B.dim());
    stacked << A.basis(), B.basis();
    return orthonormalize(stacked, tol, RankRule::absolute);
}

inline Subspace intersect(const Subspace& A, const Subspace& B, double tol = default_tolerance())
{
    detail::require_same_ambient(A.ambient_dim(), B.ambient_dim(), "intersect");
    const Eigen::Index n = A.ambient_dim();
    if (A.is_zero() || B.is_zero())
        return Subspace::zero(n, tol);
    Eigen::MatrixXd stacked(2 * n, n);
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
    stacked << I - A.projector(), I - B.projector();
    return nullspace(stacked, tol, RankRule::absolute);
}

/// V ∩ W^⊥ for W ⊆ V. Containment is checked against `containment_tol`.
inline Subspace complement_within(const Subspace& W, const Subspace& V, double tol, double containment_tol)
{
    detail::require_same_ambient(W.ambient_dim(), V.ambient_dim(), "complement_within");
    if (W.dim() > V.dim() || !contained_in(W, V, containment_tol))
        throw Error(ErrorKind::NotASubspace, "first argument is not contained in the second");
    if (W.is_zero())
        return V;
    if (W.dim() == V.dim())
        return Subspace::zero(V.ambient_dim(), tol);
    Eigen::MatrixXd C = W.basis().transpose() * V.basis();  // dW x dV
    Eigen::VectorXd sv;
    Eigen::MatrixXd R;
    kernels::full_svd_right(C, sv, R);
    const Eigen::Index keep = V.dim() - W.dim();
    return Subspace::from_orthonormal(V.basis() * R.rightCols(keep), tol);
}

inline Subspace complement_within(const Subspace& W, const Subspace& V, double tol = default_tolerance())
{
    return complement_within(W, V, tol, tol);
}

/// {v in source : proj_target(v) in S}, with S ⊆ target.
inline Subspace preimage_under_projection(const Subspace& source, const Subspace& target, const Subspace& S,
                                          double tol, double containment_tol)
{
    detail::require_same_ambient(source.ambient_dim(), target.ambient_dim(), "preimage_under_projection");
    detail::require_same_ambient(S.ambient_dim(), target.ambient_dim(), "preimage_under_projection");
    const Subspace C = complement_within(S, target, tol, containment_tol);
    if (source.is_zero() || C.is_zero())
        return source;
    // proj_target(v) lies in S exactly when it is orthogonal to C, i.e. C^T v = 0.
    Eigen::MatrixXd G = C.basis().transpose() * source.basis();
    Subspace Y = nullspace(G, tol, RankRule::absolute);
    return Subspace::from_orthonormal(source.basis() * Y.basis(), tol);
}

inline Subspace preimage_under_projection(const Subspace& source, const Subspace& target, const Subspace& S,
                                          double tol = default_tolerance())
{
    return preimage_under_projection(source, target, S, tol, tol);
}

/// Principal angles between A and B. Angles below pi/4 are recovered from sines,
/// which keeps them accurate near zero where arccos loses half the digits.
inline PrincipalAngles principal_angles(const Subspace& A, const Subspace& B)
{
    detail::require_same_ambient(A.ambient_dim(), B.ambient_dim(), "principal_angles");
    PrincipalAngles out;
    const Eigen::Index k = std::min(A.dim(), B.dim());
    if (k == 0)
        return out;
    const Subspace& small = A.dim() <= B.dim() ? A : B;
    const Subspace& large = A.dim() <= B.dim() ? B : A;

    Eigen::MatrixXd cross = large.basis().transpose() * small.basis();
    Eigen::VectorXd cosines = kernels::singular_values(cross);  // descending
    Eigen::MatrixXd residual = small.basis() - large.basis() * cross;
    Eigen::VectorXd sines = kernels::singular_values(residual);  // descending
    out.angles.resize(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        const double c = std::clamp(cosines(i), 0.0, 1.0);
        const double s = std::clamp(sines(k - 1 - i), 0.0, 1.0);
        out.angles[static_cast<std::size_t>(i)] = (c * c > 0.5) ? std::asin(s) : std::acos(c);
    }
    std::sort(out.angles.begin(), out.angles.end());
    return out;
}

inline double grassmann_distance(const Subspace& A, const Subspace& B)
{
    detail::require_same_ambient(A.ambient_dim(), B.ambient_dim(), "grassmann_distance");
    const double gap = static_cast<double>(std::abs(A.dim() - B.dim()));
    double sum = gap * std::numbers::pi * std::numbers::pi / 4.0;
    for (double theta : principal_angles(A, B).angles)
        sum += theta * theta;
    return std::sqrt(sum);
}

/// Flips v so that its largest-magnitude entry (first one on ties) is positive.
inline Eigen::VectorXd canonical_sign(Eigen::VectorXd v)
{
    if (v.size() == 0)
        return v;
    Eigen::Index best = 0;
    const double m = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (std::abs(v(i)) >= m * (1 - 1e-9)) {
            best = i;
            break;
        }
    if (v(best) < 0)
        v = -v;
    return v;
}

/// Basis with canonical column signs; useful for deterministic output.
inline Eigen::MatrixXd canonical_basis(const Subspace& S)
{
    Eigen::MatrixXd B = S.basis();
    for (Eigen::Index j = 0; j < B.cols(); ++j)
        B.col(j) = canonical_sign(B.col(j));
    return B;
}

} // namespace hph
