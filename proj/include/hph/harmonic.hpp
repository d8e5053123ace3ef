// Harmonic homology subspaces Z_p ∩ B_p^⊥ of subcomplexes, the Hodge Laplacian and
// the projection maps between nested subcomplexes.
#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

#include "complex.hpp"
#include "subspace.hpp"

namespace hph {

struct HarmonicSpace {
    int p = 0;
    Subspace space;   // in the ambient chain coordinates C_p(K)
    Subcomplex sub;   // the subcomplex it was computed on
};

/// Orthonormal basis of ker M_p ∩ ker M_{p+1}^T on sub's own chain space, zero-padded into C_p(K).
inline HarmonicSpace harmonic_basis(const SimplicialComplex& K, const Subcomplex& sub, int p,
                                    double tol = default_tolerance())
{
    validate_subcomplex(K, sub);
    const Eigen::MatrixXi down = local_boundary_matrix(K, sub, p);
    const Eigen::MatrixXi up = local_boundary_matrix(K, sub, p + 1);
    const Eigen::Index n = sub.count(p);
    Eigen::MatrixXd stacked(down.rows() + up.cols(), n);
    stacked << down.cast<double>(), up.transpose().cast<double>();
    Subspace local = nullspace(stacked, tol);
    return {p, Subspace::from_orthonormal(pad_to_ambient(K, sub, p, local.basis()), tol), sub};
}

inline HarmonicSpace harmonic_basis(const SimplicialComplex& K, int p, double tol = default_tolerance())
{
    return harmonic_basis(K, Subcomplex::full(K), p, tol);
}

/// Δ_p = M_{p+1} M_{p+1}^T + M_p^T M_p on the subcomplex chain space (local coordinates).
inline Eigen::MatrixXd laplacian(const SimplicialComplex& K, const Subcomplex& sub, int p)
{
    validate_subcomplex(K, sub);
    const Eigen::MatrixXi down = local_boundary_matrix(K, sub, p);
    const Eigen::MatrixXi up = local_boundary_matrix(K, sub, p + 1);
    Eigen::MatrixXi L = up * up.transpose() + down.transpose() * down;
    return L.cast<double>();
}

/// Kernel of the Laplacian, zero-padded into C_p(K). Cross-check path for harmonic_basis.
inline Subspace laplacian_kernel(const SimplicialComplex& K, const Subcomplex& sub, int p,
                                 double tol = default_tolerance())
{
    Subspace local = nullspace(laplacian(K, sub, p), tol);
    return Subspace::from_orthonormal(pad_to_ambient(K, sub, p, local.basis()), tol);
}

/// B_p(sub) in ambient coordinates.
inline Subspace boundary_space(const SimplicialComplex& K, const Subcomplex& sub, int p,
                               double tol = default_tolerance())
{
    const Eigen::MatrixXi up = local_boundary_matrix(K, sub, p + 1);
    Subspace local = orthonormalize(up.cast<double>(), tol);
    return Subspace::from_orthonormal(pad_to_ambient(K, sub, p, local.basis()), tol);
}

/// Z_p(sub) in ambient coordinates.
inline Subspace cycle_space(const SimplicialComplex& K, const Subcomplex& sub, int p,
                            double tol = default_tolerance())
{
    const Eigen::MatrixXi down = local_boundary_matrix(K, sub, p);
    Subspace local = nullspace(down.cast<double>(), tol);
    return Subspace::from_orthonormal(pad_to_ambient(K, sub, p, local.basis()), tol);
}

/// Matrix sending coordinates in from.space's basis to C_p(K): v ↦ proj_{B_p(to)^⊥}(v).
inline Eigen::MatrixXd functorial_map(const SimplicialComplex& K, const HarmonicSpace& from, const Subcomplex& to,
                                      double tol = default_tolerance())
{
    if (!from.sub.is_subset_of(to))
        throw Error(ErrorKind::NotNested, "source subcomplex is not contained in the target");
    const Subspace B = boundary_space(K, to, from.p, tol);
    return project_out(B, from.space.basis());
}

/// d_{K,p}(K1, K2): Grassmann distance between the harmonic spaces of two subcomplexes.
inline double homology_distance(const SimplicialComplex& K, const Subcomplex& K1, const Subcomplex& K2, int p,
                                double tol = default_tolerance())
{
    return grassmann_distance(harmonic_basis(K, K1, p, tol).space, harmonic_basis(K, K2, p, tol).space);
}

/// Δ_p(K1,K2) = max(|K1^p \ K2^p| + |K2^{p+1} \ K1^{p+1}|, |K2^p \ K1^p| + |K1^{p+1} \ K2^{p+1}|).
inline int homology_stability_delta(const SimplicialComplex& K, const Subcomplex& K1, const Subcomplex& K2, int p)
{
    auto only_in = [&](const Subcomplex& a, const Subcomplex& b, int q) {
        int n = 0;
        for (int i = 0; i < K.size(q); ++i)
            if (a.contains(q, i) && !b.contains(q, i))
                ++n;
        return n;
    };
    return std::max(only_in(K1, K2, p) + only_in(K2, K1, p + 1), only_in(K2, K1, p) + only_in(K1, K2, p + 1));
}

/// Σ over p- and (p+1)-simplices of |χ_{K1} − χ_{K2}|.
inline int characteristic_difference(const SimplicialComplex& K, const Subcomplex& K1, const Subcomplex& K2, int p)
{
    int n = 0;
    for (int q = p; q <= p + 1; ++q)
        for (int i = 0; i < K.size(q); ++i)
            if (K1.contains(q, i) != K2.contains(q, i))
                ++n;
    return n;
}

inline double homology_stability_bound(const SimplicialComplex& K, const Subcomplex& K1, const Subcomplex& K2, int p)
{
    return std::numbers::pi / 2.0 * std::sqrt(static_cast<double>(homology_stability_delta(K, K1, K2, p)));
}

} // namespace hph
