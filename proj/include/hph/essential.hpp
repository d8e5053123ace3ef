// Essential simplices of simple bars, representative cycles and relative essential content.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "persistence.hpp"

namespace hph {

struct EssentialReport {
    int p = 0;
    Bar bar;
    Chain harmonic_rep;              // unit norm, canonical sign
    std::vector<Simplex> essential;  // in basis order
    double content = 0.0;
};

namespace detail {
inline void require_simple(const Bar& bar)
{
    if (!bar.simple())
        throw Error(ErrorKind::NotSimple, "bar has multiplicity " + std::to_string(bar.multiplicity));
}
} // namespace detail

/// Ñ^{s,t} = N^{s,t} ⊕ B_p(K_s) for finite t, M̃^{s,∞} = M^{s,N} ⊕ B_p(K_s) otherwise.
inline Subspace chain_level_W(const HarmonicPersistence& hp, const Bar& bar)
{
    detail::require_simple(bar);
    const Subspace& harmonic_part = bar.t ? hp.Nspace(bar.s, *bar.t) : hp.M(bar.s, hp.N());
    return span_sum(harmonic_part, hp.B(bar.s), hp.tol());
}

/// Unit harmonic representative spanning P^{s,t}.
inline Eigen::VectorXd harmonic_representative(const HarmonicPersistence& hp, const Bar& bar)
{
    detail::require_simple(bar);
    const Subspace P = hp.P(bar.s, bar.t);
    if (P.dim() != 1)
        throw Error(ErrorKind::NotSimple, "no simple bar at the requested (s,t)");
    return canonical_sign(P.basis().col(0));
}

/// Indices i with |z_i| > tol·‖z‖.
inline std::vector<int> support(const Eigen::VectorXd& z, double tol = default_tolerance())
{
    std::vector<int> out;
    const double cut = tol * z.norm();
    for (Eigen::Index i = 0; i < z.size(); ++i)
        if (std::abs(z(i)) > cut)
            out.push_back(static_cast<int>(i));
    return out;
}

/// Simplices in the support of the harmonic representative whose row of W vanishes.
inline std::vector<Simplex> essential_simplices(const HarmonicPersistence& hp, const Bar& bar)
{
    const Eigen::VectorXd z0 = harmonic_representative(hp, bar);
    const Subspace W = chain_level_W(hp, bar);
    std::vector<Simplex> out;
    for (int i : support(z0, hp.tol())) {
        const double row = W.is_zero() ? 0.0 : W.basis().row(i).norm();
        if (row <= hp.tol())
            out.push_back(hp.filtration().complex().simplex(hp.p(), i));
    }
    return out;
}

inline std::vector<Simplex> essential_simplices(const Filtration& F, int p, const Bar& bar, double tol = default_tolerance())
{
    detail::require_simple(bar);
    return essential_simplices(HarmonicPersistence(F, p, tol), bar);
}

/// (Σ_{σ∈Σ} c_σ² / Σ_σ c_σ²)^{1/2}; `essential` holds basis indices.
inline double content(const Eigen::VectorXd& z, const std::vector<int>& essential)
{
    const double total = z.squaredNorm();
    if (total == 0.0)
        throw Error(ErrorKind::ZeroChain, "content of the zero chain is undefined");
    double part = 0.0;
    for (int i : essential)
        part += z(i) * z(i);
    return std::sqrt(part / total);
}

inline double content(const SimplicialComplex& K, const Chain& z, const std::vector<Simplex>& essential)
{
    if (z.coeffs.size() != K.size(z.dim))
        throw Error(ErrorKind::DimensionMismatch, "chain length does not match the complex");
    std::vector<int> idx;
    for (const auto& s : essential) {
        auto i = K.index_of(s);
        if (!i || s.dim() != z.dim)
            throw Error(ErrorKind::SimplexNotInAmbient, s.to_string());
        idx.push_back(*i);
    }
    return content(z.coeffs, idx);
}

/// True when z is a cycle of K_s lying in M̃ (resp. Z_s) but not in W, i.e. z represents the bar.
inline bool represents(const HarmonicPersistence& hp, const Bar& bar, const Eigen::VectorXd& z, double tol = 1e-8)
{
    const double scale = std::max(1.0, z.norm());
    const Subspace W = chain_level_W(hp, bar);
    const Eigen::VectorXd z0 = harmonic_representative(hp, bar);
    // z must lie in span{z0} ⊕ W with a nonzero z0 component.
    const double along = z0.dot(z);
    const Eigen::VectorXd rest = z - along * z0;
    const Eigen::VectorXd off = rest - project(W, rest);
    return off.norm() <= tol * scale && std::abs(along) > tol * scale;
}

/// z0 + W·g for `count` standard normal vectors g, deterministic in `seed`.
inline std::vector<Chain> sample_representatives(const HarmonicPersistence& hp, const Bar& bar, int count, std::uint64_t seed)
{
    detail::require_simple(bar);
    if (count < 1)
        throw Error(ErrorKind::IndexOutOfRange, "count must be positive");
    const Eigen::VectorXd z0 = harmonic_representative(hp, bar);
    const Subspace W = chain_level_W(hp, bar);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Chain> out;
    out.reserve(static_cast<std::size_t>(count));
    while (static_cast<int>(out.size()) < count) {
        Eigen::VectorXd g(W.dim());
        for (Eigen::Index i = 0; i < g.size(); ++i)
            g(i) = normal(rng);
        Eigen::VectorXd z = z0 + W.basis() * g;
        if (!represents(hp, bar, z))
            continue;
        out.push_back({hp.p(), std::move(z)});
    }
    return out;
}

inline EssentialReport essential_report(const HarmonicPersistence& hp, const Bar& bar)
{
    EssentialReport r;
    r.p = hp.p();
    r.bar = bar;
    r.harmonic_rep = {hp.p(), harmonic_representative(hp, bar)};
    r.essential = essential_simplices(hp, bar);
    r.content = content(hp.filtration().complex(), r.harmonic_rep, r.essential);
    return r;
}

} // namespace hph
