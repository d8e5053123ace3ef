// Filtrations, admissible functions, persistent harmonic subspaces and harmonic barcodes.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "complex.hpp"
#include "harmonic.hpp"
#include "parallel.hpp"
#include "subspace.hpp"

namespace hph {

/// Real values on the simplices of a complex, strictly increasing along face inclusion.
class AdmissibleFunction {
public:
    AdmissibleFunction() = default;

    /// values[p][i] is the value of the i-th p-simplex. Throws NotAdmissible on a
    /// face/coface pair with f(face) >= f(coface).
    AdmissibleFunction(std::shared_ptr<const SimplicialComplex> K, std::vector<std::vector<double>> values)
        : complex_(std::move(K)), values_(std::move(values))
    {
        if (!complex_)
            throw Error(ErrorKind::ComplexMismatch, "admissible function without a complex");
        values_.resize(static_cast<std::size_t>(complex_->max_dim() + 1));
        for (int p = 0; p <= complex_->max_dim(); ++p)
            if (static_cast<int>(values_[p].size()) != complex_->size(p))
                throw Error(ErrorKind::DimensionMismatch, "value count does not match simplex count in dimension " + std::to_string(p));
        for (int p = 1; p <= complex_->max_dim(); ++p)
            for (int i = 0; i < complex_->size(p); ++i)
                for (const auto& inc : complex_->facets(p, i))
                    if (!(values_[p - 1][inc.row] < values_[p][i]))
                        throw Error(ErrorKind::NotAdmissible,
                                    "f(" + complex_->simplex(p - 1, inc.row).to_string() + ") = " +
                                        std::to_string(values_[p - 1][inc.row]) + " is not below f(" +
                                        complex_->simplex(p, i).to_string() + ") = " + std::to_string(values_[p][i]));
    }

    /// Builds from a simplex → value map covering every simplex of K.
    static AdmissibleFunction from_map(std::shared_ptr<const SimplicialComplex> K, const std::map<Simplex, double>& values)
    {
        std::vector<std::vector<double>> v(static_cast<std::size_t>(K->max_dim() + 1));
        for (int p = 0; p <= K->max_dim(); ++p)
            for (const auto& s : K->simplices(p)) {
                auto it = values.find(s);
                if (it == values.end())
                    throw Error(ErrorKind::NotAdmissible, "no value for " + s.to_string());
                v[p].push_back(it->second);
            }
        return AdmissibleFunction(std::move(K), std::move(v));
    }

    const SimplicialComplex& complex() const { return *complex_; }
    const std::shared_ptr<const SimplicialComplex>& complex_ptr() const { return complex_; }
    double value(int p, int index) const { return values_.at(p).at(index); }
    double value(const Simplex& s) const
    {
        auto idx = complex_->index_of(s);
        if (!idx)
            throw Error(ErrorKind::SimplexNotInAmbient, s.to_string());
        return values_[s.dim()][*idx];
    }
    const std::vector<std::vector<double>>& values() const { return values_; }

    /// Sorted distinct values.
    std::vector<double> distinct_values() const
    {
        std::vector<double> all;
        for (const auto& level : values_)
            all.insert(all.end(), level.begin(), level.end());
        std::sort(all.begin(), all.end());
        all.erase(std::unique(all.begin(), all.end()), all.end());
        return all;
    }

private:
    std::shared_ptr<const SimplicialComplex> complex_;
    std::vector<std::vector<double>> values_;
};

/// K_0 ⊆ K_1 ⊆ ... ⊆ K_N = K, stored as the entry index of every simplex.
class Filtration {
public:
    Filtration() = default;

    /// entry[p][i] is the index at which the i-th p-simplex appears. N defaults to the
    /// largest entry. Faces may enter together with their cofaces but not after them.
    Filtration(std::shared_ptr<const SimplicialComplex> K, std::vector<std::vector<int>> entry,
               std::optional<int> N = std::nullopt, std::vector<double> breakpoints = {})
        : complex_(std::move(K)), entry_(std::move(entry)), breakpoints_(std::move(breakpoints))
    {
        if (!complex_)
            throw Error(ErrorKind::ComplexMismatch, "filtration without a complex");
        entry_.resize(static_cast<std::size_t>(complex_->max_dim() + 1));
        int top = 0;
        for (int p = 0; p <= complex_->max_dim(); ++p) {
            if (static_cast<int>(entry_[p].size()) != complex_->size(p))
                throw Error(ErrorKind::DimensionMismatch, "entry count does not match simplex count in dimension " + std::to_string(p));
            for (int e : entry_[p]) {
                if (e < 0)
                    throw Error(ErrorKind::NotAdmissible, "negative entry index");
                top = std::max(top, e);
            }
        }
        for (int p = 1; p <= complex_->max_dim(); ++p)
            for (int i = 0; i < complex_->size(p); ++i)
                for (const auto& inc : complex_->facets(p, i))
                    if (entry_[p - 1][inc.row] > entry_[p][i])
                        throw Error(ErrorKind::NotAdmissible,
                                    complex_->simplex(p - 1, inc.row).to_string() + " enters after its coface " +
                                        complex_->simplex(p, i).to_string());
        N_ = N.value_or(top);
        if (N_ < top)
            throw Error(ErrorKind::IndexOutOfRange, "N is smaller than the largest entry index");
        if (!breakpoints_.empty() && static_cast<int>(breakpoints_.size()) != N_ + 1)
            throw Error(ErrorKind::DimensionMismatch, "breakpoint count must be N+1");
    }

    const SimplicialComplex& complex() const { return *complex_; }
    const std::shared_ptr<const SimplicialComplex>& complex_ptr() const { return complex_; }
    int N() const noexcept { return N_; }
    int entry(int p, int index) const { return entry_.at(p).at(index); }
    const std::vector<std::vector<int>>& entries() const { return entry_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }

    /// K_t; empty for t < 0 and all of K for t >= N.
    Subcomplex subcomplex(int t) const
    {
        Subcomplex sub = Subcomplex::empty(*complex_);
        for (int p = 0; p <= complex_->max_dim(); ++p)
            for (int i = 0; i < complex_->size(p); ++i)
                if (entry_[p][i] <= t)
                    sub.insert(p, i);
        return sub;
    }

    /// Entry times scaled to [0,1]: entry / N (all zero when N = 0). Faces may share a
    /// value with their cofaces, so this is a plain value table rather than an
    /// AdmissibleFunction.
    std::vector<std::vector<double>> normalized_entries() const
    {
        std::vector<std::vector<double>> v(entry_.size());
        for (std::size_t p = 0; p < entry_.size(); ++p)
            for (int e : entry_[p])
                v[p].push_back(N_ > 0 ? static_cast<double>(e) / N_ : 0.0);
        return v;
    }

private:
    std::shared_ptr<const SimplicialComplex> complex_;
    std::vector<std::vector<int>> entry_;
    int N_ = 0;
    std::vector<double> breakpoints_;
};

/// Entry indices are the ranks of the distinct values of f; the values become breakpoints.
inline Filtration filtration_from_function(const AdmissibleFunction& f)
{
    const auto levels = f.distinct_values();
    const auto& K = f.complex();
    std::vector<std::vector<int>> entry(static_cast<std::size_t>(K.max_dim() + 1));
    for (int p = 0; p <= K.max_dim(); ++p)
        for (int i = 0; i < K.size(p); ++i) {
            auto it = std::lower_bound(levels.begin(), levels.end(), f.value(p, i));
            entry[p].push_back(static_cast<int>(it - levels.begin()));
        }
    const int N = levels.empty() ? 0 : static_cast<int>(levels.size()) - 1;
    return Filtration(f.complex_ptr(), std::move(entry), N, levels.empty() ? std::vector<double>{0.0} : levels);
}

struct Bar {
    int s = 0;
    std::optional<int> t;  // nullopt means ∞
    int multiplicity = 1;

    bool infinite() const noexcept { return !t.has_value(); }
    bool simple() const noexcept { return multiplicity == 1; }
    friend bool operator==(const Bar&, const Bar&) = default;
};

struct HarmonicBar {
    int p = 0;
    Bar bar;
    Subspace initial;
    std::optional<Subspace> terminal;
};

/// Piecewise-constant, right-continuous map t ↦ subspace with value values[i] on
/// [breakpoints[i], breakpoints[i+1]) and the zero subspace before breakpoints[0].
struct StepSubspaceFunction {
    std::vector<double> breakpoints;
    std::vector<Subspace> values;
    Eigen::Index ambient_dim = 0;

    Subspace at(double t) const
    {
        auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), t);
        if (it == breakpoints.begin())
            return Subspace::zero(ambient_dim);
        return values[static_cast<std::size_t>(it - breakpoints.begin() - 1)];
    }
};

/// Per-filtration cache of harmonic spaces, persistent harmonic spaces and the M-spaces
/// of the barcode construction, all in C_p(K) coordinates.
class HarmonicPersistence {
public:
    HarmonicPersistence(const Filtration& F, int p, double tol = default_tolerance())
        : F_(F), p_(p), tol_(tol), ctol_(std::max(1e-7, 1e3 * tol)), N_(F.N()), n_(F.complex().size(p))
    {
        const std::size_t steps = static_cast<std::size_t>(N_ + 1);
        H_.resize(steps);
        B_.resize(steps);
        parallel_for(steps, [&](std::size_t s) {
            Subcomplex sub = F_.subcomplex(static_cast<int>(s));
            H_[s] = harmonic_basis(F_.complex(), sub, p_, tol_).space;
            B_[s] = boundary_space(F_.complex(), sub, p_, tol_);
        });
        Hst_.resize(steps * steps);
        parallel_for(steps * steps, [&](std::size_t k) {
            const std::size_t s = k / steps, t = k % steps;
            if (s <= t)
                Hst_[k] = orthonormalize(project_out(B_[t], H_[s].basis()), tol_, RankRule::absolute);
        });
        M_.resize(steps * steps);
        parallel_for(steps * steps, [&](std::size_t k) {
            const int s = static_cast<int>(k / steps), t = static_cast<int>(k % steps);
            if (s <= t)
                M_[k] = preimage_under_projection(H_[s], H_[t], Hst(s - 1, t), tol_, ctol_);
        });
        for (int s = 0; s <= N_; ++s)
            for (int t = s + 1; t <= N_; ++t)
                if (!contained_in(M(s, t - 1), M(s, t), ctol_))
                    throw Error(ErrorKind::InvariantViolated,
                                "M-spaces are not nested at s=" + std::to_string(s) + ", t=" + std::to_string(t));
    }

    const Filtration& filtration() const { return F_; }
    int p() const noexcept { return p_; }
    int N() const noexcept { return N_; }
    double tol() const noexcept { return tol_; }

    /// H_p(K_s); zero for s < 0, H_p(K) for s > N.
    const Subspace& H(int s) const
    {
        if (s < 0)
            return zero();
        return H_[static_cast<std::size_t>(std::min(s, N_))];
    }

    /// B_p(K_s); zero for s < 0.
    const Subspace& B(int s) const
    {
        if (s < 0)
            return zero();
        return B_[static_cast<std::size_t>(std::min(s, N_))];
    }

    /// H^{s,t}: image of H_p(K_s) in H_p(K_t). Zero for s < 0.
    const Subspace& Hst(int s, int t) const
    {
        if (s < 0 && t >= 0 && t <= N_)
            return zero();
        check(s, t);
        return Hst_[index(s, t)];
    }

    /// M^{s,t} = {v ∈ H_s : proj_{H_t} v ∈ H^{s-1,t}}.
    const Subspace& M(int s, int t) const
    {
        check(s, t);
        return M_[index(s, t)];
    }

    /// N^{s,t} = M^{s,t-1}, zero for t = s.
    const Subspace& Nspace(int s, int t) const
    {
        check(s, t);
        return t == s ? zero() : M(s, t - 1);
    }

    /// P^{s,t} = M^{s,t} ∩ (N^{s,t})^⊥; t = nullopt gives P^{s,∞} = H_s ∩ (M^{s,N})^⊥.
    Subspace P(int s, std::optional<int> t) const
    {
        if (!t)
            return complement_within(M(s, N_), H(s), tol_, ctol_);
        check(s, *t);
        if (*t == s)
            return zero();
        return complement_within(M(s, *t - 1), M(s, *t), tol_, ctol_);
    }

    /// H^{s,t-1} ∩ (H^{s-1,t-1})^⊥.
    Subspace terminal(int s, int t) const
    {
        check(s, t);
        if (t <= s)
            throw Error(ErrorKind::IndexOutOfRange, "terminal subspace needs s < t");
        return complement_within(Hst(s - 1, t - 1), Hst(s, t - 1), tol_, ctol_);
    }

    std::vector<HarmonicBar> bars() const
    {
        std::vector<HarmonicBar> out;
        for (int s = 0; s <= N_; ++s) {
            for (int t = s + 1; t <= N_; ++t) {
                Subspace P0 = P(s, t);
                if (P0.dim() == 0)
                    continue;
                HarmonicBar hb{p_, Bar{s, t, static_cast<int>(P0.dim())}, std::move(P0), std::nullopt};
                if (hb.bar.simple())
                    hb.terminal = terminal(s, t);
                out.push_back(std::move(hb));
            }
            Subspace Pinf = P(s, std::nullopt);
            if (Pinf.dim() > 0)
                out.push_back({p_, Bar{s, std::nullopt, static_cast<int>(Pinf.dim())}, std::move(Pinf), std::nullopt});
        }
        return out;
    }

    /// μ^{s,t} for every pair, indexed [s][t] with t = N+1 standing for ∞.
    std::vector<std::vector<int>> multiplicities() const
    {
        std::vector<std::vector<int>> mu(static_cast<std::size_t>(N_ + 1), std::vector<int>(static_cast<std::size_t>(N_ + 2), 0));
        for (int s = 0; s <= N_; ++s) {
            for (int t = s + 1; t <= N_; ++t)
                mu[s][t] = static_cast<int>(P(s, t).dim());
            mu[s][N_ + 1] = static_cast<int>(P(s, std::nullopt).dim());
        }
        return mu;
    }

private:
    void check(int s, int t) const
    {
        if (s < 0 || t < s || t > N_)
            throw Error(ErrorKind::IndexOutOfRange,
                        "(s,t) = (" + std::to_string(s) + "," + std::to_string(t) + ") outside 0 <= s <= t <= " + std::to_string(N_));
    }
    std::size_t index(int s, int t) const { return static_cast<std::size_t>(s) * static_cast<std::size_t>(N_ + 1) + static_cast<std::size_t>(t); }
    const Subspace& zero() const
    {
        if (zero_.ambient_dim() != n_)
            zero_ = Subspace::zero(n_, tol_);
        return zero_;
    }

    Filtration F_;
    int p_;
    double tol_;
    double ctol_;
    int N_;
    Eigen::Index n_;
    std::vector<Subspace> H_, B_, Hst_, M_;
    mutable Subspace zero_;
};

/// H_p^{s,t}(F): image of H_p(K_s) under the projection onto B_p(K_t)^⊥.
inline Subspace persistent_harmonic_space(const Filtration& F, int p, int s, int t, double tol = default_tolerance())
{
    if (s < 0 || t < s || t > F.N())
        throw Error(ErrorKind::IndexOutOfRange,
                    "(s,t) = (" + std::to_string(s) + "," + std::to_string(t) + ") outside 0 <= s <= t <= " + std::to_string(F.N()));
    const Subspace Hs = harmonic_basis(F.complex(), F.subcomplex(s), p, tol).space;
    const Subspace Bt = boundary_space(F.complex(), F.subcomplex(t), p, tol);
    return orthonormalize(project_out(Bt, Hs.basis()), tol, RankRule::absolute);
}

inline std::vector<HarmonicBar> barcode(const Filtration& F, int p, double tol = default_tolerance())
{
    return HarmonicPersistence(F, p, tol).bars();
}

inline Subspace terminal_subspace(const HarmonicPersistence& hp, const Bar& bar)
{
    if (!bar.t)
        throw Error(ErrorKind::InfiniteBar, "terminal subspaces exist only for finite bars");
    if (!bar.simple())
        throw Error(ErrorKind::NotSimple, "terminal subspaces exist only for simple bars");
    return hp.terminal(bar.s, *bar.t);
}

inline Subspace terminal_subspace(const Filtration& F, int p, const Bar& bar, double tol = default_tolerance())
{
    if (!bar.t)
        throw Error(ErrorKind::InfiniteBar, "terminal subspaces exist only for finite bars");
    if (!bar.simple())
        throw Error(ErrorKind::NotSimple, "terminal subspaces exist only for simple bars");
    return terminal_subspace(HarmonicPersistence(F, p, tol), bar);
}

/// t ↦ H_p(K_{f <= t}) as a step function with breakpoints at the distinct values of f.
inline StepSubspaceFunction harmonic_filtration_function(const AdmissibleFunction& f, int p, double tol = default_tolerance())
{
    const Filtration F = filtration_from_function(f);
    StepSubspaceFunction out;
    out.ambient_dim = f.complex().size(p);
    out.breakpoints = f.distinct_values();
    out.values.resize(out.breakpoints.size());
    parallel_for(out.values.size(), [&](std::size_t k) {
        out.values[k] = harmonic_basis(F.complex(), F.subcomplex(static_cast<int>(k)), p, tol).space;
    });
    return out;
}

/// t ↦ H_p(K_t) for an index filtration, with breakpoints from the filtration
/// (or k/N when it has none).
inline StepSubspaceFunction harmonic_filtration_function(const Filtration& F, int p, double tol = default_tolerance())
{
    StepSubspaceFunction out;
    out.ambient_dim = F.complex().size(p);
    const int N = F.N();
    out.breakpoints = F.breakpoints();
    if (out.breakpoints.empty())
        for (int k = 0; k <= N; ++k)
            out.breakpoints.push_back(N > 0 ? static_cast<double>(k) / N : 0.0);
    out.values.resize(out.breakpoints.size());
    parallel_for(out.values.size(), [&](std::size_t k) {
        out.values[k] = harmonic_basis(F.complex(), F.subcomplex(static_cast<int>(k)), p, tol).space;
    });
    return out;
}

} // namespace hph
