// Seminorms, distances between harmonic filtration functions, the three stability
// inequalities as measurable reports, and the ladder convergence example.
#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "persistence.hpp"

namespace hph {

/// One term of a distance: a cell [s0,s1) (x [t0,t1) for double integrals) or an (i,j) pair.
struct StabilityTerm {
    double s0 = 0, s1 = 0, t0 = 0, t1 = 0;
    double weight = 0;
    double distance = 0;
};

struct DistanceResult {
    double value = 0;
    std::vector<StabilityTerm> terms;
};

struct StabilityReport {
    std::string theorem;
    double lhs = 0;
    double rhs = 0;
    double slack = 0;
    std::optional<double> intermediate;  // chained bound, when the inequality has one
    std::vector<StabilityTerm> detail;
};

/// (Σ_{σ ∈ K^[p]} |f(σ) − g(σ)|^ℓ)^{1/ℓ} on raw value tables.
inline double seminorm(const std::vector<std::vector<double>>& f, const std::vector<std::vector<double>>& g, int p, double ell)
{
    if (!(ell > 0))
        throw Error(ErrorKind::IndexOutOfRange, "ell must be positive");
    if (p < 0)
        return 0.0;
    const std::size_t q = static_cast<std::size_t>(p);
    const bool has_f = q < f.size(), has_g = q < g.size();
    if (has_f != has_g || (has_f && f[q].size() != g[q].size()))
        throw Error(ErrorKind::ComplexMismatch, "value tables have different shapes");
    if (!has_f)
        return 0.0;
    double sum = 0.0;
    for (std::size_t i = 0; i < f[q].size(); ++i)
        sum += std::pow(std::abs(f[q][i] - g[q][i]), ell);
    return std::pow(sum, 1.0 / ell);
}

inline double seminorm(const AdmissibleFunction& f, const AdmissibleFunction& g, int p, double ell)
{
    if (!(f.complex() == g.complex()))
        throw Error(ErrorKind::ComplexMismatch, "functions live on different complexes");
    return seminorm(f.values(), g.values(), p, ell);
}

namespace detail {

/// 0, 1 and every breakpoint inside (0,1), sorted.
inline std::vector<double> merged_partition(const StepSubspaceFunction& F, const StepSubspaceFunction& G)
{
    std::vector<double> u{0.0, 1.0};
    for (const auto* S : {&F, &G})
        for (double b : S->breakpoints)
            if (b > 0.0 && b < 1.0)
                u.push_back(b);
    std::sort(u.begin(), u.end());
    u.erase(std::unique(u.begin(), u.end()), u.end());
    return u;
}

/// Index of the step active at t, or -1 before the first breakpoint.
inline int step_index(const StepSubspaceFunction& S, double t)
{
    auto it = std::upper_bound(S.breakpoints.begin(), S.breakpoints.end(), t);
    return static_cast<int>(it - S.breakpoints.begin()) - 1;
}

inline const Subspace& step_value(const StepSubspaceFunction& S, int k, const Subspace& zero)
{
    return k < 0 ? zero : S.values[static_cast<std::size_t>(k)];
}

/// proj_{S(b)} S(a) for every pair a <= b of the given step indices, computed once.
class ProjectedSteps {
public:
    ProjectedSteps(const StepSubspaceFunction& S, std::vector<int> steps, double tol)
        : steps_(std::move(steps)), zero_(Subspace::zero(S.ambient_dim))
    {
        std::sort(steps_.begin(), steps_.end());
        steps_.erase(std::unique(steps_.begin(), steps_.end()), steps_.end());
        const std::size_t k = steps_.size();
        table_.resize(k * k);
        parallel_for(k * k, [&](std::size_t idx) {
            const std::size_t i = idx / k, j = idx % k;
            if (i > j)
                return;
            const Subspace& from = step_value(S, steps_[i], zero_);
            const Subspace& to = step_value(S, steps_[j], zero_);
            table_[idx] = i == j ? from : orthonormalize(project(to, from.basis()), tol, RankRule::absolute);
        });
    }

    const Subspace& get(int a, int b) const
    {
        const std::size_t k = steps_.size();
        return table_[slot(a) * k + slot(b)];
    }

private:
    std::size_t slot(int a) const
    {
        return static_cast<std::size_t>(std::lower_bound(steps_.begin(), steps_.end(), a) - steps_.begin());
    }

    std::vector<int> steps_;
    Subspace zero_;
    std::vector<Subspace> table_;
};

inline void require_same_ambient(const StepSubspaceFunction& F, const StepSubspaceFunction& G)
{
    if (F.ambient_dim != G.ambient_dim)
        throw Error(ErrorKind::DimensionMismatch, "step functions live in different chain spaces");
}

} // namespace detail

/// (∫_0^1 d(F(t), G(t))^ℓ dt)^{1/ℓ}, summed exactly over the merged partition.
inline DistanceResult dist_filtration_functions_detail(const StepSubspaceFunction& F, const StepSubspaceFunction& G, double ell)
{
    detail::require_same_ambient(F, G);
    const auto u = detail::merged_partition(F, G);
    const Subspace zero = Subspace::zero(F.ambient_dim);
    DistanceResult out;
    out.terms.resize(u.size() - 1);
    parallel_for(out.terms.size(), [&](std::size_t i) {
        const double a = u[i], b = u[i + 1];
        const Subspace& x = detail::step_value(F, detail::step_index(F, a), zero);
        const Subspace& y = detail::step_value(G, detail::step_index(G, a), zero);
        out.terms[i] = {a, b, a, b, b - a, grassmann_distance(x, y)};
    });
    double sum = 0.0;
    for (const auto& term : out.terms)
        sum += term.weight * std::pow(term.distance, ell);
    out.value = std::pow(sum, 1.0 / ell);
    return out;
}

inline double dist_filtration_functions(const StepSubspaceFunction& F, const StepSubspaceFunction& G, double ell)
{
    return dist_filtration_functions_detail(F, G, ell).value;
}

/// (∫∫_{0<=s<=t<=1} d(F^{s,t}, G^{s,t})^ℓ ds dt)^{1/ℓ} with F^{s,t} = proj_{F(t)} F(s).
inline DistanceResult dist_persistent_detail(const StepSubspaceFunction& F, const StepSubspaceFunction& G, double ell,
                                             double tol = default_tolerance())
{
    detail::require_same_ambient(F, G);
    const auto u = detail::merged_partition(F, G);
    const std::size_t m = u.size() - 1;
    std::vector<int> fi(m), gi(m);
    for (std::size_t i = 0; i < m; ++i) {
        fi[i] = detail::step_index(F, u[i]);
        gi[i] = detail::step_index(G, u[i]);
    }
    const detail::ProjectedSteps PF(F, fi, tol), PG(G, gi, tol);
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j)
            cells.emplace_back(i, j);
    DistanceResult out;
    out.terms.resize(cells.size());
    parallel_for(cells.size(), [&](std::size_t k) {
        const auto [i, j] = cells[k];
        const double li = u[i + 1] - u[i], lj = u[j + 1] - u[j];
        const double weight = i == j ? li * li / 2.0 : li * lj;
        const double d = grassmann_distance(PF.get(fi[i], fi[j]), PG.get(gi[i], gi[j]));
        out.terms[k] = {u[i], u[i + 1], u[j], u[j + 1], weight, d};
    });
    double sum = 0.0;
    for (const auto& term : out.terms)
        sum += term.weight * std::pow(term.distance, ell);
    out.value = std::pow(sum, 1.0 / ell);
    return out;
}

inline double dist_persistent(const StepSubspaceFunction& F, const StepSubspaceFunction& G, double ell,
                              double tol = default_tolerance())
{
    return dist_persistent_detail(F, G, ell, tol).value;
}

namespace detail {
inline void require_unit_range(const AdmissibleFunction& f)
{
    for (const auto& level : f.values())
        for (double v : level)
            if (v < 0.0 || v > 1.0)
                throw Error(ErrorKind::NotAdmissible, "value " + std::to_string(v) + " outside [0,1]");
}

inline StabilityReport finish(std::string name, double lhs, double rhs, std::vector<StabilityTerm> detail)
{
    StabilityReport r;
    r.theorem = std::move(name);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.detail = std::move(detail);
    return r;
}
} // namespace detail

/// dist_{K,p,2}(H_p(K,f), H_p(K,g)) against (π/2)(‖f−g‖₁^{(p)} + ‖f−g‖₁^{(p+1)})^{1/2}.
inline StabilityReport check_theorem_stable(const AdmissibleFunction& f, const AdmissibleFunction& g, int p,
                                            double tol = default_tolerance())
{
    if (!(f.complex() == g.complex()))
        throw Error(ErrorKind::ComplexMismatch, "functions live on different complexes");
    detail::require_unit_range(f);
    detail::require_unit_range(g);
    const auto F = harmonic_filtration_function(f, p, tol);
    const auto G = harmonic_filtration_function(g, p, tol);
    auto d = dist_filtration_functions_detail(F, G, 2.0);
    const double norms = seminorm(f, g, p, 1.0) + seminorm(f, g, p + 1, 1.0);
    return detail::finish("stable", d.value, std::numbers::pi / 2.0 * std::sqrt(norms), std::move(d.terms));
}

/// dist^{persistent}_{K,p,1} against π(‖f−g‖₁^{(p)} + ‖f−g‖₁^{(p+1)}).
inline StabilityReport check_theorem_stable_persistent(const AdmissibleFunction& f, const AdmissibleFunction& g, int p,
                                                       double tol = default_tolerance())
{
    if (!(f.complex() == g.complex()))
        throw Error(ErrorKind::ComplexMismatch, "functions live on different complexes");
    detail::require_unit_range(f);
    detail::require_unit_range(g);
    const auto F = harmonic_filtration_function(f, p, tol);
    const auto G = harmonic_filtration_function(g, p, tol);
    auto d = dist_persistent_detail(F, G, 1.0, tol);
    const double norms = seminorm(f, g, p, 1.0) + seminorm(f, g, p + 1, 1.0);
    return detail::finish("persistent", d.value, std::numbers::pi * norms, std::move(d.terms));
}

/// Step function t ↦ H_p(K_{⌊tN⌋}) with breakpoints k/N, ignoring any stored breakpoints.
inline StepSubspaceFunction normalized_step_function(const Filtration& F, int p, double tol = default_tolerance())
{
    Filtration G(F.complex_ptr(), F.entries(), F.N());
    return harmonic_filtration_function(G, p, tol);
}

/// Averaged distance between terminal subspaces, the chained 2·dist^{persistent} bound and
/// (π³/2)(‖f−g‖₁^{(p)} + ‖f−g‖₁^{(p+1)}) with f, g the entry times divided by N.
inline StabilityReport check_theorem_barcode(const Filtration& F, const Filtration& G, int p,
                                             double tol = default_tolerance())
{
    if (!(F.complex() == G.complex()))
        throw Error(ErrorKind::ComplexMismatch, "filtrations live on different complexes");
    if (F.N() != G.N())
        throw Error(ErrorKind::ComplexMismatch, "filtrations have different index lengths");
    const int N = F.N();
    const HarmonicPersistence hf(F, p, tol), hg(G, p, tol);
    const auto mf = hf.multiplicities(), mg = hg.multiplicities();
    for (int i = 0; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j)
            if (mf[i][j] > 1 || mg[i][j] > 1)
                throw Error(ErrorKind::HypothesisViolated,
                            "bar (" + std::to_string(i) + "," + std::to_string(j) + ") has multiplicity above one");

    const Eigen::Index n = F.complex().size(p);
    auto terminal_or_zero = [&](const HarmonicPersistence& h, const std::vector<std::vector<int>>& mu, int i, int j) {
        return mu[i][j] == 1 ? h.terminal(i, j) : Subspace::zero(n, tol);
    };
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i <= N; ++i)
        for (int j = i + 1; j <= N; ++j)
            pairs.emplace_back(i, j);
    const double count = static_cast<double>(N) * (N + 1) / 2.0;
    std::vector<StabilityTerm> terms(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t k) {
        const auto [i, j] = pairs[k];
        const double d = grassmann_distance(terminal_or_zero(hf, mf, i, j), terminal_or_zero(hg, mg, i, j));
        terms[k] = {double(i), double(i), double(j), double(j), 1.0 / count, d};
    });
    double lhs = 0.0;
    for (const auto& t : terms)
        lhs += t.weight * t.distance;

    const auto fv = F.normalized_entries(), gv = G.normalized_entries();
    const double norms = seminorm(fv, gv, p, 1.0) + seminorm(fv, gv, p + 1, 1.0);
    const double pi = std::numbers::pi;
    auto report = detail::finish("barcode", lhs, pi * pi * pi / 2.0 * norms, std::move(terms));
    report.intermediate = 2.0 * dist_persistent(normalized_step_function(F, p, tol), normalized_step_function(G, p, tol), 1.0, tol);
    return report;
}

/// Ladder K_{m,n}: cycle v_0 ... v_{2n-1} v_0 plus the rung [v_m, v_{2n-m}].
struct LadderResult {
    int n = 0;
    int m = 0;
    int m_ref = 0;
    double cos_measured = 1.0;
    std::optional<double> cos_closed_form;  // absent when m == m_ref
    std::vector<double> angles;
};

/// Closed form for the reference rung at n/2 and α = m/n.
inline double ladder_closed_form(double n, double alpha)
{
    const double a = 2.0 * alpha * n * (1 - alpha) * (1 - alpha) + 2.0 * n * (1 - alpha) * alpha * alpha + 1.0;
    return alpha * n / (std::sqrt(a) * std::sqrt(n / 2.0 + 1.0));
}

/// Same angle for arbitrary rungs: k_i outer edges in each rung cycle, 2n outer edges in total.
inline double ladder_exact_cosine(int n, int m1, int m2)
{
    double k1 = 2.0 * std::min(m1, m2), k2 = 2.0 * std::max(m1, m2), N = 2.0 * n;
    return k1 * (1 - k2 / N) / std::sqrt((k1 * (1 - k1 / N) + 1) * (k2 * (1 - k2 / N) + 1));
}

inline LadderResult ladder_angle(int n, int m, double tol = default_tolerance())
{
    if (n < 2 || m < 1 || m >= n)
        throw Error(ErrorKind::InvalidLadder, "need n >= 2 and 1 <= m < n, got n=" + std::to_string(n) + ", m=" + std::to_string(m));
    LadderResult r;
    r.n = n;
    r.m = m;
    r.m_ref = n / 2;
    std::vector<Simplex> simplices;
    const int V = 2 * n;
    for (int i = 0; i + 1 < V; ++i)
        simplices.push_back(Simplex{i, i + 1});
    simplices.push_back(Simplex{0, V - 1});
    const Simplex rung{m, V - m}, rung_ref{r.m_ref, V - r.m_ref};
    simplices.push_back(rung);
    simplices.push_back(rung_ref);
    const auto K = build_complex(simplices);

    auto ladder = [&](const Simplex& own, const Simplex& other) {
        Subcomplex sub = Subcomplex::full(K);
        if (own != other) {
            std::vector<Simplex> keep;
            for (int p = 0; p <= 1; ++p)
                for (const auto& s : K.simplices(p))
                    if (s != other)
                        keep.push_back(s);
            sub = Subcomplex::of(K, keep);
        }
        return harmonic_basis(K, sub, 1, tol).space;
    };
    const Subspace A = ladder(rung, rung_ref);
    const Subspace B = ladder(rung_ref, rung);
    r.angles = principal_angles(A, B).angles;
    r.cos_measured = std::cos(r.angles.empty() ? 0.0 : r.angles.back());
    if (m != r.m_ref)
        // The closed form assumes an even n and the rung left of the reference one.
        r.cos_closed_form = (n % 2 == 0 && m < r.m_ref) ? ladder_closed_form(n, static_cast<double>(m) / n)
                                                        : ladder_exact_cosine(n, m, r.m_ref);
    return r;
}

} // namespace hph
