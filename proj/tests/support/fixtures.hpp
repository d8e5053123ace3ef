// Shared fixtures and random instance generators for the test programs.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <vector>

#include "hph/hph.hpp"

namespace fixtures {

using namespace hph;

// Letters of the introductory example.
inline const Simplex a{0, 1}, b{1, 2}, c{0, 2}, d{0, 3}, e{2, 3}, tri{0, 1, 2};

inline std::shared_ptr<const SimplicialComplex> example12_complex()
{
    return std::make_shared<const SimplicialComplex>(build_complex({tri, d, e}));
}

inline Filtration example12()
{
    auto K = example12_complex();
    const std::map<Simplex, int> when{{Simplex{0}, 0}, {Simplex{1}, 1}, {Simplex{2}, 2}, {a, 3}, {b, 3}, {c, 3},
                                      {Simplex{3}, 4}, {tri, 5}, {d, 6}, {e, 6}};
    std::vector<std::vector<int>> entry(3);
    for (int p = 0; p <= 2; ++p)
        for (const auto& s : K->simplices(p))
            entry[p].push_back(when.at(s));
    return Filtration(K, entry);
}

/// Chain of K_p with the given letter coefficients.
inline Eigen::VectorXd chain(const SimplicialComplex& K, const std::vector<std::pair<Simplex, double>>& terms)
{
    int p = terms.front().first.dim();
    Eigen::VectorXd z = Eigen::VectorXd::Zero(K.size(p));
    for (const auto& [s, v] : terms)
        z(*K.index_of(s)) += v;
    return z;
}

inline Subspace span_of(const Eigen::VectorXd& v) { return orthonormalize(v); }

/// Random complex of dimension <= 2 with at most max_simplices simplices.
inline std::shared_ptr<const SimplicialComplex> random_complex(std::mt19937_64& rng, int max_simplices, int max_vertices = 9)
{
    std::uniform_int_distribution<int> nv(3, max_vertices);
    const int V = nv(rng);
    std::vector<Simplex> pool;
    std::vector<Simplex> tris, edges;
    for (int i = 0; i < V; ++i)
        for (int j = i + 1; j < V; ++j) {
            edges.push_back(Simplex{i, j});
            for (int k = j + 1; k < V; ++k)
                tris.push_back(Simplex{i, j, k});
        }
    std::shuffle(tris.begin(), tris.end(), rng);
    std::shuffle(edges.begin(), edges.end(), rng);
    std::uniform_int_distribution<int> ntri(0, std::min<int>(static_cast<int>(tris.size()), std::max(6, V)));
    std::uniform_int_distribution<int> nedge(V - 1, std::min<int>(static_cast<int>(edges.size()), 2 * V + 2));
    const int T = ntri(rng), E = nedge(rng);
    for (int i = 0; i < T; ++i)
        pool.push_back(tris[i]);
    for (int i = 0; i < E; ++i)
        pool.push_back(edges[i]);
    for (int v = 0; v < V; ++v)
        pool.push_back(Simplex{v});
    // Drop generators until the closure fits the budget.
    for (;;) {
        auto K = build_complex(pool);
        if (K.total_size() <= max_simplices)
            return std::make_shared<const SimplicialComplex>(std::move(K));
        auto it = std::find_if(pool.begin(), pool.end(), [](const Simplex& s) { return s.dim() > 0; });
        pool.erase(it);
    }
}

/// Random order in which every face precedes its cofaces: position k of simplex (p,i).
inline std::vector<std::vector<int>> random_linear_extension(const SimplicialComplex& K, std::mt19937_64& rng)
{
    std::vector<std::vector<int>> pos(static_cast<std::size_t>(K.max_dim() + 1));
    std::vector<std::vector<int>> missing(pos.size());
    for (int p = 0; p <= K.max_dim(); ++p) {
        pos[p].assign(static_cast<std::size_t>(K.size(p)), -1);
        missing[p].assign(static_cast<std::size_t>(K.size(p)), p == 0 ? 0 : p + 1);
    }
    // cofaces lookup
    std::vector<std::vector<std::vector<int>>> cofaces(pos.size());
    for (int p = 0; p <= K.max_dim(); ++p)
        cofaces[p].resize(static_cast<std::size_t>(K.size(p)));
    for (int p = 1; p <= K.max_dim(); ++p)
        for (int i = 0; i < K.size(p); ++i)
            for (const auto& inc : K.facets(p, i))
                cofaces[p - 1][inc.row].push_back(i);
    std::vector<std::pair<int, int>> ready;
    for (int i = 0; i < K.size(0); ++i)
        ready.emplace_back(0, i);
    int k = 0;
    while (!ready.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, ready.size() - 1);
        const std::size_t r = pick(rng);
        const auto [p, i] = ready[r];
        ready.erase(ready.begin() + static_cast<std::ptrdiff_t>(r));
        pos[p][i] = k++;
        if (p + 1 <= K.max_dim())
            for (int j : cofaces[p][i])
                if (--missing[p + 1][j] == 0)
                    ready.emplace_back(p + 1, j);
    }
    return pos;
}

/// Simplex-wise index filtration from a random linear extension.
inline Filtration random_simplexwise(std::shared_ptr<const SimplicialComplex> K, std::mt19937_64& rng)
{
    return Filtration(K, random_linear_extension(*K, rng));
}

/// Index filtration with at most `levels` steps; faces may share steps with cofaces.
inline Filtration random_coarse(std::shared_ptr<const SimplicialComplex> K, std::mt19937_64& rng, int levels)
{
    std::uniform_int_distribution<int> lv(0, levels - 1);
    std::vector<std::vector<int>> entry(static_cast<std::size_t>(K->max_dim() + 1));
    for (int p = 0; p <= K->max_dim(); ++p)
        for (int i = 0; i < K->size(p); ++i) {
            int e = lv(rng);
            if (p > 0)
                for (const auto& inc : K->facets(p, i))
                    e = std::max(e, entry[p - 1][inc.row]);
            entry[p].push_back(e);
        }
    return Filtration(K, entry);
}

/// Admissible function with distinct values in [0,1] following a random linear extension.
inline AdmissibleFunction random_admissible(std::shared_ptr<const SimplicialComplex> K, std::mt19937_64& rng)
{
    const auto pos = random_linear_extension(*K, rng);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> vals(static_cast<std::size_t>(K->total_size()));
    for (auto& v : vals)
        v = u(rng);
    std::sort(vals.begin(), vals.end());
    std::vector<std::vector<double>> f(pos.size());
    for (std::size_t p = 0; p < pos.size(); ++p)
        for (int k : pos[p])
            f[p].push_back(vals[static_cast<std::size_t>(k)]);
    return AdmissibleFunction(K, f);
}

/// Small perturbation of f, repaired to stay admissible and inside [0,1].
inline AdmissibleFunction perturb(const AdmissibleFunction& f, std::mt19937_64& rng, double delta)
{
    const auto& K = f.complex();
    std::uniform_real_distribution<double> u(-delta, delta);
    std::vector<std::vector<double>> g = f.values();
    for (int p = 0; p <= K.max_dim(); ++p)
        for (int i = 0; i < K.size(p); ++i) {
            double v = std::clamp(g[p][i] + u(rng), 0.0, 1.0);
            if (p > 0)
                for (const auto& inc : K.facets(p, i))
                    v = std::max(v, g[p - 1][inc.row] + 1e-3);
            g[p][i] = v;
        }
    double top = 0.0;
    for (const auto& level : g)
        for (double v : level)
            top = std::max(top, v);
    if (top > 1.0)
        for (auto& level : g)
            for (double& v : level)
                v /= top;
    return AdmissibleFunction(f.complex_ptr(), g);
}

/// Same function values laid on a dyadic grid of step 1/denominator.
inline AdmissibleFunction random_dyadic(std::shared_ptr<const SimplicialComplex> K, std::mt19937_64& rng, int denominator)
{
    const auto pos = random_linear_extension(*K, rng);
    const int n = K->total_size();
    // n distinct grid points out of 1..denominator-1, sorted.
    std::vector<int> grid(static_cast<std::size_t>(denominator - 1));
    for (int i = 0; i < denominator - 1; ++i)
        grid[i] = i + 1;
    std::shuffle(grid.begin(), grid.end(), rng);
    grid.resize(static_cast<std::size_t>(n));
    std::sort(grid.begin(), grid.end());
    std::vector<std::vector<double>> f(pos.size());
    for (std::size_t p = 0; p < pos.size(); ++p)
        for (int k : pos[p])
            f[p].push_back(static_cast<double>(grid[static_cast<std::size_t>(k)]) / denominator);
    return AdmissibleFunction(K, f);
}

/// Integer matrix with entries in [-2,2].
inline Eigen::MatrixXi random_integer_matrix(std::mt19937_64& rng, int rows, int cols)
{
    std::uniform_int_distribution<int> v(-2, 2);
    Eigen::MatrixXi M(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            M(i, j) = v(rng);
    return M;
}

inline Eigen::MatrixXd random_gaussian(std::mt19937_64& rng, int rows, int cols)
{
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd M(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            M(i, j) = g(rng);
    return M;
}

inline Subspace random_subspace(std::mt19937_64& rng, int n, int d)
{
    return orthonormalize(random_gaussian(rng, n, d));
}

} // namespace fixtures
