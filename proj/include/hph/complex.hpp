// Finite simplicial complexes, subcomplex selectors, chains and boundary matrices.
//
// Simplices are stored with strictly increasing vertex lists, and each dimension is
// kept in lexicographic order. That order is the orthonormal basis of the chain space
// C_p(K) used everywhere else in the library.
#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "error.hpp"

namespace hph {

/// An oriented simplex [i_0, ..., i_p] with i_0 < ... < i_p.
class Simplex {
public:
    Simplex() = default;

    explicit Simplex(std::vector<int> vertices) : vertices_(std::move(vertices))
    {
        if (vertices_.empty())
            throw Error(ErrorKind::MalformedSimplex, "simplex has no vertices");
        if (vertices_.front() < 0)
            throw Error(ErrorKind::MalformedSimplex, "negative vertex in " + to_string());
        for (std::size_t i = 1; i < vertices_.size(); ++i)
            if (vertices_[i - 1] >= vertices_[i])
                throw Error(ErrorKind::MalformedSimplex, "vertices not strictly increasing in " + to_string());
    }

    Simplex(std::initializer_list<int> vertices) : Simplex(std::vector<int>(vertices)) {}

    int dim() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
    const std::vector<int>& vertices() const noexcept { return vertices_; }

    /// Face obtained by omitting the j-th vertex.
    Simplex facet(std::size_t j) const
    {
        Simplex face;
        face.vertices_.reserve(vertices_.size() - 1);
        for (std::size_t i = 0; i < vertices_.size(); ++i)
            if (i != j)
                face.vertices_.push_back(vertices_[i]);
        return face;
    }

    bool is_face_of(const Simplex& other) const
    {
        return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(), vertices_.end());
    }

    std::string to_string() const
    {
        std::string out = "[";
        for (std::size_t i = 0; i < vertices_.size(); ++i) {
            if (i)
                out += ",";
            out += std::to_string(vertices_[i]);
        }
        return out + "]";
    }

    friend auto operator<=>(const Simplex&, const Simplex&) = default;
    friend bool operator==(const Simplex&, const Simplex&) = default;

private:
    std::vector<int> vertices_;
};

/// Incidence of a facet inside a boundary column: row index in K^[p-1] and sign (-1)^j.
struct Incidence {
    int row;
    int sign;
};

class SimplicialComplex {
public:
    SimplicialComplex() = default;

    /// Number of p-simplices; zero for p outside [0, max_dim].
    int size(int p) const noexcept
    {
        if (p < 0 || p >= static_cast<int>(by_dim_.size()))
            return 0;
        return static_cast<int>(by_dim_[p].size());
    }

    int max_dim() const noexcept { return static_cast<int>(by_dim_.size()) - 1; }
    int total_size() const noexcept
    {
        int n = 0;
        for (const auto& level : by_dim_)
            n += static_cast<int>(level.size());
        return n;
    }
    bool empty() const noexcept { return by_dim_.empty(); }

    const std::vector<Simplex>& simplices(int p) const
    {
        static const std::vector<Simplex> none;
        if (p < 0 || p >= static_cast<int>(by_dim_.size()))
            return none;
        return by_dim_[p];
    }

    const Simplex& simplex(int p, int index) const { return by_dim_.at(p).at(index); }

    std::optional<int> index_of(const Simplex& s) const
    {
        int p = s.dim();
        if (p < 0 || p >= static_cast<int>(index_.size()))
            return std::nullopt;
        auto it = index_[p].find(s);
        if (it == index_[p].end())
            return std::nullopt;
        return it->second;
    }

    bool contains(const Simplex& s) const { return index_of(s).has_value(); }

    /// Facets of the index-th p-simplex with their boundary signs.
    const std::vector<Incidence>& facets(int p, int index) const { return facets_.at(p).at(index); }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) { return a.by_dim_ == b.by_dim_; }

private:
    friend SimplicialComplex build_complex(std::span<const Simplex> simplices);

    std::vector<std::vector<Simplex>> by_dim_;
    std::vector<std::map<Simplex, int>> index_;
    std::vector<std::vector<std::vector<Incidence>>> facets_;
};

/// Downward closure of the given simplices, canonically ordered.
inline SimplicialComplex build_complex(std::span<const Simplex> simplices)
{
    std::vector<std::vector<Simplex>> levels;
    std::vector<Simplex> pending(simplices.begin(), simplices.end());
    for (const auto& s : pending) {
        if (s.dim() < 0)
            throw Error(ErrorKind::MalformedSimplex, "empty simplex");
    }
    // Walk down one dimension at a time so each face is generated once per coface.
    int top = -1;
    for (const auto& s : pending)
        top = std::max(top, s.dim());
    levels.resize(static_cast<std::size_t>(top + 1));
    for (auto& s : pending)
        levels[s.dim()].push_back(std::move(s));
    for (int p = top; p >= 0; --p) {
        auto& level = levels[p];
        std::sort(level.begin(), level.end());
        level.erase(std::unique(level.begin(), level.end()), level.end());
        if (p == 0)
            break;
        for (const auto& s : level)
            for (std::size_t j = 0; j <= static_cast<std::size_t>(p); ++j)
                levels[p - 1].push_back(s.facet(j));
    }

    SimplicialComplex K;
    K.by_dim_ = std::move(levels);
    K.index_.resize(K.by_dim_.size());
    K.facets_.resize(K.by_dim_.size());
    for (std::size_t p = 0; p < K.by_dim_.size(); ++p) {
        const auto& level = K.by_dim_[p];
        for (std::size_t i = 0; i < level.size(); ++i)
            K.index_[p].emplace(level[i], static_cast<int>(i));
        K.facets_[p].resize(level.size());
        if (p == 0)
            continue;
        for (std::size_t i = 0; i < level.size(); ++i) {
            auto& column = K.facets_[p][i];
            for (std::size_t j = 0; j <= p; ++j) {
                int row = K.index_[p - 1].at(level[i].facet(j));
                column.push_back({row, (j % 2 == 0) ? 1 : -1});
            }
        }
    }
    return K;
}

inline SimplicialComplex build_complex(std::initializer_list<Simplex> simplices)
{
    return build_complex(std::span<const Simplex>(simplices.begin(), simplices.size()));
}

inline SimplicialComplex build_complex(const std::vector<Simplex>& simplices)
{
    return build_complex(std::span<const Simplex>(simplices));
}

/// Membership mask selecting a subcomplex of a fixed ambient complex.
class Subcomplex {
public:
    Subcomplex() = default;

    static Subcomplex empty(const SimplicialComplex& K)
    {
        Subcomplex sub;
        sub.member_.resize(static_cast<std::size_t>(K.max_dim() + 1));
        for (int p = 0; p <= K.max_dim(); ++p)
            sub.member_[p].assign(static_cast<std::size_t>(K.size(p)), 0);
        return sub;
    }

    static Subcomplex full(const SimplicialComplex& K)
    {
        Subcomplex sub = empty(K);
        for (auto& level : sub.member_)
            std::fill(level.begin(), level.end(), 1);
        return sub;
    }

    /// Selects exactly the listed simplices; no closure is taken.
    static Subcomplex of(const SimplicialComplex& K, std::span<const Simplex> simplices)
    {
        Subcomplex sub = empty(K);
        for (const auto& s : simplices) {
            auto idx = K.index_of(s);
            if (!idx)
                throw Error(ErrorKind::SimplexNotInAmbient, s.to_string() + " is not in the ambient complex");
            sub.member_[s.dim()][*idx] = 1;
        }
        return sub;
    }

    static Subcomplex of(const SimplicialComplex& K, std::initializer_list<Simplex> simplices)
    {
        return of(K, std::span<const Simplex>(simplices.begin(), simplices.size()));
    }

    bool contains(int p, int index) const
    {
        if (p < 0 || p >= static_cast<int>(member_.size()))
            return false;
        return member_[p][index] != 0;
    }

    void insert(int p, int index) { member_.at(p).at(index) = 1; }

    int count(int p) const
    {
        if (p < 0 || p >= static_cast<int>(member_.size()))
            return 0;
        return static_cast<int>(std::count(member_[p].begin(), member_[p].end(), 1));
    }

    /// Ambient indices of the selected p-simplices, ascending. This is the local basis order.
    std::vector<int> indices(int p) const
    {
        std::vector<int> out;
        if (p < 0 || p >= static_cast<int>(member_.size()))
            return out;
        for (std::size_t i = 0; i < member_[p].size(); ++i)
            if (member_[p][i])
                out.push_back(static_cast<int>(i));
        return out;
    }

    bool is_subset_of(const Subcomplex& other) const
    {
        for (std::size_t p = 0; p < member_.size(); ++p)
            for (std::size_t i = 0; i < member_[p].size(); ++i)
                if (member_[p][i] && !other.contains(static_cast<int>(p), static_cast<int>(i)))
                    return false;
        return true;
    }

    std::size_t levels() const noexcept { return member_.size(); }

    friend bool operator==(const Subcomplex&, const Subcomplex&) = default;

private:
    std::vector<std::vector<char>> member_;
};

/// Throws InvalidSubcomplex unless sub matches K's shape and is closed under faces.
inline void validate_subcomplex(const SimplicialComplex& K, const Subcomplex& sub)
{
    if (sub.levels() != static_cast<std::size_t>(K.max_dim() + 1))
        throw Error(ErrorKind::InvalidSubcomplex, "selector shape does not match the ambient complex");
    for (int p = 1; p <= K.max_dim(); ++p)
        for (int i : sub.indices(p))
            for (const auto& inc : K.facets(p, i))
                if (!sub.contains(p - 1, inc.row))
                    throw Error(ErrorKind::InvalidSubcomplex,
                                K.simplex(p, i).to_string() + " is selected but its face " +
                                    K.simplex(p - 1, inc.row).to_string() + " is not");
}

/// Real chain in C_p of some complex; coefficients follow that complex's basis order.
struct Chain {
    int dim = 0;
    Eigen::VectorXd coeffs;
};

struct BoundaryMatrix {
    int p = 0;
    Eigen::MatrixXi entries;  // rows: (p-1)-simplices, columns: p-simplices

    Eigen::MatrixXd real() const { return entries.cast<double>(); }
};

/// Matrix of the p-th boundary map in the standard simplex bases.
inline BoundaryMatrix boundary_matrix(const SimplicialComplex& K, int p)
{
    BoundaryMatrix M;
    M.p = p;
    M.entries = Eigen::MatrixXi::Zero(p >= 1 ? K.size(p - 1) : 0, K.size(p));
    if (p >= 1)
        for (int j = 0; j < K.size(p); ++j)
            for (const auto& inc : K.facets(p, j))
                M.entries(inc.row, j) = inc.sign;
    return M;
}

/// Boundary matrix of the subcomplex in its own (local) bases.
inline Eigen::MatrixXi local_boundary_matrix(const SimplicialComplex& K, const Subcomplex& sub, int p)
{
    const auto cols = sub.indices(p);
    const auto rows = p >= 1 ? sub.indices(p - 1) : std::vector<int>{};
    Eigen::MatrixXi M = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
    if (p < 1)
        return M;
    std::vector<int> local_row(static_cast<std::size_t>(K.size(p - 1)), -1);
    for (std::size_t r = 0; r < rows.size(); ++r)
        local_row[rows[r]] = static_cast<int>(r);
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (const auto& inc : K.facets(p, cols[c])) {
            int r = local_row[inc.row];
            if (r < 0)
                throw Error(ErrorKind::InvalidSubcomplex, "face missing from subcomplex");
            M(r, static_cast<Eigen::Index>(c)) = inc.sign;
        }
    return M;
}

/// Zero-pads local coordinates (rows follow sub.indices(p)) into C_p(K).
inline Eigen::MatrixXd pad_to_ambient(const SimplicialComplex& K, const Subcomplex& sub, int p, const Eigen::MatrixXd& local)
{
    const auto idx = sub.indices(p);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(K.size(p), local.cols());
    for (std::size_t r = 0; r < idx.size(); ++r)
        out.row(idx[r]) = local.row(static_cast<Eigen::Index>(r));
    return out;
}

/// Embeds a chain of `source` into C_p(ambient), matching simplices by vertex list.
inline Chain restrict_chain(const SimplicialComplex& source, const Chain& z, const SimplicialComplex& ambient)
{
    if (z.coeffs.size() != source.size(z.dim))
        throw Error(ErrorKind::DimensionMismatch, "chain length does not match the source complex");
    Chain out{z.dim, Eigen::VectorXd::Zero(ambient.size(z.dim))};
    for (int i = 0; i < source.size(z.dim); ++i) {
        const auto& s = source.simplex(z.dim, i);
        auto idx = ambient.index_of(s);
        if (!idx)
            throw Error(ErrorKind::SimplexNotInAmbient, s.to_string() + " is not in the ambient complex");
        out.coeffs[*idx] = z.coeffs[i];
    }
    return out;
}

} // namespace hph
