// Exact rational reference computations for small instances. Only dimensions are
// certified here; orthonormal coordinates are irrational in general.
#pragma once

#include <optional>
#include <vector>

#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Core>

#include "complex.hpp"
#include "persistence.hpp"

namespace hph::oracle {

using Rational = boost::multiprecision::mpq_rational;

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    template <typename Derived>
    static RationalMatrix from_integers(const Eigen::MatrixBase<Derived>& M)
    {
        RationalMatrix R(static_cast<std::size_t>(M.rows()), static_cast<std::size_t>(M.cols()));
        for (Eigen::Index i = 0; i < M.rows(); ++i)
            for (Eigen::Index j = 0; j < M.cols(); ++j)
                R(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Rational(static_cast<long>(M(i, j)));
        return R;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    RationalMatrix transpose() const
    {
        RationalMatrix T(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                T(j, i) = (*this)(i, j);
        return T;
    }

    friend RationalMatrix operator*(const RationalMatrix& A, const RationalMatrix& B)
    {
        if (A.cols_ != B.rows_)
            throw Error(ErrorKind::DimensionMismatch, "rational product shape mismatch");
        RationalMatrix C(A.rows_, B.cols_);
        for (std::size_t i = 0; i < A.rows_; ++i)
            for (std::size_t k = 0; k < A.cols_; ++k) {
                const Rational& a = A(i, k);
                if (a == 0)
                    continue;
                for (std::size_t j = 0; j < B.cols_; ++j)
                    C(i, j) += a * B(k, j);
            }
        return C;
    }

    /// [A B] side by side.
    static RationalMatrix hcat(const RationalMatrix& A, const RationalMatrix& B)
    {
        if (A.rows_ != B.rows_)
            throw Error(ErrorKind::DimensionMismatch, "hcat row mismatch");
        RationalMatrix C(A.rows_, A.cols_ + B.cols_);
        for (std::size_t i = 0; i < A.rows_; ++i) {
            for (std::size_t j = 0; j < A.cols_; ++j)
                C(i, j) = A(i, j);
            for (std::size_t j = 0; j < B.cols_; ++j)
                C(i, A.cols_ + j) = B(i, j);
        }
        return C;
    }

    RationalMatrix select_rows(const std::vector<int>& rows) const
    {
        RationalMatrix R(rows.size(), cols_);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t j = 0; j < cols_; ++j)
                R(r, j) = (*this)(static_cast<std::size_t>(rows[r]), j);
        return R;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    std::vector<std::size_t> rref()
    {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t pivot = row;
            while (pivot < rows_ && (*this)(pivot, col) == 0)
                ++pivot;
            if (pivot == rows_)
                continue;
            if (pivot != row)
                for (std::size_t j = 0; j < cols_; ++j)
                    std::swap((*this)(row, j), (*this)(pivot, j));
            const Rational inv = 1 / (*this)(row, col);
            for (std::size_t j = col; j < cols_; ++j)
                (*this)(row, j) *= inv;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == row || (*this)(r, col) == 0)
                    continue;
                const Rational factor = (*this)(r, col);
                for (std::size_t j = col; j < cols_; ++j)
                    (*this)(r, j) -= factor * (*this)(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    /// Rank by forward elimination. Row updates only touch the pivot row's nonzeros,
    /// which keeps sparse incidence matrices cheap.
    std::size_t rank() const
    {
        RationalMatrix A = *this;
        std::vector<char> used(rows_, 0);
        std::vector<std::size_t> support;
        std::size_t r = 0;
        for (std::size_t col = 0; col < cols_ && r < rows_; ++col) {
            std::size_t pivot = rows_;
            for (std::size_t i = 0; i < rows_; ++i)
                if (!used[i] && A(i, col) != 0) {
                    pivot = i;
                    break;
                }
            if (pivot == rows_)
                continue;
            used[pivot] = 1;
            ++r;
            support.clear();
            for (std::size_t j = col + 1; j < cols_; ++j)
                if (A(pivot, j) != 0)
                    support.push_back(j);
            for (std::size_t i = 0; i < rows_; ++i) {
                if (used[i] || A(i, col) == 0)
                    continue;
                const Rational factor = A(i, col) / A(pivot, col);
                A(i, col) = 0;
                for (std::size_t j : support)
                    A(i, j) -= factor * A(pivot, j);
            }
        }
        return r;
    }

    /// Basis of the kernel as columns.
    RationalMatrix kernel() const
    {
        RationalMatrix R = *this;
        const auto pivots = R.rref();
        std::vector<char> is_pivot(cols_, 0);
        for (auto c : pivots)
            is_pivot[c] = 1;
        RationalMatrix K(cols_, cols_ - pivots.size());
        std::size_t k = 0;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free])
                continue;
            K(free, k) = 1;
            for (std::size_t r = 0; r < pivots.size(); ++r)
                K(pivots[r], k) = -R(r, free);
            ++k;
        }
        return K;
    }

    /// Inverse of a square nonsingular matrix.
    RationalMatrix inverse() const
    {
        if (rows_ != cols_)
            throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
        RationalMatrix I(rows_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            I(i, i) = 1;
        RationalMatrix A = hcat(*this, I);
        if (A.rref().size() < rows_ || A(rows_ - 1, rows_ - 1) != 1)
            throw Error(ErrorKind::DimensionMismatch, "singular matrix");
        RationalMatrix out(rows_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < rows_; ++j)
                out(i, j) = A(i, rows_ + j);
        return out;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

/// dim(span A ∩ span B) for column spans.
inline std::size_t intersection_dim(const RationalMatrix& A, const RationalMatrix& B)
{
    return A.rank() + B.rank() - RationalMatrix::hcat(A, B).rank();
}

/// Columns spanning proj_{span V}(span P).
inline RationalMatrix projection_image(const RationalMatrix& V, const RationalMatrix& P)
{
    // Reduce V to independent columns so the Gram matrix is invertible.
    RationalMatrix echelon = V;
    const auto pivots = echelon.rref();
    RationalMatrix Vb(V.rows(), pivots.size());
    for (std::size_t k = 0; k < pivots.size(); ++k)
        for (std::size_t i = 0; i < V.rows(); ++i)
            Vb(i, k) = V(i, pivots[k]);
    if (pivots.empty())
        return RationalMatrix(V.rows(), 0);
    const RationalMatrix Vt = Vb.transpose();
    return Vb * ((Vt * Vb).inverse() * (Vt * P));
}

inline std::size_t betti(const SimplicialComplex& K, const Subcomplex& sub, int p)
{
    validate_subcomplex(K, sub);
    const std::size_t n = static_cast<std::size_t>(sub.count(p));
    const auto down = RationalMatrix::from_integers(local_boundary_matrix(K, sub, p));
    const auto up = RationalMatrix::from_integers(local_boundary_matrix(K, sub, p + 1));
    return n - down.rank() - up.rank();
}

inline std::size_t betti(const SimplicialComplex& K, int p) { return betti(K, Subcomplex::full(K), p); }

/// b_p^{s,t} = dim Z_p(K_s) − dim(B_p(K_t) ∩ C_p(K_s)); zero for s < 0.
inline std::size_t persistent_betti(const Filtration& F, int p, int s, int t)
{
    if (s < 0)
        return 0;
    if (t < s || t > F.N())
        throw Error(ErrorKind::IndexOutOfRange, "(s,t) outside 0 <= s <= t <= N");
    const auto& K = F.complex();
    const Subcomplex Ks = F.subcomplex(s), Kt = F.subcomplex(t);
    const std::size_t ns = static_cast<std::size_t>(Ks.count(p));
    const std::size_t zs = ns - RationalMatrix::from_integers(local_boundary_matrix(K, Ks, p)).rank();
    // Rows of the K_t boundary matrix for p-simplices of K_t that are missing from K_s.
    const auto up = RationalMatrix::from_integers(local_boundary_matrix(K, Kt, p + 1));
    const auto rows_t = Kt.indices(p);
    std::vector<int> outside;
    for (std::size_t r = 0; r < rows_t.size(); ++r)
        if (!Ks.contains(p, rows_t[r]))
            outside.push_back(static_cast<int>(r));
    const std::size_t shared = up.rank() - up.select_rows(outside).rank();
    return zs - shared;
}

struct SubquotientDims {
    std::size_t M = 0, N = 0, P = 0;
};

/// dim M^{s,t}, N^{s,t}, P^{s,t}; t = nullopt is the bar to ∞ (M = H_s, N = M^{s,N}).
inline SubquotientDims subquotient_dims(const Filtration& F, int p, int s, std::optional<int> t)
{
    if (s < 0 || s > F.N() || (t && (*t < s || *t > F.N())))
        throw Error(ErrorKind::IndexOutOfRange, "(s,t) outside 0 <= s <= t <= N");
    const std::size_t beta = betti(F.complex(), F.subcomplex(s), p);
    auto dimM = [&](int tt) { return beta - persistent_betti(F, p, s, tt) + persistent_betti(F, p, s - 1, tt); };
    SubquotientDims d;
    if (!t) {
        d.M = beta;
        d.N = dimM(F.N());
    } else {
        d.M = dimM(*t);
        d.N = *t == s ? 0 : dimM(*t - 1);
    }
    d.P = d.M - d.N;
    return d;
}

/// b_p^{s,t} for all 0 <= s <= t <= N, indexed [s][t] (entries with t < s are zero).
inline std::vector<std::vector<std::size_t>> persistent_betti_table(const Filtration& F, int p)
{
    const int N = F.N();
    const auto& K = F.complex();
    std::vector<Subcomplex> subs;
    std::vector<std::size_t> zdim, brank;
    std::vector<RationalMatrix> up;
    for (int t = 0; t <= N; ++t) {
        subs.push_back(F.subcomplex(t));
        const auto down = RationalMatrix::from_integers(local_boundary_matrix(K, subs.back(), p));
        zdim.push_back(static_cast<std::size_t>(subs.back().count(p)) - down.rank());
        up.push_back(RationalMatrix::from_integers(local_boundary_matrix(K, subs.back(), p + 1)));
        brank.push_back(up.back().rank());
    }
    std::vector<std::vector<std::size_t>> b(static_cast<std::size_t>(N + 1), std::vector<std::size_t>(static_cast<std::size_t>(N + 1), 0));
    for (int s = 0; s <= N; ++s)
        for (int t = s; t <= N; ++t) {
            const auto rows_t = subs[t].indices(p);
            std::vector<int> outside;
            for (std::size_t r = 0; r < rows_t.size(); ++r)
                if (!subs[s].contains(p, rows_t[r]))
                    outside.push_back(static_cast<int>(r));
            const std::size_t shared = brank[t] - (outside.empty() ? 0 : up[t].select_rows(outside).rank());
            b[s][t] = zdim[s] - shared;
        }
    return b;
}

/// μ^{s,t} for all pairs, indexed [s][t] with t = N+1 standing for ∞.
inline std::vector<std::vector<long>> multiplicity_table(const Filtration& F, int p)
{
    const int N = F.N();
    const auto b = persistent_betti_table(F, p);
    auto B = [&](int s, int t) -> long { return s < 0 ? 0 : static_cast<long>(b[s][t]); };
    std::vector<std::vector<long>> mu(static_cast<std::size_t>(N + 1), std::vector<long>(static_cast<std::size_t>(N + 2), 0));
    for (int s = 0; s <= N; ++s) {
        for (int t = s + 1; t <= N; ++t)
            mu[s][t] = B(s, t - 1) - B(s, t) - B(s - 1, t - 1) + B(s - 1, t);
        mu[s][N + 1] = B(s, N) - B(s - 1, N);
    }
    return mu;
}

} // namespace hph::oracle
