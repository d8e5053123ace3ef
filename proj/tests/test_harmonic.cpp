#include "catch_amalgamated.hpp"

#include <Eigen/Eigenvalues>

#include "support/fixtures.hpp"

using namespace hph;
using namespace fixtures;

TEST_CASE("harmonic space of the introductory complex")
{
    const auto K = build_complex({tri, d, e});
    const auto H = harmonic_basis(K, 1);
    REQUIRE(H.space.dim() == 1);
    const auto expected = chain(K, {{a, 1}, {b, 1}, {c, 2}, {d, -3}, {e, 3}});
    CHECK(grassmann_distance(H.space, span_of(expected)) <= 1e-8);
}

TEST_CASE("single vertex and hollow triangle")
{
    const auto V = build_complex({Simplex{0}});
    const auto H0 = harmonic_basis(V, 0);
    REQUIRE(H0.space.dim() == 1);
    CHECK(std::abs(H0.space.basis()(0, 0)) == Catch::Approx(1.0));

    const auto K = build_complex({a, b, c});
    const auto H1 = harmonic_basis(K, 1);
    REQUIRE(H1.space.dim() == 1);
    CHECK(grassmann_distance(H1.space, span_of(chain(K, {{a, 1}, {b, 1}, {c, -1}}))) <= 1e-8);
}

TEST_CASE("harmonic basis of a subcomplex is zero-padded into the ambient chain space")
{
    const auto K = build_complex({tri, d, e});
    const auto sub = Subcomplex::of(K, {Simplex{0}, Simplex{1}, Simplex{2}, a, b, c});
    const auto H = harmonic_basis(K, sub, 1);
    REQUIRE(H.space.ambient_dim() == 5);
    CHECK(grassmann_distance(H.space, span_of(chain(K, {{a, 1}, {b, 1}, {c, -1}}))) <= 1e-8);
    CHECK_THROWS_AS(harmonic_basis(K, Subcomplex::of(K, {a}), 1), Error);
}

TEST_CASE("laplacian shapes and definiteness")
{
    const auto empty = build_complex(std::vector<Simplex>{});
    CHECK(laplacian(empty, Subcomplex::full(empty), 0).size() == 0);

    std::mt19937_64 rng(31);
    for (int k = 0; k < 30; ++k) {
        const auto K = random_complex(rng, 60);
        for (int p = 0; p <= K->max_dim(); ++p) {
            const Eigen::MatrixXd L = laplacian(*K, Subcomplex::full(*K), p);
            CHECK(L == L.transpose());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(L);
            CHECK(es.eigenvalues().minCoeff() >= -1e-10);
        }
    }
}

TEST_CASE("harmonic space equals the Laplacian kernel and has Betti dimension")
{
    std::mt19937_64 rng(32);
    for (int k = 0; k < 40; ++k) {
        const auto K = random_complex(rng, 80);
        const Filtration F = random_coarse(K, rng, 4);
        for (int t = 0; t <= F.N(); ++t) {
            const auto sub = F.subcomplex(t);
            for (int p = 0; p <= K->max_dim(); ++p) {
                const auto H = harmonic_basis(*K, sub, p);
                CHECK(grassmann_distance(H.space, laplacian_kernel(*K, sub, p)) <= 1e-7);
                CHECK(H.space.dim() == static_cast<Eigen::Index>(oracle::betti(*K, sub, p)));
                const Eigen::MatrixXd& Z = H.space.basis();
                if (Z.cols() == 0)
                    continue;
                const Eigen::MatrixXd down = boundary_matrix(*K, p).real() * Z;
                // Only (p+1)-simplices of the subcomplex constrain Z.
                Eigen::MatrixXd up = boundary_matrix(*K, p + 1).real().transpose() * Z;
                for (Eigen::Index i = 0; i < up.rows(); ++i)
                    if (!sub.contains(p + 1, static_cast<int>(i)))
                        up.row(i).setZero();
                if (down.size())
                    CHECK(down.cwiseAbs().maxCoeff() <= 1e-8);
                if (up.size())
                    CHECK(up.cwiseAbs().maxCoeff() <= 1e-8);
            }
        }
    }
}

TEST_CASE("functorial map")
{
    const auto K = build_complex({tri, d, e});
    const auto F = example12();
    const auto H3 = harmonic_basis(K, F.subcomplex(3), 1);
    // Identity when the complexes agree.
    const Eigen::MatrixXd same = functorial_map(K, H3, F.subcomplex(3));
    CHECK((same - H3.space.basis()).norm() <= 1e-12);
    // a+b−c dies when the triangle enters.
    CHECK(functorial_map(K, H3, F.subcomplex(5)).norm() <= 1e-12);
    CHECK_THROWS_AS(functorial_map(K, harmonic_basis(K, F.subcomplex(5), 1), F.subcomplex(3)), Error);
}

TEST_CASE("stability of harmonic homology for subcomplex pairs")
{
    std::mt19937_64 rng(33);
    for (int k = 0; k < 100; ++k) {
        const auto K = random_complex(rng, 50);
        const Filtration F1 = random_coarse(K, rng, 5), F2 = random_coarse(K, rng, 5);
        const auto K1 = F1.subcomplex(std::uniform_int_distribution<int>(0, F1.N())(rng));
        const auto K2 = F2.subcomplex(std::uniform_int_distribution<int>(0, F2.N())(rng));
        for (int p = 0; p <= K->max_dim(); ++p) {
            const double dist = homology_distance(*K, K1, K2, p);
            CHECK(dist <= homology_stability_bound(*K, K1, K2, p) + 1e-8);
            CHECK(dist <= std::numbers::pi / 2 * std::sqrt(double(characteristic_difference(*K, K1, K2, p))) + 1e-8);
        }
    }
}
