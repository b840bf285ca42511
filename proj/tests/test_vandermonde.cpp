#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "periodgram/vandermonde.hpp"

using namespace periodgram;

namespace {

Matrix<Rational> random_rational_matrix(std::mt19937_64& rng, size_t rows, size_t cols) {
    std::uniform_int_distribution<long> d(-6, 6);
    Matrix<Rational> m(rows, std::vector<Rational>(cols));
    for (auto& row : m)
        for (auto& v : row) v = make_rational(d(rng), 1 + std::abs(d(rng)));
    return m;
}

std::function<std::vector<double>()> unit_square_sampler(std::mt19937_64& rng) {
    return [&rng] {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        return std::vector<double>{u(rng), u(rng)};
    };
}

}  // namespace

TEST_CASE("classical 1-D Vandermonde determinants") {
    ModuleBasis b = rectangular_basis({3});
    std::vector<std::vector<Rational>> z{{Rational(0)}, {Rational(1)}, {Rational(2)}};
    CHECK(vdm_det_exact(b, z) == Rational(2));  // prod of differences

    PointConfig zf{{-1.0}, {0.0}, {1.0}};
    CHECK(vdm_det_abs(b, zf) == doctest::Approx(2.0));

    ModuleBasis b2 = rectangular_basis({2});
    PointConfig z01{{0.0}, {1.0}};
    CHECK(vdm_det_abs(b2, z01) == doctest::Approx(1.0));
}

TEST_CASE("repeated points give zero determinant") {
    ModuleBasis b = rectangular_basis({2, 2});
    PointConfig z{{0.3, 0.4}, {0.3, 0.4}, {0.1, 0.9}, {0.7, 0.2}};
    CHECK(vdm_det_abs(b, z) == doctest::Approx(0.0));
}

TEST_CASE("rectangular (2,2) basis at the unit square corners") {
    ModuleBasis b = rectangular_basis({2, 2});
    std::vector<std::vector<Rational>> corners{{Rational(0), Rational(0)},
                                               {Rational(1), Rational(0)},
                                               {Rational(0), Rational(1)},
                                               {Rational(1), Rational(1)}};
    Rational det = vdm_det_exact(b, corners);
    CHECK((det == 1 || det == -1));
}

TEST_CASE("point permutation and basis reorder leave |det| unchanged") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    ModuleBasis b = rectangular_basis({2, 3});
    PointConfig z;
    for (long i = 0; i < b.rank(); ++i) z.push_back({u(rng), u(rng)});
    double base = vdm_det_abs(b, z);
    for (int t = 0; t < 5; ++t) {
        PointConfig zp = z;
        std::shuffle(zp.begin(), zp.end(), rng);
        CHECK(vdm_det_abs(b, zp) == doctest::Approx(base).epsilon(1e-10));
        ModuleBasis bp = b;
        std::shuffle(bp.monomials.begin(), bp.monomials.end(), rng);
        CHECK(vdm_det_abs(bp, z) == doctest::Approx(base).epsilon(1e-10));
    }
}

TEST_CASE("dimension mismatch is rejected") {
    ModuleBasis b = rectangular_basis({2, 2});
    PointConfig z{{0.1, 0.2}, {0.3, 0.4}, {0.5, 0.6}};
    CHECK_THROWS_AS(vdm_matrix(b, z), DimensionMismatch);
}

TEST_CASE("amalgam of 1-D Vandermonde factors is the rectangular matrix") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PointConfig z;
    for (int i = 0; i < 6; ++i) z.push_back({u(rng), u(rng)});

    Matrix<double> a(6, std::vector<double>(3)), b(6, std::vector<double>(2));
    for (int i = 0; i < 6; ++i) {
        a[static_cast<size_t>(i)] = {1.0, z[static_cast<size_t>(i)][0],
                                     z[static_cast<size_t>(i)][0] * z[static_cast<size_t>(i)][0]};
        b[static_cast<size_t>(i)] = {1.0, z[static_cast<size_t>(i)][1]};
    }
    Matrix<double> ab = amalgam(a, b);
    ModuleBasis rect = rectangular_basis({3, 2});
    Matrix<double> v = vdm_matrix(rect, z);
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) CHECK(ab[i][j] == doctest::Approx(v[i][j]));
}

TEST_CASE("amalgam shape checks and trivial cases") {
    Matrix<Rational> a{{Rational(3)}}, b{{Rational(5)}};
    Matrix<Rational> ab = amalgam(a, b);
    CHECK(ab[0][0] == Rational(15));

    // B an all-ones column: amalgam is A itself
    std::mt19937_64 rng(13);
    Matrix<Rational> a3 = random_rational_matrix(rng, 3, 3);
    Matrix<Rational> ones(3, std::vector<Rational>(1, Rational(1)));
    CHECK(amalgam(a3, ones) == a3);

    Matrix<Rational> bad(5, std::vector<Rational>(2, Rational(0)));
    CHECK_THROWS_AS(amalgam(bad, bad), ShapeError);
}

TEST_CASE("H constants") {
    CHECK(h_constant(2, 2) == 12);
    for (long n = 1; n <= 6; ++n) CHECK(h_constant(1, n) == factorial(static_cast<unsigned long>(n)));
    for (long m = 1; m <= 6; ++m) CHECK(h_constant(m, 1) == factorial(static_cast<unsigned long>(m)));
}

TEST_CASE("amalgam determinant formula equals brute force") {
    std::mt19937_64 rng(17);
    for (auto [m, n] : std::vector<std::pair<size_t, size_t>>{{1, 2}, {2, 2}, {3, 2}, {2, 3}}) {
        for (int trial = 0; trial < 20; ++trial) {
            Matrix<Rational> a = random_rational_matrix(rng, m * n, m);
            Matrix<Rational> b = random_rational_matrix(rng, m * n, n);
            Matrix<Rational> ab = amalgam(a, b);
            CHECK(amalgam_det_formula(a, b) == detail::det_in_place(ab));
        }
    }
}

TEST_CASE("amalgam formula reduces to (prod a_i1) det B when m = 1") {
    std::mt19937_64 rng(19);
    Matrix<Rational> a = random_rational_matrix(rng, 3, 1);
    Matrix<Rational> b = random_rational_matrix(rng, 3, 3);
    Rational prod = a[0][0] * a[1][0] * a[2][0];
    Matrix<Rational> bc = b;
    CHECK(amalgam_det_formula(a, b) == prod * detail::det_in_place(bc));
}

TEST_CASE("amalgam formula size guard") {
    Matrix<Rational> a(9, std::vector<Rational>(3, Rational(1)));
    Matrix<Rational> b(9, std::vector<Rational>(3, Rational(1)));
    CHECK_THROWS_AS(amalgam_det_formula(a, b), SizeLimit);
}

TEST_CASE("tensor bound on random configurations") {
    std::mt19937_64 rng(23);
    auto sampler = unit_square_sampler(rng);

    // N1 = {1, x}, N2 = {1, y} over the unit square
    ModuleBasis n1, n2;
    n1.ambient = n2.ambient = 2;
    n1.monomials = {Monomial{{0, 0}, 1}, Monomial{{1, 0}, 1}};
    n2.monomials = {Monomial{{0, 0}, 1}, Monomial{{0, 1}, 1}};
    TensorBoundReport rep = tensor_bound_check(n1, n2, sampler, 1000);
    CHECK(rep.product_free);
    CHECK(rep.holds);
    CHECK(rep.worst_ratio <= 1.0);

    // degenerate region: a single point
    auto point_sampler = [] { return std::vector<double>{0.25, 0.75}; };
    TensorBoundReport degenerate = tensor_bound_check(n1, n2, point_sampler, 5);
    CHECK(degenerate.holds);

    // {1,x} (x) {1,x}: product basis {1, x, x, x^2} is not free
    TensorBoundReport notfree = tensor_bound_check(n1, n1, sampler, 50);
    CHECK(!notfree.product_free);
    CHECK(notfree.holds);  // determinant vanishes, bound trivially valid
}

TEST_CASE("direct sum Laplace bound on random instances") {
    std::mt19937_64 rng(29);
    auto sampler = unit_square_sampler(rng);
    ModuleBasis b1, b2;
    b1.ambient = b2.ambient = 2;
    b1.monomials = {Monomial{{0, 0}, 1}, Monomial{{1, 0}, 1}, Monomial{{2, 0}, 1}};
    b2.monomials = {Monomial{{0, 1}, 1}, Monomial{{1, 1}, 1}};
    CHECK(directsum_laplace_check(b1, b2, sampler, 300));
}
