#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "periodgram/gram.hpp"

using namespace periodgram;

namespace {

LinearForm lf(long cn, long cd, long xn, long xd) {
    return {make_rational(cn, cd), make_rational(xn, xd)};
}

// det Q2 for the two-parameter family: -8x^4 + 23x^3 + 11/4 x^2 - 851/16 x + 145/4
XiPolynomial expected_det_q2() {
    return XiPolynomial(std::vector<Rational>{make_rational(145, 4), make_rational(-851, 16),
                                              make_rational(11, 4), Rational(23), Rational(-8)});
}

XiPolynomial quartic_factor() {  // 8x^2 - x - 20
    return XiPolynomial(std::vector<Rational>{Rational(-20), Rational(-1), Rational(8)});
}

XiPolynomial sextic_factor() {  // 16x^2 - 44x + 29
    return XiPolynomial(std::vector<Rational>{Rational(29), Rational(-44), Rational(16)});
}

}  // namespace

TEST_CASE("two-parameter Gram matrix at n=1 and n=2 matches the display") {
    GramMatrix g1 = build_gram(Family::two_param, 1);
    REQUIRE(g1.rank() == 1);
    CHECK(g1.at(0, 0) == LinearForm::xi());  // basis {1}: entry is zeta(2), not (1)

    GramMatrix g = build_gram(Family::two_param, 2);
    REQUIRE(g.rank() == 4);
    LinearForm expected[4][4] = {
        {lf(0, 1, 1, 1), lf(-1, 1, 1, 1), lf(2, 1, -1, 1), lf(5, 1, -3, 1)},
        {lf(-1, 1, 1, 1), lf(-5, 4, 1, 1), lf(5, 1, -3, 1), lf(33, 4, -5, 1)},
        {lf(2, 1, -1, 1), lf(5, 1, -3, 1), lf(-3, 2, 1, 1), lf(-23, 2, 7, 1)},
        {lf(5, 1, -3, 1), lf(33, 4, -5, 1), lf(-23, 2, 7, 1), lf(-125, 4, 19, 1)}};
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) CHECK(g.at(i, j) == expected[i][j]);
}

TEST_CASE("five-parameter Gram matrix at n=1 matches the display") {
    GramMatrix g = build_gram(Family::five_param, 1);
    REQUIRE(g.rank() == 6);
    LinearForm z = LinearForm::xi();
    LinearForm one = LinearForm::one();
    LinearForm half = lf(1, 2, 0, 1);
    LinearForm tq = lf(3, 4, 0, 1);
    LinearForm zm1 = lf(-1, 1, 1, 1);
    LinearForm expected[6][6] = {{z, one, one, one, one, one},
                                 {one, tq, half, zm1, zm1, half},
                                 {one, half, tq, half, zm1, zm1},
                                 {one, zm1, half, tq, half, zm1},
                                 {one, zm1, zm1, half, tq, half},
                                 {one, half, zm1, zm1, half, tq}};
    for (long i = 0; i < 6; ++i)
        for (long j = 0; j < 6; ++j) CHECK(g.at(i, j) == expected[i][j]);
}

TEST_CASE("Gram matrices are exactly symmetric") {
    for (Family f : {Family::two_param, Family::two_copies, Family::five_param}) {
        for (long n = 1; n <= 4; ++n) {
            GramMatrix g = build_gram(f, n);
            for (long i = 0; i < g.rank(); ++i)
                for (long j = 0; j < i; ++j) CHECK(g.at(i, j) == g.at(j, i));
        }
    }
}

TEST_CASE("exact determinant of the two-parameter n=2 matrix") {
    GramMatrix g = build_gram(Family::two_param, 2);
    XiPolynomial det = det_exact(g);
    CHECK(det == expected_det_q2());

    // 16 det Q2 = -(8x^2-x-20)(16x^2-44x+29)
    CHECK(verify_factorization(det, {quartic_factor(), sextic_factor()},
                               make_rational(-1, 16)));

    auto d = denominator_lcm(det);
    CHECK(d.value() == 16);
    CHECK(d.str() == "2^4");
}

TEST_CASE("exact determinant of the five-parameter n=1 matrix") {
    GramMatrix g = build_gram(Family::five_param, 1);
    XiPolynomial det = det_exact(g);
    CHECK(verify_factorization(det, {quartic_factor(), sextic_factor(), sextic_factor()},
                               make_rational(1, 1024)));
    // numeric value ~ 1.059e-8
    double v = det_numeric_from_poly(det, 50).to_double();
    CHECK(v == doctest::Approx(1.059e-8).epsilon(0.01));
}

TEST_CASE("trivial 1x1 determinant is x") {
    GramMatrix g = build_gram(Family::two_param, 1);
    CHECK(det_exact(g) == XiPolynomial(LinearForm::xi()));
}

TEST_CASE("exact limit guard") {
    GramMatrix g = build_gram(Family::two_param, 2);
    CHECK_THROWS_AS(det_exact(g, 3), ExactLimitExceeded);
}

TEST_CASE("a singular matrix exhausts the numeric precision schedule") {
    ModuleBasis dup = family_basis(Family::two_param, 2);
    dup.monomials[3] = dup.monomials[2];  // repeated basis element, det = 0
    GramMatrix g = build_gram_from_basis(Family::two_param, dup);
    CHECK_THROWS_AS(det_numeric_direct(g, 50, 400), PrecisionExhausted);
}

TEST_CASE("numeric determinants match the table for n=2,3") {
    GramMatrix g2 = build_gram(Family::two_param, 2);
    CHECK(det_numeric_direct(g2, 50).to_double() == doctest::Approx(8.0497e-6).epsilon(0.01));
    XiPolynomial p2 = det_exact(g2);
    CHECK(det_numeric_from_poly(p2, 50).to_double() ==
          doctest::Approx(det_numeric_direct(g2, 50).to_double()).epsilon(1e-10));

    GramMatrix g3 = build_gram(Family::two_param, 3);
    XiPolynomial p3 = det_exact(g3);
    CHECK(p3.degree() == 9);
    CHECK(p3.coeffs.back() == Rational(-2304));       // -2304 zeta^9 + 18160 zeta^8 + ...
    CHECK(p3.coeffs[8] == Rational(18160));
    CHECK(denominator_lcm(p3).str() == "2^18 3^16");
    CHECK(det_numeric_from_poly(p3, 50).to_double() == doctest::Approx(3.76e-27).epsilon(0.01));
}

TEST_CASE("base-change invariance of the exact determinant") {
    GramMatrix g = build_gram(Family::five_param, 1);
    XiPolynomial base = det_exact(g);
    std::mt19937_64 rng(41);
    ModuleBasis permuted = family_basis(Family::five_param, 1);
    std::shuffle(permuted.monomials.begin(), permuted.monomials.end(), rng);
    GramMatrix h = build_gram_from_basis(Family::five_param, permuted);
    CHECK(det_exact(h) == base);
}

TEST_CASE("report reproduces the two-parameter table rows n=2 and n=4") {
    GramReport r = report(Family::two_param, 2);
    CHECK(r.rank == 4);
    CHECK(r.e_n == 4);
    CHECK(r.exact);
    CHECK(r.d_n.value() == 16);
    CHECK(r.proxy.to_double() == doctest::Approx(0.05327).epsilon(2e-4));
    CHECK(r.log_d_per_e.to_double() == doctest::Approx(0.693).epsilon(1e-3));
    CHECK(r.product.to_double() == doctest::Approx(0.1065).epsilon(2e-3));
    CHECK(r.threshold.to_double() == doctest::Approx(4.231).epsilon(1e-3));

    GramReport r4 = report(Family::two_param, 4, 50, 40, 2);
    CHECK(r4.proxy.to_double() == doctest::Approx(0.02834).epsilon(2e-4));
    CHECK(r4.log_d_per_e.to_double() == doctest::Approx(2.050).epsilon(1e-3));
    CHECK(r4.threshold.to_double() == doctest::Approx(1.738).epsilon(1e-3));
}

TEST_CASE("report reproduces the five-parameter row n=1 with the exact denominator") {
    GramReport r = report(Family::five_param, 1);
    CHECK(r.e_n == 5);
    CHECK(r.proxy.to_double() == doctest::Approx(0.02541).epsilon(2e-4));
    CHECK(r.d_n.value() == 1024);
    // exact denominator: ln(1024)/5; the published 2.843 used a row-lcm estimate
    CHECK(r.log_d_per_e.to_double() == doctest::Approx(std::log(1024.0) / 5.0).epsilon(1e-12));
    CHECK(!r.d_n_estimated);
}

TEST_CASE("positivity via Cholesky") {
    CHECK(positivity_check(build_gram(Family::two_param, 2)));
    CHECK(positivity_check(build_gram(Family::five_param, 1)));

    // repeated basis element -> only semidefinite
    ModuleBasis dup = family_basis(Family::two_param, 2);
    dup.monomials[3] = dup.monomials[2];
    GramMatrix g = build_gram_from_basis(Family::two_param, dup);
    CHECK(!positivity_check(g));
}

TEST_CASE("monte carlo determinant identity, small runs") {
    // N=1: int omega = zeta(2) exactly
    MonteCarloResult r1 = montecarlo_det_identity(Family::two_param, 1, 20000, 3);
    CHECK(r1.reference == doctest::Approx(1.6449340668).epsilon(1e-9));
    CHECK(r1.relative_deviation < 1e-9);  // det V = 1 identically for the basis {1}

    MonteCarloResult r2 = montecarlo_det_identity(Family::two_param, 2, 200000, 5, 2);
    CHECK(r2.reference == doctest::Approx(8.0497e-6).epsilon(0.01));
    CHECK(r2.deviation_in_sigma < 5.0);

    MonteCarloResult r6 = montecarlo_det_identity(Family::five_param, 1, 200000, 7, 2);
    CHECK(r6.reference == doctest::Approx(1.059e-8).epsilon(0.01));
    CHECK(r6.deviation_in_sigma < 5.0);
}
