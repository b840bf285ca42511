#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "periodgram/bases.hpp"

using namespace periodgram;

namespace {

Int degree_sum(const ModuleBasis& b) { return b.degree_sum(); }

}  // namespace

TEST_CASE("rectangular basis ranks and degrees") {
    ModuleBasis b32 = rectangular_basis({3, 2});
    CHECK(b32.rank() == 6);
    CHECK(b32.exponent_value == 9);
    CHECK(degree_sum(b32) == 9);
    // tensor order, first variable fastest: 1, x, x^2, y, xy, x^2 y
    CHECK(b32.monomials[1].exponents == std::vector<long>{1, 0});
    CHECK(b32.monomials[3].exponents == std::vector<long>{0, 1});
    CHECK(b32.monomials[5].exponents == std::vector<long>{2, 1});

    ModuleBasis b1 = rectangular_basis({1});
    CHECK(b1.rank() == 1);
    CHECK(b1.exponent_value == 0);

    for (long n = 1; n <= 6; ++n) {
        ModuleBasis bn = rectangular_basis({n, n});
        CHECK(bn.rank() == n * n);
        CHECK(bn.exponent_value == Int(n) * Int(n) * Int(n - 1));
        CHECK(degree_sum(bn) == bn.exponent_value);
    }
}

TEST_CASE("homogeneous basis ranks and degrees") {
    ModuleBasis b = homogeneous_basis(3, 2);
    CHECK(b.rank() == 6);
    CHECK(b.exponent_value == 8);
    CHECK(degree_sum(b) == 8);
    // 1, x, y, x^2, xy, y^2
    CHECK(b.monomials[1].exponents == std::vector<long>{1, 0});
    CHECK(b.monomials[2].exponents == std::vector<long>{0, 1});
    CHECK(b.monomials[3].exponents == std::vector<long>{2, 0});

    CHECK(homogeneous_basis(1, 5).rank() == 1);

    ModuleBasis b42 = homogeneous_basis(4, 2);
    CHECK(b42.rank() == 10);
    CHECK(b42.exponent_value == 20);

    for (long r = 1; r <= 4; ++r)
        for (long n = 1; n <= 5; ++n) {
            ModuleBasis h = homogeneous_basis(n, r);
            CHECK(h.exponent_value == Int(r) * binomial(static_cast<unsigned long>(n + r - 1),
                                                        static_cast<unsigned long>(r + 1)));
            CHECK(degree_sum(h) == h.exponent_value);
        }
}

TEST_CASE("m05 basis ranks and exponent values through n=11") {
    ModuleBasis b1 = m05_basis(1);
    CHECK(b1.rank() == 6);
    CHECK(b1.exponent_value == 5);
    CHECK(b1.monomials[0].exponents == std::vector<long>{0, 0, 0, 0, 0});
    CHECK(b1.monomials[1].exponents == std::vector<long>{1, 0, 0, 0, 0});
    CHECK(b1.monomials[5].exponents == std::vector<long>{0, 0, 0, 0, 1});

    ModuleBasis b2 = m05_basis(2);
    CHECK(b2.rank() == 16);

    ModuleBasis b3 = m05_basis(3);
    CHECK(b3.rank() == 31);
    CHECK(b3.exponent_value == 70);

    const long expected_rank[] = {6, 16, 31, 51, 76, 106, 141, 181, 226, 276, 331};
    for (long n = 1; n <= 11; ++n) {
        ModuleBasis b = m05_basis(n);
        CHECK(b.rank() == expected_rank[n - 1]);
        CHECK(b.exponent_value == Int(5) * Int(n) * Int(n + 1) * Int(2 * n + 1) / 6);
        CHECK(degree_sum(b) == b.exponent_value);
    }
}

TEST_CASE("all bases have pairwise distinct monomials") {
    auto distinct = [](const ModuleBasis& b) {
        std::set<std::vector<long>> seen;
        for (const auto& m : b.monomials) seen.insert(m.exponents);
        return static_cast<long>(seen.size()) == b.rank();
    };
    for (long n = 1; n <= 5; ++n) {
        CHECK(distinct(two_param_basis(n)));
        CHECK(distinct(two_copies_basis(n)));
        CHECK(distinct(m05_basis(n)));
        CHECK(distinct(homogeneous_basis(n, 3)));
    }
}

TEST_CASE("poincare series check") {
    CHECK(poincare_check(12));
    CHECK_THROWS_AS(poincare_check(13), Error);
}

TEST_CASE("two copies basis") {
    ModuleBasis b2 = two_copies_basis(2);
    CHECK(b2.rank() == 8);
    CHECK(b2.exponent_value == 8);
    ModuleBasis b3 = two_copies_basis(3);
    CHECK(b3.rank() == 18);
    CHECK(b3.exponent_value == 36);
    ModuleBasis b1 = two_copies_basis(1);
    CHECK(b1.rank() == 2);
    CHECK(b1.exponent_value == 0);
}

TEST_CASE("exponent vector rewriting") {
    Monomial f1;
    f1.exponents = {1, 0};
    CHECK(to_exponent_vector(Family::two_param, f1) == Exp5{0, 1, 0, 1, 0});
    Monomial f2;
    f2.exponents = {0, 1};
    CHECK(to_exponent_vector(Family::two_param, f2) == Exp5{1, 0, 1, 0, 1});
    Monomial u3sq_u4;
    u3sq_u4.exponents = {0, 0, 2, 1, 0};
    CHECK(to_exponent_vector(Family::five_param, u3sq_u4) == Exp5{0, 0, 2, 1, 0});
    Monomial tc;
    tc.exponents = {2, 1, 1};  // u1 f1^2 f2
    CHECK(to_exponent_vector(Family::two_copies, tc) == Exp5{2, 2, 1, 2, 1});
}

TEST_CASE("g basis binomial expansion") {
    auto e10 = binomial_expand_g_basis(1, 0);
    REQUIRE(e10.size() == 1);
    CHECK(e10[0].first == 1);
    CHECK(e10[0].second == Exp5{0, 0, 1, 0, 0});

    auto e02 = binomial_expand_g_basis(0, 2);
    REQUIRE(e02.size() == 3);
    CHECK(e02[0] == std::pair<Int, Exp5>{1, {2, 0, 0, 0, 0}});
    CHECK(e02[1] == std::pair<Int, Exp5>{2, {1, 0, 0, 0, 1}});
    CHECK(e02[2] == std::pair<Int, Exp5>{1, {0, 0, 0, 0, 2}});

    auto e11 = binomial_expand_g_basis(1, 1);
    REQUIRE(e11.size() == 2);
    CHECK(e11[0] == std::pair<Int, Exp5>{1, {1, 0, 1, 0, 0}});
    CHECK(e11[1] == std::pair<Int, Exp5>{1, {0, 0, 1, 0, 1}});
}
