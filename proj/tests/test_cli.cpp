#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>

#include "periodgram/json_io.hpp"

using namespace periodgram;

TEST_CASE("golden CSV table for the two-parameter family") {
    CHECK(table_csv_header() == "n,rank,e_n,det,d_n,proxy,log_d_per_e,product,threshold");
    GramReport r2 = report(Family::two_param, 2);
    CHECK(table_csv_row(r2) ==
          "2,4,4,8.05191e-06,2^4,5.32690e-02,6.93147e-01,1.06538e-01,4.23056e+00");
    GramReport r3 = report(Family::two_param, 3);
    CHECK(table_csv_row(r3) ==
          "3,9,18,3.75925e-27,2^18 3^16,3.40369e-02,1.66969e+00,1.80754e-01,2.02451e+00");
}

TEST_CASE("JSON serialization is deterministic") {
    GramReport r = report(Family::five_param, 1);
    CHECK(to_json(r).dump() == to_json(r).dump());
    Json j = to_json(r);
    CHECK(j["rank"] == 6);
    CHECK(j["d_n"]["value"] == "1024");
    CHECK(j["det_poly"].size() == 7);  // degree 6 polynomial

    LinearForm f = mellin_integral({0, 0, 1, 0, 1});
    CHECK(to_json(f).dump() == "{\"const_part\":\"-1/1\",\"xi_part\":\"1/1\"}");
}

TEST_CASE("fekete runs are reproducible under a fixed seed") {
    ModuleBasis basis = rectangular_basis({6});
    Region region = Region::interval(0, 1);
    FeketeResult a = fekete_maximize(basis, region, 2, 25, 42);
    FeketeResult b = fekete_maximize(basis, region, 2, 25, 42);
    CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("mellin cache round trip") {
    // populate some values, save, and reload into a fresh table
    Exp5 probe{2, 1, 0, 0, 0};
    LinearForm expected = mellin_integral(probe);
    std::string path = "pg_test_cache.txt";
    save_mellin_cache(path);

    std::ifstream in(path);
    REQUIRE(in.good());
    MellinTable fresh;
    std::map<Exp5, LinearForm> values;
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream is(line);
        Exp5 s{};
        std::string cp, xp;
        bool ok = true;
        for (long& v : s) ok = ok && static_cast<bool>(is >> v);
        REQUIRE(ok);
        REQUIRE(static_cast<bool>(is >> cp >> xp));
        values.emplace(s, LinearForm{parse_rational(cp), parse_rational(xp)});
    }
    REQUIRE(!values.empty());
    fresh.preload(values);
    CHECK(fresh.integral(dihedral_orbit(probe)) == expected);
    std::remove(path.c_str());
}

TEST_CASE("module basis serialization") {
    Json j = to_json(m05_basis(1));
    CHECK(j["rank"] == 6);
    CHECK(j["e_n"] == "5");
    CHECK(j["monomials"].size() == 6);
    CHECK(j["monomials"][1]["exponents"] == Json::array({1, 0, 0, 0, 0}));
}
