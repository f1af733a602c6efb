#include <doctest.h>

#include "support.hpp"

using namespace support;

TEST_CASE("p_valuation") {
    CHECK(p_valuation(18, 3) == ExtRat(2));
    CHECK(p_valuation(q(1, 3), 3) == ExtRat(-1));
    CHECK(p_valuation(0, 5).is_inf());
    CHECK(p_valuation(q(50, 7), 5) == ExtRat(2));
}

TEST_CASE("root_valuation") {
    CHECK(root_valuation(QPoly::x(), poly({-3, 0, 1}), 3) == ExtRat(q(1, 2)));
    CHECK(root_valuation(QPoly::x(), poly({-9, 0, 0, 1}), 3) == ExtRat(q(2, 3)));
    CHECK(root_valuation(poly({-1, 1}), poly({-1, 1}), 5).is_inf());
}

TEST_CASE("root_valuation of linear g is the value at the root") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 200; ++i) {
        long p = std::vector<long>{3, 5, 7}[static_cast<size_t>(pick(rng, 0, 2))];
        long c = pick(rng, -200, 200);
        QPoly phi = random_poly(rng, p, 3);
        if (phi.degree() < 1) continue;
        phi = phi.monic();
        if (!is_p_integral(phi, p)) continue;
        CHECK(root_valuation(phi, QPoly::linear(c), p) == p_valuation(phi.eval(c), p));
    }
}

TEST_CASE("factor_mod_p") {
    auto f1 = factor_mod_p(FpPoly(3, {2, 0, 1}));  // t^2 - 1
    REQUIRE(f1.size() == 2);
    CHECK(f1[0].first == FpPoly(3, {1, 1}));
    CHECK(f1[1].first == FpPoly(3, {2, 1}));
    auto f2 = factor_mod_p(FpPoly(3, {1, 0, 1}));
    REQUIRE(f2.size() == 1);
    CHECK(f2[0].first.degree() == 2);
}

TEST_CASE("factor_mod_p of t^3 - 2 over F_5 matches trial division") {
    auto oracle = brute_factor({3, 0, 0, 1}, 5);
    REQUIRE(oracle.size() == 2);
    CHECK(oracle[0].first == Coeffs{2, 1});     // t - 3
    CHECK(oracle[1].first == Coeffs{4, 3, 1});  // t^2 + 3t + 4
    auto got = factor_mod_p(FpPoly(5, {3, 0, 0, 1}));
    REQUIRE(got.size() == 2);
    CHECK(got[0].first == FpPoly(5, {2, 1}));
    CHECK(got[0].second == 1);
    CHECK(got[1].first == FpPoly(5, {4, 3, 1}));
    CHECK(got[1].second == 1);
}

TEST_CASE("factor_mod_p recomposes and agrees with trial division") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        long p = std::vector<long>{2, 3, 5, 7}[static_cast<size_t>(pick(rng, 0, 3))];
        int deg = static_cast<int>(pick(rng, 1, 6));
        std::vector<long> c;
        for (int j = 0; j < deg; ++j) c.push_back(pick(rng, 0, p - 1));
        c.push_back(1);
        FpPoly g(p, c);
        auto got = factor_mod_p(g);
        FpPoly prod(p, {1});
        for (const auto& [f, m] : got) {
            CHECK(f.lc() == 1);
            for (int k = 0; k < m; ++k) prod = prod * f;
        }
        CHECK(prod == g);
        auto oracle = brute_factor(c, p);
        std::multiset<std::pair<Coeffs, int>> a, b(oracle.begin(), oracle.end());
        for (const auto& [f, m] : got) a.insert({f.coeffs(), m});
        CHECK(a == b);
    }
}

TEST_CASE("resultant agrees with the Sylvester determinant") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        QPoly a = random_poly(rng, 3, 4), b = random_poly(rng, 3, 4);
        if (a.degree() < 1 || b.degree() < 1) continue;
        CHECK(resultant(a, b) == sylvester_resultant(a, b));
    }
}

TEST_CASE("polynomial division and expansion") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        QPoly a = random_poly(rng, 5, 6), b = random_poly(rng, 5, 3);
        if (b.degree() < 1) continue;
        auto [qq, r] = divmod(a, b);
        CHECK(qq * b + r == a);
        CHECK(r.degree() < b.degree());
        QPoly phi = b.monic();
        auto digits = expand(a, phi);
        QPoly back, power(mpq_class(1));
        for (const auto& dgt : digits) {
            CHECK(dgt.degree() < phi.degree());
            back = back + dgt * power;
            power = power * phi;
        }
        CHECK(back == a);
    }
}
