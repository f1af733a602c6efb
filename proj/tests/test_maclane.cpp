#include <doctest.h>

#include "support.hpp"

using namespace support;

namespace {

const QPoly t = QPoly::x();
const QPoly t3m9 = poly({-9, 0, 0, 1});

MacLaneVal v23() { return chain(3, {{t, q(2, 3)}}); }

}  // namespace

TEST_CASE("canonical string") {
    CHECK(MacLaneVal(3).str() == "[v0]");
    CHECK(chain(3, {{t, q(2, 3)}, {t3m9, q(5, 2)}}).str() == "[v0, v1(t) = 2/3, v2(t^3 - 9) = 5/2]");
    CHECK(pseudo_of(t3m9, 3).str() == "[v0, v1(t) = 2/3, v2(t^3 - 9) = inf]");
}

TEST_CASE("valuate") {
    CHECK(valuate(v23(), t3m9) == ExtRat(2));
    CHECK(valuate(MacLaneVal(3), poly({3, 0, 9})) == ExtRat(1));
    MacLaneVal w = chain(3, {{t, q(2, 3)}, {t3m9, q(5, 2)}});
    CHECK(valuate(w, t3m9.pow(2)) == ExtRat(5));
    CHECK(valuate(w, t3m9, t) == ExtRat(q(5, 2) - q(2, 3)));
    CHECK_THROWS_AS(valuate(w, QPoly()), Error);
}

TEST_CASE("valuate of a length-one chain matches the Taylor expansion") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        long p = std::vector<long>{3, 5, 7}[static_cast<size_t>(pick(rng, 0, 2))];
        long c = pick(rng, 0, p * p);
        mpq_class lam = q(pick(rng, 0, 12), pick(rng, 1, 5));
        QPoly g = random_poly(rng, p, 5);
        MacLaneVal v = augment(MacLaneVal(p), QPoly::linear(c), lam);
        CHECK(valuate(v, g) == taylor_value(c, lam, g, p));
    }
}

TEST_CASE("valuation axioms") {
    std::mt19937_64 rng(22);
    for (int i = 0; i < 300; ++i) {
        long p = std::vector<long>{3, 5, 7}[static_cast<size_t>(pick(rng, 0, 2))];
        MacLaneVal v = random_valuation(rng, p);
        QPoly f = random_poly(rng, p, 5), g = random_poly(rng, p, 5);
        CHECK(valuate(v, f * g) == valuate(v, f) + valuate(v, g));
        if (!(f + g).is_zero()) CHECK(valuate(v, f + g) >= min(valuate(v, f), valuate(v, g)));
        CHECK(valuate(v, QPoly(mpq_class(p))) == ExtRat(1));
    }
}

TEST_CASE("ram_index") {
    CHECK(ram_index(chain(3, {{t, q(2, 3)}, {t3m9, q(25, 12)}})) == 12);
    CHECK(ram_index(MacLaneVal(3)) == 1);
    CHECK(ram_index(chain(3, {{t, q(1, 2)}, {poly({-3, 0, 1}), q(5, 4)}})) == 4);
    CHECK_THROWS_AS(ram_index(pseudo_of(t3m9, 3)), Error);
}

TEST_CASE("leq") {
    MacLaneVal v12 = chain(3, {{t, q(1, 2)}});
    CHECK(leq(MacLaneVal(3), v12));
    CHECK(leq(v12, v23()));
    CHECK(!leq(v23(), v12));
    MacLaneVal u = chain(3, {{poly({-1, 1}), q(1)}});
    CHECK(!leq(v23(), u));
    CHECK(!leq(u, v23()));
    CHECK(leq(v23(), pseudo_of(t3m9, 3)));
    CHECK(!leq(pseudo_of(t3m9, 3), v23()));
}

TEST_CASE("leq agrees with the sampling oracle") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        long p = std::vector<long>{3, 5}[static_cast<size_t>(pick(rng, 0, 1))];
        MacLaneVal v = random_valuation(rng, p), w = random_valuation(rng, p);
        CHECK(leq(v, w) == sampled_leq(v, w, rng));
        CHECK(leq(v, v));
    }
}

TEST_CASE("leq against a pseudovaluation is a root valuation test") {
    std::mt19937_64 rng(24);
    for (int i = 0; i < 200; ++i) {
        long p = std::vector<long>{3, 5}[static_cast<size_t>(pick(rng, 0, 1))];
        MacLaneVal v = normalize(random_valuation(rng, p));
        MacLaneVal g = random_pseudo(rng, p);
        QPoly gp = g.last().phi;
        bool below = true;
        if (v.is_gauss()) {
            below = true;
        } else {
            for (const auto& st : v.steps())
                if (root_valuation(st.phi, gp, p) < st.lambda) below = false;
        }
        CHECK(leq(v, g) == below);
    }
}

TEST_CASE("inf") {
    MacLaneVal a = chain(3, {{t, q(1, 3)}});
    MacLaneVal b = chain(3, {{poly({-1, 1}), q(1, 3)}});
    CHECK(equal(inf(a, a), a));
    CHECK(equal(inf(a, b), MacLaneVal(3)));
    MacLaneVal c = chain(5, {{poly({-1, 1}), q(3)}});
    MacLaneVal d = chain(5, {{poly({-6, 1}), q(2)}});
    CHECK(inf(c, d).str() == "[v0, v1(t - 1) = 1]");
    CHECK(equal(inf(v23(), chain(3, {{t, q(1, 2)}})), chain(3, {{t, q(1, 2)}})));
}

TEST_CASE("inf agrees with the truncation oracle") {
    std::mt19937_64 rng(25);
    for (int i = 0; i < 200; ++i) {
        long p = std::vector<long>{3, 5}[static_cast<size_t>(pick(rng, 0, 1))];
        MacLaneVal v = random_valuation(rng, p);
        MacLaneVal w = pick(rng, 0, 1) ? random_valuation(rng, p) : random_pseudo(rng, p);
        MacLaneVal m = inf(v, w);
        CHECK(equal(m, inf_by_truncation(v, w)));
        CHECK(leq(m, v));
        CHECK(leq(m, w));
    }
}

TEST_CASE("augment") {
    MacLaneVal w = augment(v23(), t3m9, ExtRat(q(5, 2)));
    CHECK(w.length() == 2);
    CHECK(w.last().lambda == ExtRat(q(5, 2)));
    CHECK(equal(augment(MacLaneVal(3), t, ExtRat(0)), MacLaneVal(3)));
    MacLaneVal pv = augment(chain(5, {{t, q(1, 2)}}), poly({-5, 0, 1}), ExtRat::infinity());
    CHECK(pv.is_pseudo());
    CHECK(pv.str() == "[v0, v1(t) = 1/2, v2(t^2 - 5) = inf]");
    CHECK_THROWS_AS(augment(MacLaneVal(3), t3m9, ExtRat(1)), Error);
    CHECK_THROWS_AS(augment(v23(), t, ExtRat(q(1, 2))), Error);
}

TEST_CASE("predecessors") {
    auto ps = predecessors(chain(3, {{t, q(2, 3)}, {t3m9, q(5, 2)}}));
    REQUIRE(ps.size() == 2);
    CHECK(ps[0].is_gauss());
    CHECK(equal(ps[1], v23()));
    CHECK(predecessors(MacLaneVal(3)).empty());
    auto pp = predecessors(pseudo_of(t3m9, 3));
    REQUIRE(pp.size() == 2);
    CHECK(equal(pp[1], v23()));
}

TEST_CASE("is_proper_key") {
    CHECK(is_proper_key(MacLaneVal(3), poly({-7, 1})));
    CHECK(is_proper_key(v23(), t3m9));
    CHECK(!is_proper_key(MacLaneVal(3), t3m9));
}

TEST_CASE("maclane_chain") {
    CHECK(maclane_chain(poly({-1, 1}), 7).is_gauss());
    CHECK(maclane_chain(t3m9, 3).str() == "[v0, v1(t) = 2/3]");
    CHECK(maclane_chain(poly({-5, 0, 1}), 5).str() == "[v0, v1(t) = 1/2]");
    CHECK_THROWS_AS(maclane_chain(poly({-1, 0, 1}), 3), Error);
}

TEST_CASE("maclane_chain post-conditions") {
    std::mt19937_64 rng(26);
    for (int i = 0; i < 100; ++i) {
        long p = std::vector<long>{3, 5, 7}[static_cast<size_t>(pick(rng, 0, 2))];
        MacLaneVal g = random_pseudo(rng, p);
        QPoly gp = g.last().phi;
        MacLaneVal v = maclane_chain(gp, p);
        CHECK(is_proper_key(v, gp));
        CHECK(leq(v, g));
        CHECK(equal(normalize(augment(v, gp, ExtRat::infinity())), g));
    }
}
