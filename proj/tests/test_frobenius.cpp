#include <doctest.h>

#include "fsig/frobenius.hpp"
#include "fsig/parse.hpp"
#include "fsig/power.hpp"
#include "oracles.hpp"

using namespace fsig;

namespace {

RingPresentation ambient_ring(std::vector<std::string> vars, std::uint64_t p,
                              WeightVector w = {}) {
    auto amb = w.empty() ? make_ambient(vars) : make_ambient(vars, w);
    return RingPresentation::make(amb, std::nullopt, p);
}

RingPresentation hyper(const std::string& rel, std::vector<std::string> vars, std::uint64_t p,
                       WeightVector w = {}) {
    auto amb = w.empty() ? make_ambient(vars) : make_ambient(vars, w);
    return RingPresentation::make(amb, parse_poly(rel, amb), p);
}

Poly elem(const RingPresentation& ring, const std::string& expr) {
    return reduce_mod_p(parse_poly(expr, ring.amb), ring.p);
}

/// Brute-force nu_e: expand f^r (and g^(q-1)) fully over dense maps.
std::int64_t nu_brute(const Poly& f, const RingPresentation& ring, std::uint32_t e) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) q *= ring.p;
    oracle::DenseTerms fedder{{Monomial(ring.nvars(), 0), 1}};
    if (!ring.ambient_regular())
        fedder = oracle::pow_terms(oracle::to_terms(ring.relation_mod_p), q - 1, ring.p,
                                   ring.nvars());
    std::int64_t nu = -1;
    for (std::int64_t r = 0;; ++r) {
        auto fr = oracle::pow_terms(oracle::to_terms(f), std::uint64_t(r), ring.p, ring.nvars());
        auto prod = oracle::mul_terms(fr, fedder, ring.p);
        if (oracle::in_bracket_power(prod, q)) break;
        nu = r;
    }
    return nu;
}

} // namespace

TEST_CASE("ring presentation validation") {
    auto amb = make_ambient({"x", "y"});
    CHECK_THROWS_AS(RingPresentation::make(amb, parse_poly("0", amb), 5), std::invalid_argument);
    CHECK_THROWS_AS(RingPresentation::make(amb, parse_poly("x + 1", amb), 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(RingPresentation::make(amb, parse_poly("5*x", amb), 5),
                    std::invalid_argument); // vanishes mod p
    auto r = RingPresentation::make(amb, parse_poly("x*y", amb), 5);
    CHECK(r.dim() == 1);
    CHECK(r.relation_weighted_homogeneous);
}

TEST_CASE("nu_e: spec examples") {
    { // ambient F_p[x], f = x -> q - 1
        auto ring = ambient_ring({"x"}, 5);
        CHECK(nu_e(elem(ring, "x"), ring, 1) == 4);
        CHECK(nu_e(elem(ring, "x"), ring, 2) == 24);
    }
    { // ambient F_5[x,y], f = x^2 + y^3, e = 1 -> 3: f^3 keeps 3*x^4*y^3 but
      // every term of f^4 has x-exp >= 5 or y-exp >= 5 (brute-force oracle).
        auto ring = ambient_ring({"x", "y"}, 5);
        Poly f = elem(ring, "x^2 + y^3");
        CHECK(nu_brute(f, ring, 1) == 3);
        CHECK(nu_e(f, ring, 1) == 3);
    }
    { // hypersurface (2,3,5) over F_7, f = z, e = 1 -> 1 (fpt = 1/6 bracket)
        auto ring = hyper("x^2 + y^3 + z^5", {"x", "y", "z"}, 7, {15, 10, 6});
        Poly z = elem(ring, "z");
        std::int64_t v = nu_e(z, ring, 1);
        CHECK(v == nu_brute(z, ring, 1));
        CHECK(v == 1);
        CHECK(Rational(v, 7) < Rational(1, 6));
        CHECK(Rational(1, 6) <= Rational(v + 1, 7));
    }
}

TEST_CASE("nu_e error paths") {
    auto ring = ambient_ring({"x", "y"}, 5);
    CHECK_THROWS_AS(nu_e(Poly::zero(ring.amb, ring.fp), ring, 1), std::invalid_argument);
    CHECK_THROWS_AS(nu_e(elem(ring, "x + 1"), ring, 1), std::invalid_argument); // unit
    // Not F-split: cusp at p = 5 (p = 2 mod 3).
    auto cusp5 = hyper("x^2 + y^3", {"x", "y"}, 5, {3, 2});
    CHECK_THROWS_AS(nu_e(elem(cusp5, "x"), cusp5, 1), NotFSplitError);
}

TEST_CASE("mu_e: spec examples and the direct min-characterization") {
    { // ambient, f = x -> q
        auto ring = ambient_ring({"x"}, 7);
        CHECK(mu_e(elem(ring, "x"), ring, 1) == 7);
    }
    { // cusp element in ambient F_7[x,y], e = 1: mu_1 = 6 by brute force
        auto ring = ambient_ring({"x", "y"}, 7);
        Poly f = elem(ring, "x^2 + y^3");
        std::int64_t nu = nu_brute(f, ring, 1);
        CHECK(mu_e(f, ring, 1) == nu + 1);
        CHECK(mu_e(f, ring, 1) == 6);
    }
    { // direct min-characterization on small instances
        auto ring = hyper("x*y - z^2", {"x", "y", "z"}, 3);
        for (const char* expr : {"x", "z", "x + y"}) {
            Poly f = elem(ring, expr);
            std::int64_t mu = mu_e(f, ring, 1);
            std::int64_t direct = nu_brute(f, ring, 1) + 1;
            CHECK(mu == direct);
        }
    }
}

TEST_CASE("monotonicity: nu_e/q nondecreasing, mu_e/q nonincreasing, mu = nu + 1") {
    struct Triple {
        const char* f;
        RingPresentation ring;
    };
    std::vector<Triple> corpus;
    corpus.push_back({"x", ambient_ring({"x"}, 3)});
    corpus.push_back({"x*y", ambient_ring({"x", "y"}, 3)});
    corpus.push_back({"x^2 + y^3", ambient_ring({"x", "y"}, 5)});
    corpus.push_back({"x^2 + y^3", ambient_ring({"x", "y"}, 7)});
    corpus.push_back({"x + y", ambient_ring({"x", "y"}, 5)});
    corpus.push_back({"x^2*y", ambient_ring({"x", "y"}, 3)});
    corpus.push_back({"x", hyper("x*y - z^2", {"x", "y", "z"}, 3)});
    corpus.push_back({"x + y + z", hyper("x*y - z^2", {"x", "y", "z"}, 5)});
    corpus.push_back({"z", hyper("x^2 + y^3 + z^5", {"x", "y", "z"}, 7, {15, 10, 6})});
    corpus.push_back({"y", hyper("x*y", {"x", "y"}, 5)});
    corpus.push_back({"x - y", ambient_ring({"x", "y"}, 11)});

    for (auto& c : corpus) {
        Poly f = elem(c.ring, c.f);
        Rational prev_lo(-1), prev_hi(INT64_MAX);
        std::uint64_t q = 1;
        for (std::uint32_t e = 1; e <= 3; ++e) {
            q *= c.ring.p;
            std::int64_t nu = nu_e(f, c.ring, e);
            std::int64_t mu = mu_e(f, c.ring, e);
            CHECK(mu == nu + 1);
            Rational lo(nu, std::int64_t(q)), hi(mu, std::int64_t(q));
            CHECK(lo >= prev_lo);
            CHECK(hi <= prev_hi);
            prev_lo = lo;
            prev_hi = hi;
        }
    }
}

TEST_CASE("fpt_bracket: spec examples") {
    { // f = x ambient: [(q-1)/q, 1], upper exactly 1
        auto ring = ambient_ring({"x", "y"}, 5);
        auto res = fpt_bracket(elem(ring, "x"), ring, 2);
        CHECK(res.bracket.upper == Rational(1));
        CHECK(res.bracket.lower == Rational(24, 25));
        CHECK(!res.bracket.partial);
    }
    { // f = z on (2,3,5) over F_13, e_max 2: bracket contains 1/6, width 1/169
        auto ring = hyper("x^2 + y^3 + z^5", {"x", "y", "z"}, 13, {15, 10, 6});
        auto res = fpt_bracket(elem(ring, "z"), ring, 2);
        Rational t(1, 6);
        CHECK(res.bracket.lower < t);
        CHECK(t <= res.bracket.upper);
        CHECK(res.bracket.upper - res.bracket.lower == Rational(1, 169));
    }
    { // f = z on (2,3,5) over F_11: the threshold drops to 1/11 here; the
      // brute-force oracle gives nu_1 = 0, nu_2 = 10, nested brackets.
        auto ring = hyper("x^2 + y^3 + z^5", {"x", "y", "z"}, 11, {15, 10, 6});
        Poly z = elem(ring, "z");
        CHECK(nu_brute(z, ring, 1) == 0);
        auto res = fpt_bracket(z, ring, 2);
        CHECK(res.per_e[0].nu == 0);
        CHECK(res.per_e[1].nu == 10);
        CHECK(res.bracket.upper == Rational(1, 11));
        CHECK(res.bracket.lower == Rational(10, 121));
    }
    { // f = xy in ambient F_3[x,y], e_max 3: bracket contains 1
        auto ring = ambient_ring({"x", "y"}, 3);
        auto res = fpt_bracket(elem(ring, "x*y"), ring, 3);
        CHECK(res.bracket.lower < Rational(1));
        CHECK(Rational(1) <= res.bracket.upper);
        CHECK(res.per_e[0].nu == 2); // (q-1) at q=3 by brute force
    }
}

TEST_CASE("power scaling: (1/a) * bracket(f) nests inside bracket(f^a)") {
    auto ring = ambient_ring({"x", "y"}, 5);
    auto cases = {std::string("x"), std::string("x^2 + y^3"), std::string("x*y")};
    for (const auto& expr : cases) {
        Poly f = elem(ring, expr);
        auto base = fpt_bracket(f, ring, 2);
        for (std::int64_t a : {2, 3}) {
            Poly fa = power(f, std::uint64_t(a));
            auto scaled = fpt_bracket(fa, ring, 2);
            Rational lo = base.bracket.lower / Rational(a);
            Rational hi = base.bracket.upper / Rational(a);
            CHECK(scaled.bracket.lower <= lo);
            CHECK(hi <= scaled.bracket.upper);
        }
    }
}

TEST_CASE("lowest-component monotonicity: nu_e(f) >= nu_e(f_0)") {
    auto ring = hyper("x*y - z^2", {"x", "y", "z"}, 3);
    struct Pair {
        const char* f;
        const char* f0; // lowest homogeneous part
    };
    for (auto [fs, f0s] : {Pair{"x + y^2", "x"}, Pair{"x + y + z^3", "x + y"},
                           Pair{"z^2 + x*y*z", "z^2"}}) {
        CHECK(nu_e(elem(ring, fs), ring, 1) >= nu_e(elem(ring, f0s), ring, 1));
        CHECK(nu_e(elem(ring, fs), ring, 2) >= nu_e(elem(ring, f0s), ring, 2));
    }
}

TEST_CASE("splitting_profile: ambient rings have s_e = 1") {
    for (std::uint64_t p : {3ull, 7ull}) {
        for (std::uint32_t e = 1; e <= 2; ++e) {
            auto ring = ambient_ring({"x", "y", "z"}, p);
            auto prof = splitting_profile(ring, e);
            CHECK(prof.s_e == Rational(1));
            CHECK(*prof.m_e == prof.q);
            CHECK(*prof.alpha_e == Rational(1));
            CHECK(prof.order_is_exact);
        }
    }
}

TEST_CASE("splitting_profile: A_1 is within 1/q of 1/2") {
    auto ring = hyper("x*y - z^2", {"x", "y", "z"}, 7);
    auto prof = splitting_profile(ring, 1);
    Rational err = (prof.s_e - Rational(1, 2)).abs();
    CHECK(err <= Rational(1, 7));
    CHECK(prof.colength_Ie == 25); // (q^2 + 1)/2 at q = 7
}

TEST_CASE("splitting_profile: graded kernel matches the groebner colon path") {
    struct Case {
        const char* rel;
        std::vector<std::string> vars;
        WeightVector w;
        std::uint64_t p;
    };
    std::vector<Case> cases = {
        {"x*y - z^2", {"x", "y", "z"}, {}, 3},
        {"x*y - z^2", {"x", "y", "z"}, {}, 5},
        {"x^2 - y*z", {"x", "y", "z"}, {}, 3},
        {"x^2 + y^2 + z^2", {"x", "y", "z"}, {}, 5},
        {"x*y", {"x", "y"}, {}, 5},
        {"x^2 + y^3 + z^5", {"x", "y", "z"}, {15, 10, 6}, 7},
    };
    for (const auto& c : cases) {
        auto ring = c.w.empty() ? hyper(c.rel, c.vars, c.p) : hyper(c.rel, c.vars, c.p, c.w);
        auto prof = splitting_profile(ring, 1);

        std::vector<Poly> mq;
        for (std::size_t v = 0; v < ring.nvars(); ++v) {
            Monomial m(ring.nvars(), 0);
            m[v] = std::uint32_t(ring.p);
            mq.push_back(Poly::monomial(ring.amb, ring.fp, m));
        }
        IdealBasis I(mq);
        Poly h = power_truncated(ring.relation_mod_p, ring.p - 1, ring.p);
        auto J = colon_ideal(I, h, MonomialOrder::grevlex());
        auto len = colength(J, MonomialOrder::grevlex());
        REQUIRE(len.has_value());
        CHECK(prof.colength_Ie == *len);
    }
}

TEST_CASE("splitting_profile: non-homogeneous relation takes the dense path") {
    auto ring = hyper("x*y + y^3", {"x", "y"}, 7); // weights (1,1): not homogeneous
    CHECK(!ring.relation_weighted_homogeneous);
    auto prof = splitting_profile(ring, 1);
    CHECK(!prof.m_e.has_value());
    CHECK(!prof.alpha_e.has_value());
    CHECK(prof.s_e > Rational(0));
    // Same ring under weights (2,1) is homogeneous and goes graded; the
    // colength does not depend on the route.
    auto graded = hyper("x*y + y^3", {"x", "y"}, 7, {2, 1});
    auto gprof = splitting_profile(graded, 1);
    CHECK(gprof.colength_Ie == prof.colength_Ie);
    CHECK(gprof.m_e.has_value());
}

TEST_CASE("nu_e_ideal: spec examples") {
    { // a = m = (x, y) in ambient F_3[x,y], e = 1 -> 4 = n(q-1)
        auto ring = ambient_ring({"x", "y"}, 3);
        std::vector<Poly> m = {elem(ring, "x"), elem(ring, "y")};
        auto r = nu_e_ideal(m, ring, 1);
        CHECK(r.exact);
        CHECK(r.value == 4);
    }
    { // principal case consistency
        auto ring = ambient_ring({"x", "y"}, 5);
        auto r = nu_e_ideal({elem(ring, "x")}, ring, 1);
        CHECK(r.exact);
        CHECK(r.value == nu_e(elem(ring, "x"), ring, 1));
    }
    { // a = m in ambient F_5[x,y,z], e = 1 -> 12 = 3*(5-1)
        auto ring = ambient_ring({"x", "y", "z"}, 5);
        std::vector<Poly> m = {elem(ring, "x"), elem(ring, "y"), elem(ring, "z")};
        auto r = nu_e_ideal(m, ring, 1);
        CHECK(r.exact);
        CHECK(r.value == 12);
    }
    { // budget exhaustion flags a partial bound
        auto ring = ambient_ring({"x", "y", "z"}, 5);
        std::vector<Poly> m = {elem(ring, "x"), elem(ring, "y"), elem(ring, "z")};
        auto r = nu_e_ideal(m, ring, 1, 10);
        CHECK(!r.exact);
        CHECK(r.value <= 12);
    }
}

TEST_CASE("bound_check: spec examples") {
    { // ambient ring: l(R/I_e) = q^n and the nu bound
        auto ring = ambient_ring({"x", "y"}, 3);
        auto prof = splitting_profile(ring, 1);
        auto rep = bound_check(prof, ring);
        CHECK(rep.len_mod_Ie == 9);
        CHECK(rep.nu_m == 4);
        CHECK(rep.lower_ok);
        CHECK(rep.upper_ok);
        CHECK(rep.briancon_skoda_ok);
    }
    { // A_1 at p = 3, e = 1: all three containment inequalities pass
        auto ring = hyper("x*y - z^2", {"x", "y", "z"}, 3);
        auto prof = splitting_profile(ring, 1);
        auto rep = bound_check(prof, ring);
        CHECK(rep.all_ok());
        // Full brute force at q = 3: l(R/I_e) matches the dense-oracle rank.
        SparseMatrix dense =
            mult_operator_dense(power_truncated(ring.relation_mod_p, 2, 3), 3);
        CHECK(prof.colength_Ie == oracle::dense_rank(dense));
    }
}

TEST_CASE("profile invariant checks fire") {
    FrobeniusProfile p;
    p.s_e = Rational(3, 2);
    CHECK_THROWS_AS(p.check_invariants(), std::logic_error);
    p.s_e = Rational(1, 2);
    p.nu_f = 3;
    p.mu_f = 5;
    CHECK_THROWS_AS(p.check_invariants(), std::logic_error);
}
