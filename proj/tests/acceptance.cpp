// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in code; runtime budgets are enforced.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include "fsig/frobenius.hpp"
#include "fsig/groebner.hpp"
#include "fsig/parse.hpp"
#include "fsig/power.hpp"
#include "fsig/report.hpp"
#include "fsig/sweep.hpp"
#include "fsig/toric.hpp"

using namespace fsig;

namespace {

int g_failures = 0;

struct Criterion {
    std::string name;
    double budget_s;
    std::chrono::steady_clock::time_point start;
    bool ok = true;
    std::string detail;

    Criterion(std::string n, double budget) : name(std::move(n)), budget_s(budget) {
        start = std::chrono::steady_clock::now();
    }

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        } else if (!cond) {
            detail += "; " + what;
        }
    }

    void finish() {
        double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (budget_s > 0 && secs > budget_s) {
            ok = false;
            detail += (detail.empty() ? "" : "; ") + std::string("runtime ") +
                      std::to_string(secs) + "s exceeds budget " + std::to_string(budget_s) + "s";
        }
        std::printf("%s  %s  (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                    detail.empty() ? "" : " -- ", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++g_failures;
    }
};

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

// 1. Regularity calibration: s_e = 1 and alpha_e = 1 exactly for ambient
//    rings in 1-3 variables, p in {3,5,7,11}, e <= 3. Zero tolerance.
void criterion1() {
    Criterion c("1 regularity calibration (s_e = alpha_e = 1 on ambient rings)", 10.0);
    const std::vector<std::vector<std::string>> var_sets = {{"x"}, {"x", "y"}, {"x", "y", "z"}};
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
        for (const auto& vars : var_sets) {
            auto ring = ambient_ring(vars, p);
            for (std::uint32_t e = 1; e <= 3; ++e) {
                auto prof = splitting_profile(ring, e);
                c.expect(prof.s_e == Rational(1),
                         "s_e != 1 at p=" + std::to_string(p) + " n=" +
                             std::to_string(vars.size()) + " e=" + std::to_string(e));
                c.expect(prof.alpha_e && *prof.alpha_e == Rational(1),
                         "alpha_e != 1 at p=" + std::to_string(p));
            }
        }
    }
    // Spot cross-check through the actual kernel machinery at small size.
    {
        auto amb = make_ambient({"x", "y", "z"});
        GradedBlocks blocks = mult_operator(Poly::one(amb, PrimeField(3)), 3);
        auto kmd = kernel_min_degree(blocks);
        c.expect(kmd.profile.total_rank == 27 && kmd.m_e == 3,
                 "kernel path disagrees with the closed form at p=3");
    }
    c.finish();
}

// 2. (2,3,5) fpt: every bracket for z contains 1/6 with width exactly 1/p^e,
//    p in {7,11,13,31}, e <= 3.
void criterion2() {
    Criterion c("2 (2,3,5) fpt brackets for z contain 1/6 at width 1/p^e", 120.0);
    const Rational target(1, 6);
    for (std::uint64_t p : {7ull, 11ull, 13ull, 31ull}) {
        auto ring = hyper("x^2 + y^3 + z^5", {"x", "y", "z"}, p, {15, 10, 6});
        Poly z = elem(ring, "z");
        auto res = fpt_bracket(z, ring, 3, true);
        c.expect(res.per_e.size() == 3, "missing levels at p=" + std::to_string(p));
        for (const auto& eb : res.per_e) {
            Rational lo(eb.nu, std::int64_t(eb.q)), hi(eb.mu, std::int64_t(eb.q));
            c.expect(lo < target && target <= hi,
                     "bracket misses 1/6 at p=" + std::to_string(p) + " e=" +
                         std::to_string(eb.e));
            c.expect(hi - lo == Rational(1, std::int64_t(eb.q)),
                     "bracket width != 1/q at p=" + std::to_string(p));
        }
    }
    c.finish();
}

// 3. Veronese alpha: ambient F_p[y,z] with weights (5,3): m_e = 3 p^e and
//    alpha_e = 3 exactly for p in {7,11}, e <= 3. Zero tolerance.
void criterion3() {
    Criterion c("3 (2,3,5) Veronese ambient: m_e = 3*p^e, alpha_e = 3", 10.0);
    for (std::uint64_t p : {7ull, 11ull}) {
        auto ring = ambient_ring({"y", "z"}, p, {5, 3});
        std::uint64_t q = 1;
        for (std::uint32_t e = 1; e <= 3; ++e) {
            q *= p;
            auto prof = splitting_profile(ring, e);
            c.expect(prof.m_e && *prof.m_e == 3 * q,
                     "m_e != 3q at p=" + std::to_string(p) + " e=" + std::to_string(e));
            c.expect(prof.alpha_e && *prof.alpha_e == Rational(3),
                     "alpha_e != 3 at p=" + std::to_string(p));
        }
    }
    // The kernel path reproduces the closed form where it is feasible.
    {
        auto amb = make_ambient({"y", "z"}, {5, 3});
        GradedBlocks blocks = mult_operator(Poly::one(amb, PrimeField(7)), 7);
        c.expect(kernel_min_degree(blocks).m_e == 21, "kernel path m_e != 21 at p=7, e=1");
    }
    c.finish();
}

// 4. A_1 cross-oracle: toric signature exactly 1/2; |s_e - 1/2| <= 1/p^e for
//    p in {3,5,7,11}, e <= 2.
void criterion4() {
    Criterion c("4 A_1 cross-oracle: toric 1/2 vs kernel s_e within 1/p^e", 60.0);
    auto cone = make_cone({{1, 0}, {1, 2}});
    c.expect(toric_fsignature(cone) == Rational(1, 2), "toric signature != 1/2");
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
        auto ring = hyper("x*y - z^2", {"x", "y", "z"}, p);
        std::uint64_t q = 1;
        for (std::uint32_t e = 1; e <= 2; ++e) {
            q *= p;
            auto prof = splitting_profile(ring, e);
            Rational err = (prof.s_e - Rational(1, 2)).abs();
            c.expect(err <= Rational(1, std::int64_t(q)),
                     "|s_e - 1/2| > 1/q at p=" + std::to_string(p) + " e=" + std::to_string(e));
        }
    }
    c.finish();
}

// 5. Veronese family: toric signatures exactly 1/r for r = 2..5, positive.
void criterion5() {
    Criterion c("5 Veronese family: toric signatures 1/r, all positive", 10.0);
    auto plane = make_cone({{1, 0}, {0, 1}});
    for (std::uint64_t r = 2; r <= 5; ++r) {
        Rational sig = toric_fsignature(veronese_cone(plane, r));
        c.expect(sig == Rational(1, std::int64_t(r)), "signature != 1/" + std::to_string(r));
        c.expect(sig > Rational(0), "signature not positive at r=" + std::to_string(r));
    }
    c.finish();
}

struct Triple {
    std::string f;
    RingPresentation ring;
};

std::vector<Triple> monotonicity_corpus() {
    std::vector<Triple> corpus;
    corpus.push_back({"x", ambient_ring({"x"}, 3)});
    corpus.push_back({"x*y", ambient_ring({"x", "y"}, 3)});
    corpus.push_back({"x^2 + y^3", ambient_ring({"x", "y"}, 5)});
    corpus.push_back({"x^2 + y^3", ambient_ring({"x", "y"}, 7)});
    corpus.push_back({"x + y", ambient_ring({"x", "y"}, 5)});
    corpus.push_back({"x^2*y", ambient_ring({"x", "y"}, 3)});
    corpus.push_back({"x - y", ambient_ring({"x", "y"}, 11)});
    corpus.push_back({"x", hyper("x*y - z^2", {"x", "y", "z"}, 3)});
    corpus.push_back({"x + y + z", hyper("x*y - z^2", {"x", "y", "z"}, 5)});
    corpus.push_back({"z", hyper("x^2 + y^3 + z^5", {"x", "y", "z"}, 7, {15, 10, 6})});
    corpus.push_back({"y", hyper("x*y", {"x", "y"}, 5)});
    corpus.push_back({"x + z", hyper("x^2 - y*z", {"x", "y", "z"}, 3)});
    return corpus;
}

// 6. Monotonicity suite over >= 10 (f, ring, p) triples, e = 1..3.
void criterion6() {
    Criterion c("6 monotonicity: nu/q up, mu/q down, mu = nu + 1 on 12 triples", 300.0);
    auto corpus = monotonicity_corpus();
    c.expect(corpus.size() >= 10, "corpus too small");
    for (auto& t : corpus) {
        Poly f = elem(t.ring, t.f);
        Rational prev_lo(-1), prev_hi(INT64_MAX);
        std::uint64_t q = 1;
        for (std::uint32_t e = 1; e <= 3; ++e) {
            q *= t.ring.p;
            std::int64_t nu = nu_e(f, t.ring, e, true);
            std::int64_t mu = mu_e(f, t.ring, e, true);
            std::string where = t.f + " at p=" + std::to_string(t.ring.p) + " e=" +
                                std::to_string(e);
            c.expect(mu == nu + 1, "mu != nu + 1 for " + where);
            Rational lo(nu, std::int64_t(q)), hi(mu, std::int64_t(q));
            c.expect(lo >= prev_lo, "nu/q decreased for " + where);
            c.expect(hi <= prev_hi, "mu/q increased for " + where);
            prev_lo = lo;
            prev_hi = hi;
        }
    }
    c.finish();
}

std::vector<RingPresentation> bound_corpus(std::uint64_t p) {
    std::vector<RingPresentation> rings;
    rings.push_back(ambient_ring({"x"}, p));
    rings.push_back(ambient_ring({"x", "y"}, p));
    rings.push_back(ambient_ring({"x", "y", "z"}, p));
    rings.push_back(hyper("x*y - z^2", {"x", "y", "z"}, p));
    rings.push_back(hyper("x^2 - y*z", {"x", "y", "z"}, p));
    rings.push_back(hyper("x^2 + y^2 + z^2", {"x", "y", "z"}, p));
    rings.push_back(hyper("x*y", {"x", "y"}, p));
    rings.push_back(hyper("x^2 - y^2", {"x", "y"}, p));
    return rings;
}

// 7. Finite-e comparison skeleton at p in {3,5}, e = 1: exact containment
//    colength inequalities plus the Briancon-Skoda pigeonhole.
void criterion7() {
    Criterion c("7 comparison skeleton: colength inequalities + Briancon-Skoda", 300.0);
    for (std::uint64_t p : {3ull, 5ull}) {
        for (auto& ring : bound_corpus(p)) {
            auto prof = splitting_profile(ring, 1);
            auto rep = bound_check(prof, ring);
            std::string where =
                (ring.ambient_regular() ? std::string("ambient n=") +
                                              std::to_string(ring.nvars())
                                        : print_poly(ring.relation_mod_p)) +
                " at p=" + std::to_string(p);
            c.expect(rep.lower_ok, "l(R/m^{m_e}) > l(R/I_e) for " + where);
            c.expect(rep.upper_ok, "l(R/I_e) > l(R/m^{nu+1}) for " + where);
            c.expect(rep.briancon_skoda_ok, "Briancon-Skoda pigeonhole failed for " + where);
            c.expect(rep.nu_m_exact, "nu_e(m) hit its budget for " + where);
        }
    }
    c.finish();
}

// 8. Two-path oracle equivalence: kernel-rank colengths equal Groebner
//    colon-ideal colengths on >= 5 hypersurfaces at p in {3,5}, e = 1.
void criterion8() {
    Criterion c("8 two-path equivalence: kernel rank vs groebner colon colength", 300.0);
    int count = 0;
    for (std::uint64_t p : {3ull, 5ull}) {
        for (auto& ring : bound_corpus(p)) {
            if (ring.ambient_regular()) continue;
            ++count;
            auto prof = splitting_profile(ring, 1);

            std::vector<Poly> mq;
            for (std::size_t v = 0; v < ring.nvars(); ++v) {
                Monomial m(ring.nvars(), 0);
                m[v] = std::uint32_t(p);
                mq.push_back(Poly::monomial(ring.amb, ring.fp, m));
            }
            IdealBasis I(mq);
            Poly h = power_truncated(ring.relation_mod_p, p - 1, p);
            auto J = colon_ideal(I, h, MonomialOrder::grevlex());
            auto len = colength(J, MonomialOrder::grevlex());
            std::string where =
                print_poly(ring.relation_mod_p) + " at p=" + std::to_string(p);
            c.expect(len.has_value(), "infinite colon colength for " + where);
            if (len) c.expect(*len == prof.colength_Ie, "paths disagree for " + where);
        }
    }
    c.expect(count >= 10, "fewer than 5 hypersurfaces per prime");
    c.finish();
}

// 9. Determinism: repeated sweeps at parallelism 1 and 8 produce
//    byte-identical CSV.
void criterion9() {
    Criterion c("9 determinism: sweep CSV identical at parallelism 1 and 8", 300.0);
    RingSpec s;
    s.label = "a1";
    s.vars = {"x", "y", "z"};
    s.relation = "x*y - z^2";
    s.designated_elements = {{"z", "z"}};
    s.primes = {3, 5, 7, 11};
    s.e_max = 2;
    s.toric_rays = {{{1, 0}, {1, 2}}};

    std::string csv1 = report_csv(run_sweep(s, 1));
    std::string csv1b = report_csv(run_sweep(s, 1));
    std::string csv8 = report_csv(run_sweep(s, 8));
    c.expect(csv1 == csv1b, "repeated serial runs differ");
    c.expect(csv1 == csv8, "parallelism changed the CSV bytes");
    c.finish();
}

// Golden fixture: the (2,3,5) sweep CSV, produced once after oracle
// cross-checks and frozen into the corpus.
void golden_fixture(const std::string& source_dir) {
    Criterion c("golden (2,3,5) sweep CSV fixture", 300.0);
    RingSpec s;
    s.label = "weighted235";
    s.vars = {"x", "y", "z"};
    s.weights = {15, 10, 6};
    s.relation = "x^2 + y^3 + z^5";
    s.designated_elements = {{"z", "z"}};
    s.primes = {7, 11, 13};
    s.e_max = 2;
    s.assume_normal = true;

    std::string csv = report_csv(run_sweep(s, 2));
    std::ifstream in(source_dir + "/tests/golden/sweep_235.csv", std::ios::binary);
    if (!in) {
        c.expect(false, "golden file tests/golden/sweep_235.csv is missing");
    } else {
        std::stringstream ss;
        ss << in.rdbuf();
        c.expect(ss.str() == csv, "CSV deviates from the frozen fixture");
    }
    c.finish();
}

} // namespace

int main(int argc, char** argv) {
    std::string source_dir = argc > 1 ? argv[1] : ".";
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    golden_fixture(source_dir);
    if (g_failures) {
        std::printf("%d criterion(s) FAILED\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
