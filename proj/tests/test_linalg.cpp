#include <doctest.h>

#include <random>

#include "fsig/graded_blocks.hpp"
#include "fsig/groebner.hpp"
#include "fsig/parse.hpp"
#include "fsig/power.hpp"
#include "oracles.hpp"

using namespace fsig;

TEST_CASE("rank: identity and zero") {
    CHECK(rank(SparseMatrix::identity(7, 5)) == 7);
    SparseMatrix z = SparseMatrix::make(4, 6, 5, {});
    CHECK(rank(z) == 0);
}

TEST_CASE("rank matches the dense oracle on 50 random 40x40 matrices at 10% density") {
    std::mt19937_64 rng(2024);
    for (int it = 0; it < 50; ++it) {
        SparseMatrix m = oracle::random_sparse(40, 40, 5, 0.10, rng);
        CHECK(rank(m) == oracle::dense_rank(m));
    }
}

TEST_CASE("rank(M) == rank(M^T) on a random corpus") {
    std::mt19937_64 rng(99);
    for (int it = 0; it < 25; ++it) {
        SparseMatrix m = oracle::random_sparse(20 + rng() % 20, 20 + rng() % 20, 7, 0.15, rng);
        CHECK(rank(m) == rank(m.transposed()));
    }
}

TEST_CASE("kernel vectors satisfy M v = 0 and count q^n - rank") {
    std::mt19937_64 rng(5);
    PrimeField fp(7);
    for (int it = 0; it < 20; ++it) {
        SparseMatrix m = oracle::random_sparse(15, 18, 7, 0.2, rng);
        auto kb = kernel_basis(m);
        CHECK(kb.size() == m.cols - rank(m));
        for (const auto& v : kb) {
            std::vector<std::uint64_t> y(m.rows, 0);
            for (const auto& e : m.entries) y[e.row] = fp.add(y[e.row], fp.mul(e.val, v[e.col]));
            for (auto x : y) CHECK(x == 0);
        }
    }
}

TEST_CASE("wiedemann randomized rank agrees with elimination at large p") {
    std::mt19937_64 rng(77);
    for (int it = 0; it < 10; ++it) {
        SparseMatrix m = oracle::random_sparse(30, 24, 65521, 0.15, rng);
        auto est = rank_wiedemann(m, 1234 + it);
        REQUIRE(est.has_value());
        CHECK(*est == rank(m));
    }
}

namespace {

GradedBlocks blocks_for(const std::string& rel, const AmbientPtr& amb, std::uint64_t p,
                        std::uint32_t e) {
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) q *= p;
    Poly g = reduce_mod_p(parse_poly(rel, amb), p);
    Poly h = power_truncated(g, q - 1, q);
    return mult_operator(h, q);
}

} // namespace

TEST_CASE("mult_operator: spec examples") {
    auto amb = make_ambient({"x", "y", "z"});
    PrimeField f3(3);

    { // h = 1: identity blocks, full rank q^n
        GradedBlocks blocks = mult_operator(Poly::one(amb, f3), 3);
        auto prof = graded_rank_profile(blocks);
        CHECK(prof.total_rank == 27);
        CHECK(prof.kernel_dims.empty());
    }
    { // h = x^(q-1) in one variable: rank 1
        auto amb1 = make_ambient({"x"});
        Poly h = Poly::monomial(amb1, f3, {2});
        GradedBlocks blocks = mult_operator(h, 3);
        auto prof = graded_rank_profile(blocks);
        CHECK(prof.total_rank == 1);
    }
    { // h = trunc((xy - z^2)^(q-1)) at p = 3: rank matches the dense oracle
        GradedBlocks blocks = blocks_for("x*y - z^2", amb, 3, 1);
        auto prof = graded_rank_profile(blocks);
        SparseMatrix dense = mult_operator_dense(blocks.h(), 3);
        CHECK(dense.rows == 27);
        CHECK(prof.total_rank == oracle::dense_rank(dense));
    }
    { // non-homogeneous h is rejected by the graded path
        Poly bad = reduce_mod_p(parse_poly("x + y^2", amb), 3);
        CHECK_THROWS_AS(mult_operator(bad, 3), std::invalid_argument);
        CHECK_NOTHROW(mult_operator_dense(bad, 3));
    }
}

TEST_CASE("block ranks sum to the dense operator rank for n <= 3, q <= 9") {
    struct Case {
        std::string rel;
        std::vector<std::string> vars;
        WeightVector w;
        std::uint64_t p;
        std::uint32_t e;
    };
    std::vector<Case> cases = {
        {"x*y - z^2", {"x", "y", "z"}, {1, 1, 1}, 3, 1},
        {"x*y - z^2", {"x", "y", "z"}, {1, 1, 1}, 3, 2},
        {"x*y - z^2", {"x", "y", "z"}, {1, 1, 1}, 7, 1},
        {"x^2 + y^3", {"x", "y"}, {3, 2}, 7, 1},
        {"x^3 + y^3 + z^3", {"x", "y", "z"}, {1, 1, 1}, 7, 1},
    };
    for (const auto& c : cases) {
        auto amb = make_ambient(c.vars, c.w);
        GradedBlocks blocks = blocks_for(c.rel, amb, c.p, c.e);
        auto prof = graded_rank_profile(blocks);
        SparseMatrix dense = mult_operator_dense(blocks.h(), blocks.q());
        CHECK(prof.total_rank == oracle::dense_rank(dense));
    }
}

TEST_CASE("parallel and serial graded profiles agree; reference too") {
    auto amb = make_ambient({"x", "y", "z"});
    GradedBlocks blocks = blocks_for("x*y - z^2", amb, 5, 1);
    auto par = graded_rank_profile(blocks, true);
    auto ser = graded_rank_profile(blocks, false);
    auto ref = graded_rank_profile_reference(blocks);
    CHECK(par.total_rank == ser.total_rank);
    CHECK(par.total_rank == ref.total_rank);
    CHECK(par.kernel_dims == ser.kernel_dims);
    CHECK(par.kernel_dims == ref.kernel_dims);
}

TEST_CASE("kernel_min_degree: spec examples") {
    { // h = 1: all blocks injective, m_e = q * min(w)
        auto amb = make_ambient({"x", "y", "z"});
        GradedBlocks blocks = mult_operator(Poly::one(amb, PrimeField(5)), 5);
        auto kmd = kernel_min_degree(blocks);
        CHECK(kmd.m_e == 5);
    }
    { // ambient F_p[y,z] with weights (5,3), h = 1: m_e = 3q
        auto amb = make_ambient({"y", "z"}, {5, 3});
        GradedBlocks blocks = mult_operator(Poly::one(amb, PrimeField(7)), 7);
        auto kmd = kernel_min_degree(blocks);
        CHECK(kmd.m_e == 21);
    }
    { // g = xy - z^2, p = 3, e = 1: m_e equals the min weighted order over
      // the colon-ideal Groebner generators.
        auto amb = make_ambient({"x", "y", "z"});
        GradedBlocks blocks = blocks_for("x*y - z^2", amb, 3, 1);
        auto kmd = kernel_min_degree(blocks);

        std::vector<Poly> mq;
        for (std::size_t v = 0; v < 3; ++v) {
            Monomial m(3, 0);
            m[v] = 3;
            mq.push_back(Poly::monomial(amb, PrimeField(3), m));
        }
        IdealBasis I(mq);
        auto J = colon_ideal(I, blocks.h(), MonomialOrder::grevlex());
        std::uint64_t min_ord = UINT64_MAX;
        for (const auto& c : groebner_basis(J, MonomialOrder::grevlex()))
            min_ord = std::min(min_ord, *weighted_order(c));
        CHECK(kmd.m_e == min_ord);
    }
}
