#include "fsig/frobenius.hpp"

#include <algorithm>

#include "fsig/power.hpp"

namespace fsig {

RingPresentation RingPresentation::make(AmbientPtr amb, std::optional<PolyZ> relation,
                                        std::uint64_t p, bool assume_normal) {
    PrimeField fp(p);
    Poly gp = Poly::zero(amb, fp);
    bool homog = true;
    if (relation) {
        if (!(relation->amb == nullptr) && !(*relation->amb == *amb))
            throw std::invalid_argument("RingPresentation: relation ambient mismatch");
        if (relation->is_zero())
            throw std::invalid_argument("RingPresentation: relation must be nonzero");
        if (relation->has_constant_term())
            throw std::invalid_argument("RingPresentation: relation must have zero constant term");
        gp = reduce_mod_p(*relation, p);
        if (gp.is_zero())
            throw std::invalid_argument("RingPresentation: relation vanishes mod p=" +
                                        std::to_string(p));
        homog = gp.weighted_homogeneous();
    }
    RingPresentation r{std::move(amb), std::move(relation), p,    fp,
                       std::move(gp),  false,               homog, assume_normal};
    r.is_standard_graded = r.amb->standard_graded();
    return r;
}

std::uint64_t RingPresentation::q_for(std::uint32_t e) const {
    if (e < 1) throw std::invalid_argument("q_for: e must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (q > kMaxBracketQ / p)
            throw std::overflow_error("q = p^e exceeds the bracket-power cap at p=" +
                                      std::to_string(p) + ", e=" + std::to_string(e));
        q *= p;
    }
    if (q * nvars() > kMaxBracketQ * 2)
        throw std::overflow_error("n*q exceeds the exponent budget");
    return q;
}

void FrobeniusProfile::check_invariants() const {
    if (mu_f && nu_f && *mu_f != *nu_f + 1)
        throw std::logic_error("FrobeniusProfile: mu != nu + 1");
    if (s_e < Rational(0) || s_e > Rational(1))
        throw std::logic_error("FrobeniusProfile: s_e outside [0, 1]");
    if (alpha_e && *alpha_e < Rational(0))
        throw std::logic_error("FrobeniusProfile: alpha_e negative");
}

namespace {

void validate_element(const Poly& f, const RingPresentation& ring) {
    if (!(f.ambient() == *ring.amb) || f.field().modulus() != ring.p)
        throw std::invalid_argument("element does not live in the presented ring");
    if (f.is_zero()) throw std::invalid_argument("element is zero mod p");
    if (f.has_constant_term())
        throw std::invalid_argument("element is a unit (nonzero constant term)");
}

/// trunc(g^(q-1)) for a hypersurface ring, cached per call site.
Poly fedder_multiplier(const RingPresentation& ring, std::uint64_t q, bool parallel) {
    return power_truncated(ring.relation_mod_p, q - 1, q, parallel);
}

/// Membership-with-h survival: f^r (times h for hypersurfaces) escapes m^[q].
bool survives(const Poly& f_pow_trunc, const Poly* h, std::uint64_t q, bool parallel = false) {
    if (h == nullptr) return !f_pow_trunc.is_zero();
    return !poly_mul(f_pow_trunc, *h, q, parallel).is_zero();
}

} // namespace

std::int64_t nu_e(const Poly& f, const RingPresentation& ring, std::uint32_t e, bool parallel) {
    validate_element(f, ring);
    const std::uint64_t q = ring.q_for(e);

    Poly h = Poly::zero(ring.amb, ring.fp);
    const Poly* hp = nullptr;
    if (!ring.ambient_regular()) {
        h = fedder_multiplier(ring, q, parallel);
        if (h.is_zero()) throw NotFSplitError(ring.p, e);
        hp = &h;
    }

    // r = n(q-1)+1 forces f^r into m^r subset of m^[q], so survival fails
    // there; membership is monotone in r, which makes binary search valid.
    const std::int64_t rmax = std::int64_t(ring.nvars()) * std::int64_t(q - 1) + 1;
    auto surv = [&](std::int64_t r) {
        return survives(power_truncated(f, std::uint64_t(r), q, parallel), hp, q, parallel);
    };
    if (!surv(0)) throw NotFSplitError(ring.p, e);

    std::int64_t lo = 0, hi = rmax; // surv(lo) true, surv(hi) false
    while (hi - lo > 1) {
        std::int64_t mid = lo + (hi - lo) / 2;
        (surv(mid) ? lo : hi) = mid;
    }
    return lo;
}

std::int64_t mu_e(const Poly& f, const RingPresentation& ring, std::uint32_t e, bool parallel) {
    return nu_e(f, ring, e, parallel) + 1;
}

FptResult fpt_bracket(const Poly& f, const RingPresentation& ring, std::uint32_t e_max,
                      bool parallel) {
    if (e_max < 1) throw std::invalid_argument("fpt_bracket: e_max must be >= 1");
    FptResult res;
    std::optional<Rational> lo, hi;
    for (std::uint32_t e = 1; e <= e_max; ++e) {
        std::uint64_t q;
        try {
            q = ring.q_for(e);
        } catch (const std::overflow_error&) {
            res.bracket.partial = true; // report the best bracket so far
            break;
        }
        std::int64_t nu = nu_e(f, ring, e, parallel);
        res.per_e.push_back({e, q, nu, nu + 1});
        Rational l(nu, std::int64_t(q)), u(nu + 1, std::int64_t(q));
        if (!lo || l > *lo) lo = l;
        if (!hi || u < *hi) hi = u;
        res.bracket.e_used = e;
    }
    if (!lo) throw std::overflow_error("fpt_bracket: no level fits the exponent budget");
    res.bracket.lower = *lo;
    res.bracket.upper = *hi;
    if (!(res.bracket.lower < res.bracket.upper))
        throw std::logic_error("fpt_bracket: degenerate bracket");
    return res;
}

FrobeniusProfile splitting_profile(const RingPresentation& ring, std::uint32_t e,
                                   const ProfileOptions& opts) {
    const std::uint64_t q = ring.q_for(e);
    FrobeniusProfile prof;
    prof.p = ring.p;
    prof.e = e;
    prof.q = q;
    prof.order_is_exact = ring.order_is_exact();

    const std::size_t n = ring.nvars();
    auto qpow = [&](std::size_t k) {
        std::uint64_t r = 1;
        for (std::size_t i = 0; i < k; ++i) {
            if (r > (std::uint64_t(1) << 62) / q) throw std::overflow_error("q^d overflow");
            r *= q;
        }
        return r;
    };

    if (ring.ambient_regular()) {
        // I_e = m^[q] exactly: colength q^n, one free summand per basis
        // monomial, and the lowest-degree generator is x_i^q at min weight.
        prof.colength_Ie = qpow(n);
        prof.s_e = Rational(1);
        prof.m_e = q * ring.amb->min_weight();
        prof.alpha_e = Rational(std::int64_t(ring.amb->min_weight()), 1);
        prof.check_invariants();
        return prof;
    }

    Poly h = fedder_multiplier(ring, q, opts.parallel);
    const std::uint64_t qd = qpow(ring.dim());

    if (ring.relation_weighted_homogeneous) {
        GradedBlocks blocks = mult_operator(h, q);
        KernelMinDegree kmd = kernel_min_degree(blocks, opts.parallel);
        prof.colength_Ie = kmd.profile.total_rank;
        prof.s_e = Rational(std::int64_t(kmd.profile.total_rank), std::int64_t(qd));
        prof.m_e = kmd.m_e;
        prof.alpha_e = Rational(std::int64_t(kmd.m_e), std::int64_t(q));
        prof.kernel_degree_profile = std::move(kmd.profile.kernel_dims);
    } else {
        // Ungraded fallback: rank of the dense operator; the kernel degrees
        // (and hence m_e) are not defined without the grading.
        SparseMatrix op = mult_operator_dense(h, q);
        std::uint64_t rk;
        if (opts.use_wiedemann) {
            auto est = rank_wiedemann(op, opts.seed);
            if (!est) throw std::runtime_error("wiedemann rank: projections kept disagreeing");
            rk = *est;
        } else {
            rk = rank(op);
        }
        prof.colength_Ie = rk;
        prof.s_e = Rational(std::int64_t(rk), std::int64_t(qd));
        prof.m_e = std::nullopt;
        prof.alpha_e = std::nullopt;
    }
    prof.check_invariants();
    return prof;
}

IdealNu nu_e_ideal(const std::vector<Poly>& gens, const RingPresentation& ring, std::uint32_t e,
                   std::uint64_t product_budget) {
    std::vector<Poly> gs;
    for (const auto& g : gens)
        if (!g.is_zero()) gs.push_back(g);
    if (gs.empty()) throw std::invalid_argument("nu_e_ideal: ideal must be nonzero");
    for (const auto& g : gs) validate_element(g, ring);

    const std::uint64_t q = ring.q_for(e);
    Poly h = Poly::zero(ring.amb, ring.fp);
    const Poly* hp = nullptr;
    if (!ring.ambient_regular()) {
        h = fedder_multiplier(ring, q, false);
        if (h.is_zero()) throw NotFSplitError(ring.p, e);
        hp = &h;
    }

    const std::int64_t rmax = std::int64_t(ring.nvars()) * std::int64_t(q - 1) + 1;
    std::uint64_t spent = 0;
    struct BudgetHit {};

    // Does some product of r generators (with repetition) survive? Multiset
    // recursion over exponents r_i for gs[i]; prefix products are pruned as
    // soon as they land in m^[q], since the ideal is stable under further
    // multiplication.
    auto rec = [&](auto&& self, std::size_t i, std::int64_t rem, const Poly& prefix) -> bool {
        if (spent++ > product_budget) throw BudgetHit{};
        if (i + 1 == gs.size()) {
            Poly full = poly_mul(prefix, power_truncated(gs[i], std::uint64_t(rem), q), q);
            if (full.is_zero()) return false;
            return survives(full, hp, q);
        }
        for (std::int64_t ri = 0; ri <= rem; ++ri) {
            Poly next = poly_mul(prefix, power_truncated(gs[i], std::uint64_t(ri), q), q);
            if (next.is_zero()) continue;
            if (self(self, i + 1, rem - ri, next)) return true;
        }
        return false;
    };

    std::int64_t nu = -1;
    try {
        for (std::int64_t r = 0; r <= rmax; ++r) {
            if (!rec(rec, 0, r, Poly::one(ring.amb, ring.fp))) break;
            nu = r;
        }
    } catch (const BudgetHit&) {
        return {nu, false}; // partial lower bound, flagged
    }
    if (nu < 0) throw NotFSplitError(ring.p, e);
    return {nu, true};
}

std::vector<Poly> weighted_power_ideal_gens(const AmbientPtr& amb, const PrimeField& fp,
                                            std::uint64_t k) {
    const std::size_t n = amb->nvars();
    const auto& w = amb->weights();
    std::vector<Poly> out;
    if (k == 0) {
        out.push_back(Poly::one(amb, fp));
        return out;
    }
    // A minimal generator m satisfies wdeg(m) >= k while dropping any
    // positive coordinate lands below k; in particular wdeg(m) < k + max(w),
    // which bounds the enumeration box.
    std::uint64_t maxw = *std::max_element(w.begin(), w.end());
    const std::uint64_t cap = k + maxw; // exclusive bound on wdeg
    Monomial cur(n, 0);
    auto rec = [&](auto&& self, std::size_t v, std::uint64_t deg) -> void {
        if (v == n) {
            if (deg < k) return;
            for (std::size_t u = 0; u < n; ++u)
                if (cur[u] > 0 && deg - w[u] >= k) return; // not minimal
            out.push_back(Poly::monomial(amb, fp, cur));
            return;
        }
        for (std::uint64_t a = 0; deg + a * w[v] < cap; ++a) {
            cur[v] = static_cast<std::uint32_t>(a);
            self(self, v + 1, deg + a * w[v]);
        }
        cur[v] = 0;
    };
    rec(rec, 0, 0);
    return out;
}

std::vector<Poly> maximal_ideal_power_gens(const AmbientPtr& amb, const PrimeField& fp,
                                           std::uint64_t k) {
    // All monomials of total degree exactly k.
    const std::size_t n = amb->nvars();
    std::vector<Poly> out;
    Monomial cur(n, 0);
    auto rec = [&](auto&& self, std::size_t v, std::uint64_t rem) -> void {
        if (v + 1 == n) {
            cur[v] = static_cast<std::uint32_t>(rem);
            out.push_back(Poly::monomial(amb, fp, cur));
            cur[v] = 0;
            return;
        }
        for (std::uint64_t a = 0; a <= rem; ++a) {
            cur[v] = static_cast<std::uint32_t>(a);
            self(self, v + 1, rem - a);
        }
        cur[v] = 0;
    };
    rec(rec, 0, k);
    return out;
}

BoundCheckReport bound_check(const FrobeniusProfile& profile, const RingPresentation& ring,
                             const GroebnerOptions& gopts) {
    if (!profile.m_e)
        throw std::invalid_argument("bound_check: profile has no m_e (dense path?)");
    BoundCheckReport rep;
    rep.len_mod_Ie = profile.colength_Ie;
    const MonomialOrder ord = MonomialOrder::wgrevlex();

    auto colength_in_R = [&](std::vector<Poly> gens) -> std::uint64_t {
        if (!ring.ambient_regular()) gens.push_back(ring.relation_mod_p);
        IdealBasis ideal(std::move(gens));
        auto len = colength(ideal, ord, gopts);
        if (!len) throw std::logic_error("bound_check: unexpectedly infinite colength");
        return *len;
    };

    // I_e lives inside the weighted-power ideal at m_e by construction, so
    // R/I_e surjects onto R/M_{m_e}.
    rep.len_mod_me = colength_in_R(weighted_power_ideal_gens(ring.amb, ring.fp, *profile.m_e));
    rep.lower_ok = rep.len_mod_me <= rep.len_mod_Ie;

    // m^(nu_e(m) + 1) is contained in I_e.
    std::vector<Poly> mvars;
    for (std::size_t v = 0; v < ring.nvars(); ++v)
        mvars.push_back(Poly::variable(ring.amb, ring.fp, v));
    IdealNu num = nu_e_ideal(mvars, ring, profile.e);
    rep.nu_m = num.value;
    rep.nu_m_exact = num.exact;
    rep.len_mod_m_nu1 = colength_in_R(
        maximal_ideal_power_gens(ring.amb, ring.fp, std::uint64_t(num.value) + 1));
    rep.upper_ok = rep.len_mod_Ie <= rep.len_mod_m_nu1;

    // Briancon-Skoda pigeonhole: every monomial of total degree n*q lies in
    // m^[q]. Checked exhaustively, not sampled.
    rep.briancon_skoda_ok = true;
    for (const auto& mono :
         maximal_ideal_power_gens(ring.amb, ring.fp, ring.nvars() * profile.q)) {
        if (!bracket_membership(mono, profile.q)) {
            rep.briancon_skoda_ok = false;
            break;
        }
    }
    return rep;
}

} // namespace fsig
