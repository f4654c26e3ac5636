#include "fsig/power.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fsig {

namespace {

constexpr std::uint64_t kLucasTableMax = 1u << 20;

/// Factorials and inverse factorials mod p for per-digit binomials.
struct FactTables {
    std::vector<std::uint64_t> fact, ifact;

    explicit FactTables(const PrimeField& fp) {
        const std::uint64_t p = fp.modulus();
        fact.resize(p);
        ifact.resize(p);
        fact[0] = 1;
        for (std::uint64_t i = 1; i < p; ++i) fact[i] = fp.mul(fact[i - 1], i);
        ifact[p - 1] = fp.inv(fact[p - 1]);
        for (std::uint64_t i = p - 1; i > 0; --i) ifact[i - 1] = fp.mul(ifact[i], i);
    }

    std::uint64_t small_binom(std::uint64_t n, std::uint64_t k, const PrimeField& fp) const {
        if (k > n) return 0;
        return fp.mul(fact[n], fp.mul(ifact[k], ifact[n - k]));
    }
};

std::uint64_t lucas_binom(std::uint64_t n, std::uint64_t k, const PrimeField& fp,
                          const FactTables& t) {
    const std::uint64_t p = fp.modulus();
    std::uint64_t r = 1;
    while (k > 0 || n > 0) {
        std::uint64_t nd = n % p, kd = k % p;
        if (kd > nd) return 0;
        r = fp.mul(r, t.small_binom(nd, kd, fp));
        n /= p;
        k /= p;
    }
    return r;
}

struct TermData {
    std::vector<std::uint32_t> exps; // nvars per base term
    std::vector<std::uint64_t> coeffs;
    std::size_t count = 0;
};

/// Enumerates compositions k_0 + ... + k_{t-1} = k whose combined exponent
/// vector stays below q in every coordinate, appending surviving terms.
/// Prunes on (a) per-variable headroom, (b) completions that cannot reach k,
/// (c) partial Lucas coefficient zero (a zero digit product kills every
/// completion). Throws on node-budget exhaustion so the caller can fall back.
struct MultinomialEnum {
    const Poly& g;
    std::uint64_t k, q;
    const PrimeField& fp;
    const FactTables& tables;
    std::size_t nvars, nterms;
    std::vector<std::uint64_t> static_cap;        // per base term, ignoring interactions
    std::vector<std::uint64_t> suffix_cap;        // sum of static caps from slot j on
    std::uint64_t node_budget;

    std::uint64_t cap_for(std::size_t j, std::span<const std::uint32_t> cur) const {
        std::uint64_t cap = k;
        auto bj = g.exponents(j);
        for (std::size_t v = 0; v < nvars; ++v) {
            if (bj[v] == 0) continue;
            std::uint64_t room = (q - 1 - cur[v]) / bj[v];
            cap = std::min(cap, room);
        }
        return cap;
    }

    void run(std::size_t j, std::uint64_t rem, std::vector<std::uint32_t>& cur,
             std::uint64_t coeff, std::vector<std::uint32_t>& exps,
             std::vector<std::uint64_t>& coeffs, std::uint64_t& nodes) {
        if (++nodes > node_budget) throw std::length_error("multinomial enumeration budget");
        if (j + 1 == nterms) {
            // Last slot takes the remainder.
            if (rem > cap_for(j, cur)) return;
            // Final binomial C(rem, rem) = 1; only the base coefficient power remains.
            std::uint64_t c = fp.mul(coeff, fp.pow(g.coeff(j), rem));
            if (c == 0) return;
            auto bj = g.exponents(j);
            for (std::size_t v = 0; v < nvars; ++v)
                exps.push_back(cur[v] + static_cast<std::uint32_t>(rem * bj[v]));
            coeffs.push_back(c);
            return;
        }
        const std::uint64_t cap = std::min(cap_for(j, cur), rem);
        const std::uint64_t tail = suffix_cap[j + 1];
        const std::uint64_t lo = rem > tail ? rem - tail : 0;
        auto bj = g.exponents(j);
        for (std::uint64_t kj = lo; kj <= cap; ++kj) {
            std::uint64_t c = fp.mul(coeff, lucas_binom(rem, kj, fp, tables));
            if (c == 0) continue; // every completion inherits the zero digit product
            c = fp.mul(c, fp.pow(g.coeff(j), kj));
            std::vector<std::uint32_t> next(cur);
            for (std::size_t v = 0; v < nvars; ++v)
                next[v] = cur[v] + static_cast<std::uint32_t>(kj * bj[v]);
            run(j + 1, rem - kj, next, c, exps, coeffs, nodes);
        }
    }
};

Poly power_truncated_multinomial(const Poly& g, std::uint64_t k, std::uint64_t q, bool parallel) {
    const auto& fp = g.field();
    const std::size_t nterms = g.term_count();
    FactTables tables(fp);

    MultinomialEnum e{g, k, q, fp, tables, g.ambient().nvars(), nterms, {}, {}, 50'000'000};
    e.static_cap.resize(nterms);
    for (std::size_t j = 0; j < nterms; ++j) {
        std::vector<std::uint32_t> origin(e.nvars, 0);
        e.static_cap[j] = e.cap_for(j, origin);
    }
    e.suffix_cap.assign(nterms + 1, 0);
    for (std::size_t j = nterms; j-- > 0;) {
        std::uint64_t s = e.suffix_cap[j + 1] + e.static_cap[j];
        e.suffix_cap[j] = std::min(s, k); // saturate; only compared against rem <= k
    }
    if (e.suffix_cap[0] < k) return Poly::zero(g.ambient_ptr(), g.field()); // nothing survives

    const std::uint64_t cap0 = std::min(e.static_cap[0], k);
    const std::uint64_t lo0 = k > e.suffix_cap[1] ? k - e.suffix_cap[1] : 0;

    std::vector<std::uint32_t> exps;
    std::vector<std::uint64_t> coeffs;

    auto emit_k0 = [&](std::uint64_t k0, std::vector<std::uint32_t>& texps,
                       std::vector<std::uint64_t>& tcoeffs, std::uint64_t& nodes) {
        std::uint64_t c = lucas_binom(k, k0, fp, tables);
        if (c == 0) return;
        c = fp.mul(c, fp.pow(g.coeff(0), k0));
        std::vector<std::uint32_t> cur(e.nvars, 0);
        auto b0 = g.exponents(0);
        for (std::size_t v = 0; v < e.nvars; ++v)
            cur[v] = static_cast<std::uint32_t>(k0 * b0[v]);
        if (nterms == 1) {
            if (c != 0 && k0 == k) {
                texps.insert(texps.end(), cur.begin(), cur.end());
                tcoeffs.push_back(c);
            }
            return;
        }
        e.run(1, k - k0, cur, c, texps, tcoeffs, nodes);
    };

    if (nterms == 1) {
        std::uint64_t nodes = 0;
        // Single-term base: survives iff k * b stays below q everywhere.
        if (cap0 >= k && lo0 <= k) emit_k0(k, exps, coeffs, nodes);
        return finish_terms(g.ambient_ptr(), g.field(), std::move(exps), std::move(coeffs));
    }

#ifdef _OPENMP
    if (parallel && cap0 > lo0 + 16) {
        const std::uint64_t span = cap0 - lo0 + 1;
        std::vector<std::vector<std::uint32_t>> texps(span);
        std::vector<std::vector<std::uint64_t>> tcoeffs(span);
        bool budget_hit = false;
#pragma omp parallel for schedule(dynamic, 8)
        for (std::int64_t i = 0; i < std::int64_t(span); ++i) {
            std::uint64_t nodes = 0;
            try {
                emit_k0(lo0 + std::uint64_t(i), texps[i], tcoeffs[i], nodes);
            } catch (const std::length_error&) {
#pragma omp critical
                budget_hit = true;
            }
        }
        if (budget_hit) throw std::length_error("multinomial enumeration budget");
        std::size_t total = 0;
        for (auto& tc : tcoeffs) total += tc.size();
        exps.reserve(total * e.nvars);
        coeffs.reserve(total);
        for (std::size_t i = 0; i < span; ++i) {
            exps.insert(exps.end(), texps[i].begin(), texps[i].end());
            coeffs.insert(coeffs.end(), tcoeffs[i].begin(), tcoeffs[i].end());
        }
        return finish_terms(g.ambient_ptr(), g.field(), std::move(exps), std::move(coeffs));
    }
#else
    (void)parallel;
#endif

    std::uint64_t nodes = 0;
    for (std::uint64_t k0 = lo0; k0 <= cap0; ++k0) emit_k0(k0, exps, coeffs, nodes);
    return finish_terms(g.ambient_ptr(), g.field(), std::move(exps), std::move(coeffs));
}

Poly power_square_multiply(const Poly& g, std::uint64_t k, std::uint64_t q, bool parallel) {
    Poly acc = Poly::one(g.ambient_ptr(), g.field());
    if (k == 0) return acc;
    Poly base = q ? truncate_bracket(g, q) : g;
    for (std::uint64_t bit = std::uint64_t(1) << (63 - __builtin_clzll(k)); bit; bit >>= 1) {
        acc = poly_mul(acc, acc, q, parallel);
        if (k & bit) acc = poly_mul(acc, base, q, parallel);
    }
    return acc;
}

void check_exponent_overflow(const Poly& g, std::uint64_t k) {
    for (std::size_t i = 0; i < g.term_count(); ++i)
        for (auto e : g.exponents(i))
            if (e && k > 0xffffffffull / e)
                throw std::overflow_error("power_truncated: exponent exceeds 32-bit bound");
}

} // namespace

Poly power_truncated(const Poly& g, std::uint64_t k, std::uint64_t q, bool parallel) {
    if (q < 1) throw std::invalid_argument("power_truncated: q must be >= 1");
    if (k == 0) return Poly::one(g.ambient_ptr(), g.field());
    Poly base = truncate_bracket(g, q);
    if (base.is_zero()) return Poly::zero(g.ambient_ptr(), g.field());
    check_exponent_overflow(base, k);

    const bool lucas_ok = g.field().modulus() <= kLucasTableMax;
    if (lucas_ok && k >= 16 && base.term_count() <= 8) {
        try {
            return power_truncated_multinomial(base, k, q, parallel);
        } catch (const std::length_error&) {
            // Enumeration too branchy for this base; the chain below is
            // always correct, just slower.
        }
    }
    return power_square_multiply(base, k, q, parallel);
}

Poly power(const Poly& g, std::uint64_t k) {
    if (k == 0) return Poly::one(g.ambient_ptr(), g.field());
    check_exponent_overflow(g, k);
    return power_square_multiply(g, k, 0, false);
}

Poly power_truncated_reference(const Poly& g, std::uint64_t k, std::uint64_t q) {
    if (q < 1) throw std::invalid_argument("power_truncated_reference: q must be >= 1");
    Poly acc = Poly::one(g.ambient_ptr(), g.field());
    if (k == 0) return acc;
    Poly base = truncate_bracket(g, q);
    for (std::uint64_t bit = std::uint64_t(1) << (63 - __builtin_clzll(k)); bit; bit >>= 1) {
        acc = poly_mul_reference(acc, acc, q);
        if (k & bit) acc = poly_mul_reference(acc, base, q);
    }
    return acc;
}

std::uint64_t binomial_mod_p(std::uint64_t n, std::uint64_t k, const PrimeField& fp) {
    if (fp.modulus() > kLucasTableMax)
        throw std::invalid_argument("binomial_mod_p: modulus too large for factorial tables");
    FactTables t(fp);
    return lucas_binom(n, k, fp, t);
}

} // namespace fsig
