#include "fsig/poly.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fsig {

std::uint64_t weighted_degree(std::span<const std::uint32_t> exps, const WeightVector& w) {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < exps.size(); ++i) d += std::uint64_t(exps[i]) * w[i];
    return d;
}

bool canonical_less(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                    const WeightVector& w) {
    const std::uint64_t da = weighted_degree(a, w), db = weighted_degree(b, w);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

void check_same_ambient(const Poly& a, const Poly& b, const char* op) {
    if (!(a.ambient() == b.ambient()))
        throw std::invalid_argument(std::string(op) + ": ambient mismatch");
    if (a.field().modulus() != b.field().modulus())
        throw std::invalid_argument(std::string(op) + ": modulus mismatch");
}

} // namespace

/// Shared normalization: sort raw terms canonically, fuse equal monomials
/// over F_p, drop zeros. Sorting goes through an index permutation so the
/// flat exponent array is only rewritten once.
Poly finish_terms(AmbientPtr amb, PrimeField fp, std::vector<std::uint32_t>&& exps,
                  std::vector<std::uint64_t>&& coeffs) {
    const std::size_t n = amb->nvars();
    const std::size_t m = coeffs.size();
    const WeightVector& w = amb->weights();

    std::vector<std::uint32_t> idx(m);
    std::iota(idx.begin(), idx.end(), 0u);
    auto term = [&](std::uint32_t i) {
        return std::span<const std::uint32_t>(exps.data() + std::size_t(i) * n, n);
    };
    std::sort(idx.begin(), idx.end(), [&](std::uint32_t i, std::uint32_t j) {
        return canonical_less(term(i), term(j), w);
    });

    Poly out(std::move(amb), fp);
    out.exps_.reserve(exps.size());
    out.coeffs_.reserve(m);
    std::size_t i = 0;
    while (i < m) {
        auto rep = term(idx[i]);
        std::uint64_t acc = coeffs[idx[i]] % fp.modulus();
        std::size_t j = i + 1;
        while (j < m && std::ranges::equal(term(idx[j]), rep)) {
            acc = fp.add(acc, coeffs[idx[j]] % fp.modulus());
            ++j;
        }
        if (acc != 0) {
            out.exps_.insert(out.exps_.end(), rep.begin(), rep.end());
            out.coeffs_.push_back(acc);
        }
        i = j;
    }
    return out;
}

Poly Poly::make(AmbientPtr amb, PrimeField fp, std::vector<std::uint32_t> exps,
                std::vector<std::uint64_t> coeffs) {
    if (exps.size() != coeffs.size() * amb->nvars())
        throw std::invalid_argument("Poly::make: exponent/coefficient size mismatch");
    return finish_terms(std::move(amb), fp, std::move(exps), std::move(coeffs));
}

Poly Poly::one(AmbientPtr amb, PrimeField fp) {
    std::vector<std::uint32_t> e(amb->nvars(), 0);
    return make(std::move(amb), fp, std::move(e), {1});
}

Poly Poly::monomial(AmbientPtr amb, PrimeField fp, Monomial m, std::uint64_t c) {
    if (m.size() != amb->nvars())
        throw std::invalid_argument("Poly::monomial: exponent vector length mismatch");
    return make(std::move(amb), fp, std::move(m), {c});
}

Poly Poly::variable(AmbientPtr amb, PrimeField fp, std::size_t var_index) {
    Monomial m(amb->nvars(), 0);
    m.at(var_index) = 1;
    return monomial(std::move(amb), fp, std::move(m));
}

std::uint64_t Poly::term_total_degree(std::size_t i) const {
    auto e = exponents(i);
    std::uint64_t d = 0;
    for (auto x : e) d += x;
    return d;
}

std::uint64_t Poly::coeff_of(std::span<const std::uint32_t> m) const {
    for (std::size_t i = 0; i < term_count(); ++i)
        if (std::ranges::equal(exponents(i), m)) return coeffs_[i];
    return 0;
}

bool Poly::operator==(const Poly& o) const {
    return ambient() == o.ambient() && fp_.modulus() == o.fp_.modulus() && exps_ == o.exps_ &&
           coeffs_ == o.coeffs_;
}

bool Poly::weighted_homogeneous() const {
    if (is_zero()) return true;
    const std::uint64_t d = term_weighted_degree(0);
    for (std::size_t i = 1; i < term_count(); ++i)
        if (term_weighted_degree(i) != d) return false;
    return true;
}

bool Poly::has_constant_term() const {
    for (std::size_t i = 0; i < term_count(); ++i) {
        auto e = exponents(i);
        if (std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; })) return true;
    }
    return false;
}

std::map<Monomial, std::uint64_t> Poly::term_map() const {
    std::map<Monomial, std::uint64_t> m;
    for (std::size_t i = 0; i < term_count(); ++i) {
        auto e = exponents(i);
        m.emplace(Monomial(e.begin(), e.end()), coeffs_[i]);
    }
    return m;
}

void PolyZ::add_term(const Monomial& m, std::int64_t c) {
    if (m.size() != amb->nvars())
        throw std::invalid_argument("PolyZ: exponent vector length mismatch");
    auto it = terms.find(m);
    if (it == terms.end()) {
        if (c != 0) terms.emplace(m, c);
        return;
    }
    // Checked addition: parser inputs are desk scale, overflow means garbage.
    __int128 s = __int128(it->second) + c;
    if (s > INT64_MAX || s < INT64_MIN) throw std::overflow_error("PolyZ: coefficient overflow");
    it->second = static_cast<std::int64_t>(s);
    if (it->second == 0) terms.erase(it);
}

std::int64_t PolyZ::content() const {
    std::int64_t g = 0;
    for (const auto& [m, c] : terms) g = std::gcd(g, c < 0 ? -c : c);
    return g;
}

bool PolyZ::has_constant_term() const {
    for (const auto& [m, c] : terms)
        if (std::all_of(m.begin(), m.end(), [](std::uint32_t x) { return x == 0; })) return true;
    return false;
}

Poly reduce_mod_p(const PolyZ& f, std::uint64_t p) {
    PrimeField fp(p);
    std::vector<std::uint32_t> exps;
    std::vector<std::uint64_t> coeffs;
    exps.reserve(f.terms.size() * f.amb->nvars());
    coeffs.reserve(f.terms.size());
    for (const auto& [m, c] : f.terms) {
        std::uint64_t r = fp.from_int(c);
        if (r == 0) continue;
        exps.insert(exps.end(), m.begin(), m.end());
        coeffs.push_back(r);
    }
    return finish_terms(f.amb, fp, std::move(exps), std::move(coeffs));
}

Poly add(const Poly& a, const Poly& b) {
    check_same_ambient(a, b, "add");
    const std::size_t n = a.ambient().nvars();
    std::vector<std::uint32_t> exps;
    std::vector<std::uint64_t> coeffs;
    exps.reserve((a.term_count() + b.term_count()) * n);
    coeffs.reserve(a.term_count() + b.term_count());
    for (const Poly* f : {&a, &b})
        for (std::size_t i = 0; i < f->term_count(); ++i) {
            auto e = f->exponents(i);
            exps.insert(exps.end(), e.begin(), e.end());
            coeffs.push_back(f->coeff(i));
        }
    return finish_terms(a.ambient_ptr(), a.field(), std::move(exps), std::move(coeffs));
}

Poly neg(const Poly& a) { return scale(a, a.field().modulus() - 1); }

Poly sub(const Poly& a, const Poly& b) { return add(a, neg(b)); }

Poly scale(const Poly& a, std::uint64_t c) {
    const auto& fp = a.field();
    c = fp.reduce(c % fp.modulus());
    std::vector<std::uint32_t> exps;
    std::vector<std::uint64_t> coeffs;
    if (c != 0) {
        exps.reserve(a.term_count() * a.ambient().nvars());
        coeffs.reserve(a.term_count());
        for (std::size_t i = 0; i < a.term_count(); ++i) {
            auto e = a.exponents(i);
            exps.insert(exps.end(), e.begin(), e.end());
            coeffs.push_back(fp.mul(a.coeff(i), c));
        }
    }
    return finish_terms(a.ambient_ptr(), a.field(), std::move(exps), std::move(coeffs));
}

namespace {

/// Append the products of term ai of `a` with every term of `b` (truncated).
void emit_row(const Poly& a, const Poly& b, std::size_t ai, std::uint64_t trunc_q,
              std::vector<std::uint32_t>& exps, std::vector<std::uint64_t>& coeffs) {
    const std::size_t n = a.ambient().nvars();
    const auto& fp = a.field();
    auto ea = a.exponents(ai);
    const std::uint64_t ca = a.coeff(ai);
    for (std::size_t bi = 0; bi < b.term_count(); ++bi) {
        auto eb = b.exponents(bi);
        bool alive = true;
        std::uint32_t tmp[64];
        for (std::size_t v = 0; v < n; ++v) {
            std::uint64_t s = std::uint64_t(ea[v]) + eb[v];
            if (s > 0xffffffffull) throw std::overflow_error("poly_mul: exponent overflow");
            if (trunc_q && s >= trunc_q) { alive = false; break; }
            tmp[v] = static_cast<std::uint32_t>(s);
        }
        if (!alive) continue;
        exps.insert(exps.end(), tmp, tmp + n);
        coeffs.push_back(fp.mul(ca, b.coeff(bi)));
    }
}

} // namespace

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t trunc_q, bool parallel) {
    check_same_ambient(a, b, "poly_mul");
    if (a.ambient().nvars() > 64) throw std::invalid_argument("poly_mul: too many variables");
    if (a.is_zero() || b.is_zero()) return Poly::zero(a.ambient_ptr(), a.field());

    std::vector<std::uint32_t> exps;
    std::vector<std::uint64_t> coeffs;

#ifdef _OPENMP
    if (parallel && a.term_count() >= 64) {
        const int nt = omp_get_max_threads();
        std::vector<std::vector<std::uint32_t>> texps(nt);
        std::vector<std::vector<std::uint64_t>> tcoeffs(nt);
#pragma omp parallel
        {
            const int t = omp_get_thread_num();
#pragma omp for schedule(static)
            for (std::int64_t ai = 0; ai < std::int64_t(a.term_count()); ++ai)
                emit_row(a, b, std::size_t(ai), trunc_q, texps[t], tcoeffs[t]);
        }
        // Merge order does not matter: normalization fuses by monomial and
        // F_p addition is exact.
        std::size_t total = 0;
        for (auto& tc : tcoeffs) total += tc.size();
        exps.reserve(total * a.ambient().nvars());
        coeffs.reserve(total);
        for (int t = 0; t < nt; ++t) {
            exps.insert(exps.end(), texps[t].begin(), texps[t].end());
            coeffs.insert(coeffs.end(), tcoeffs[t].begin(), tcoeffs[t].end());
        }
        return finish_terms(a.ambient_ptr(), a.field(), std::move(exps), std::move(coeffs));
    }
#else
    (void)parallel;
#endif

    exps.reserve(a.term_count() * b.term_count() * a.ambient().nvars());
    coeffs.reserve(a.term_count() * b.term_count());
    for (std::size_t ai = 0; ai < a.term_count(); ++ai) emit_row(a, b, ai, trunc_q, exps, coeffs);
    return finish_terms(a.ambient_ptr(), a.field(), std::move(exps), std::move(coeffs));
}

Poly poly_mul_reference(const Poly& a, const Poly& b, std::uint64_t trunc_q) {
    check_same_ambient(a, b, "poly_mul_reference");
    const std::size_t n = a.ambient().nvars();
    const auto& fp = a.field();
    std::map<Monomial, std::uint64_t> acc;
    for (std::size_t ai = 0; ai < a.term_count(); ++ai) {
        auto ea = a.exponents(ai);
        for (std::size_t bi = 0; bi < b.term_count(); ++bi) {
            auto eb = b.exponents(bi);
            Monomial m(n);
            bool alive = true;
            for (std::size_t v = 0; v < n; ++v) {
                std::uint64_t s = std::uint64_t(ea[v]) + eb[v];
                if (s > 0xffffffffull)
                    throw std::overflow_error("poly_mul_reference: exponent overflow");
                if (trunc_q && s >= trunc_q) { alive = false; break; }
                m[v] = static_cast<std::uint32_t>(s);
            }
            if (!alive) continue;
            std::uint64_t& slot = acc[m];
            slot = fp.add(slot, fp.mul(a.coeff(ai), b.coeff(bi)));
        }
    }
    std::vector<std::uint32_t> exps;
    std::vector<std::uint64_t> coeffs;
    for (const auto& [m, c] : acc) {
        if (c == 0) continue;
        exps.insert(exps.end(), m.begin(), m.end());
        coeffs.push_back(c);
    }
    return finish_terms(a.ambient_ptr(), a.field(), std::move(exps), std::move(coeffs));
}

Poly monomial_mul(const Poly& a, std::span<const std::uint32_t> shift, std::uint64_t c,
                  std::uint64_t trunc_q) {
    const std::size_t n = a.ambient().nvars();
    if (shift.size() != n) throw std::invalid_argument("monomial_mul: shift length mismatch");
    const auto& fp = a.field();
    c %= fp.modulus();
    std::vector<std::uint32_t> exps;
    std::vector<std::uint64_t> coeffs;
    if (c != 0) {
        exps.reserve(a.term_count() * n);
        coeffs.reserve(a.term_count());
        for (std::size_t i = 0; i < a.term_count(); ++i) {
            auto e = a.exponents(i);
            bool alive = true;
            std::uint32_t tmp[64];
            for (std::size_t v = 0; v < n; ++v) {
                std::uint64_t s = std::uint64_t(e[v]) + shift[v];
                if (s > 0xffffffffull) throw std::overflow_error("monomial_mul: exponent overflow");
                if (trunc_q && s >= trunc_q) { alive = false; break; }
                tmp[v] = static_cast<std::uint32_t>(s);
            }
            if (!alive) continue;
            exps.insert(exps.end(), tmp, tmp + n);
            coeffs.push_back(fp.mul(a.coeff(i), c));
        }
    }
    return finish_terms(a.ambient_ptr(), a.field(), std::move(exps), std::move(coeffs));
}

Poly truncate_bracket(const Poly& a, std::uint64_t q) {
    std::vector<std::uint32_t> exps;
    std::vector<std::uint64_t> coeffs;
    const std::size_t n = a.ambient().nvars();
    for (std::size_t i = 0; i < a.term_count(); ++i) {
        auto e = a.exponents(i);
        if (std::any_of(e.begin(), e.end(), [&](std::uint32_t x) { return x >= q; })) continue;
        exps.insert(exps.end(), e.begin(), e.end());
        coeffs.push_back(a.coeff(i));
    }
    return finish_terms(a.ambient_ptr(), a.field(), std::move(exps), std::move(coeffs));
}

std::optional<std::uint64_t> weighted_order(const Poly& f, const WeightVector& w) {
    if (f.is_zero()) return std::nullopt; // +infinity sentinel, never a number
    std::uint64_t best = UINT64_MAX;
    for (std::size_t i = 0; i < f.term_count(); ++i)
        best = std::min(best, weighted_degree(f.exponents(i), w));
    return best;
}

std::optional<std::uint64_t> weighted_order(const Poly& f) {
    return weighted_order(f, f.ambient().weights());
}

bool bracket_membership(const Poly& f, std::uint64_t q) {
    if (q < 1) throw std::invalid_argument("bracket_membership: q must be >= 1");
    for (std::size_t i = 0; i < f.term_count(); ++i) {
        auto e = f.exponents(i);
        if (std::none_of(e.begin(), e.end(), [&](std::uint32_t x) { return x >= q; }))
            return false;
    }
    return true;
}

} // namespace fsig
