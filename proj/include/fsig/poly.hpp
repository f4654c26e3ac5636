#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "fsig/ambient.hpp"
#include "fsig/prime_field.hpp"

namespace fsig {

using Monomial = std::vector<std::uint32_t>; // one exponent per variable, each < 2^32

/// Weighted degree of an exponent vector.
std::uint64_t weighted_degree(std::span<const std::uint32_t> exps, const WeightVector& w);

/// Canonical term order used for storage and printing: weighted degree first,
/// then plain lexicographic on the exponent vector. Any fixed total order
/// would do; this one keeps all outputs byte-deterministic.
bool canonical_less(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                    const WeightVector& w);

/// Sparse multivariate polynomial over F_p. Terms live in flat arrays
/// (struct-of-arrays) sorted by the canonical order with no zero
/// coefficients and no duplicate monomials; the zero polynomial stores
/// nothing. Immutable after construction.
class Poly {
public:
    Poly(AmbientPtr amb, PrimeField fp) : amb_(std::move(amb)), fp_(fp) {}

    /// Normalizing constructor: reduces coefficients, fuses duplicate
    /// monomials, drops zeros, sorts canonically. `exps` holds nvars()
    /// entries per term.
    static Poly make(AmbientPtr amb, PrimeField fp, std::vector<std::uint32_t> exps,
                     std::vector<std::uint64_t> coeffs);

    static Poly zero(AmbientPtr amb, PrimeField fp) { return Poly(std::move(amb), fp); }
    static Poly one(AmbientPtr amb, PrimeField fp);
    static Poly monomial(AmbientPtr amb, PrimeField fp, Monomial m, std::uint64_t c = 1);
    static Poly variable(AmbientPtr amb, PrimeField fp, std::size_t var_index);

    const Ambient& ambient() const noexcept { return *amb_; }
    const AmbientPtr& ambient_ptr() const noexcept { return amb_; }
    const PrimeField& field() const noexcept { return fp_; }

    std::size_t term_count() const noexcept { return coeffs_.size(); }
    bool is_zero() const noexcept { return coeffs_.empty(); }

    std::span<const std::uint32_t> exponents(std::size_t i) const noexcept {
        const std::size_t n = amb_->nvars();
        return {exps_.data() + i * n, n};
    }
    std::uint64_t coeff(std::size_t i) const noexcept { return coeffs_[i]; }
    std::uint64_t term_weighted_degree(std::size_t i) const {
        return weighted_degree(exponents(i), amb_->weights());
    }
    std::uint64_t term_total_degree(std::size_t i) const;

    /// Coefficient of an exact monomial (0 if absent).
    std::uint64_t coeff_of(std::span<const std::uint32_t> m) const;

    bool operator==(const Poly& o) const;

    /// True when every term has the same weighted degree (vacuously for 0).
    bool weighted_homogeneous() const;

    /// True when some term has a zero exponent vector.
    bool has_constant_term() const;

    std::map<Monomial, std::uint64_t> term_map() const; // convenience for tests

private:
    AmbientPtr amb_;
    PrimeField fp_;
    std::vector<std::uint32_t> exps_;   // nvars per term
    std::vector<std::uint64_t> coeffs_; // canonical residues, nonzero

    friend Poly finish_terms(AmbientPtr, PrimeField, std::vector<std::uint32_t>&&,
                             std::vector<std::uint64_t>&&);
};

/// Normalizing Poly builder shared by the kernels: sorts raw flat terms,
/// fuses duplicates over F_p, drops zeros.
Poly finish_terms(AmbientPtr amb, PrimeField fp, std::vector<std::uint32_t>&& exps,
                  std::vector<std::uint64_t>&& coeffs);

/// Integer-coefficient polynomial as produced by the parser; reduction mod p
/// is a separate step. Small by construction, so a map is fine here.
struct PolyZ {
    AmbientPtr amb;
    std::map<Monomial, std::int64_t> terms; // no zero values stored

    bool is_zero() const noexcept { return terms.empty(); }
    void add_term(const Monomial& m, std::int64_t c);
    /// gcd of |coefficients| (0 for the zero polynomial).
    std::int64_t content() const;
    bool has_constant_term() const;
};

/// Coefficients reduced to canonical residues; terms that vanish mod p drop out.
Poly reduce_mod_p(const PolyZ& f, std::uint64_t p);

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly neg(const Poly& a);
Poly scale(const Poly& a, std::uint64_t c);

/// Exact product. With `trunc_q` set, every product term with some exponent
/// >= trunc_q is dropped (sound under further multiplication: those terms
/// generate a monomial ideal). `parallel` distributes term generation over
/// OpenMP threads; the result is identical either way.
Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t trunc_q = 0, bool parallel = false);

/// Serial reference multiplication over a std::map, kept for differential
/// testing of poly_mul and the power kernels.
Poly poly_mul_reference(const Poly& a, const Poly& b, std::uint64_t trunc_q = 0);

/// Product by a single monomial, optionally truncated.
Poly monomial_mul(const Poly& a, std::span<const std::uint32_t> shift, std::uint64_t c,
                  std::uint64_t trunc_q = 0);

/// Drop all terms with some exponent >= q.
Poly truncate_bracket(const Poly& a, std::uint64_t q);

/// min over terms of the weighted degree; +infinity (nullopt) for zero.
std::optional<std::uint64_t> weighted_order(const Poly& f, const WeightVector& w);
std::optional<std::uint64_t> weighted_order(const Poly& f);

/// f in m^[q] = (x_1^q, ..., x_n^q)? Monomial-ideal membership is termwise:
/// true iff every term has at least one exponent >= q.
bool bracket_membership(const Poly& f, std::uint64_t q);

} // namespace fsig
