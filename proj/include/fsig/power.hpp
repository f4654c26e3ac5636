#pragma once

#include <cstdint>

#include "fsig/poly.hpp"

namespace fsig {

/// Representative of g^k modulo the bracket power m^[q]: equals the full
/// expansion of g^k with every term having some exponent >= q deleted.
/// Deleting after each intermediate step is sound because the deleted terms
/// generate a monomial ideal stable under multiplication.
///
/// Two strategies sit behind the same contract. Small exponents (or bases
/// with many terms) run a square-and-multiply chain truncating after every
/// multiplication. Large exponents on few-term bases expand by the
/// multinomial theorem: surviving exponent tuples are enumerated directly
/// with per-variable headroom pruning and the coefficients come from Lucas'
/// theorem, so the intermediate blow-up of the squaring chain never
/// materializes. `parallel` splits the enumeration over OpenMP threads.
Poly power_truncated(const Poly& g, std::uint64_t k, std::uint64_t q, bool parallel = false);

/// Untruncated power (square-and-multiply). Term counts can explode; meant
/// for small oracle-grade inputs.
Poly power(const Poly& g, std::uint64_t k);

/// Serial reference: plain square-and-multiply over poly_mul_reference with
/// truncation after every step. Kept for differential testing of the
/// production kernel.
Poly power_truncated_reference(const Poly& g, std::uint64_t k, std::uint64_t q);

/// C(n, k) mod p via Lucas' theorem. Requires p <= 2^20 (factorial tables).
std::uint64_t binomial_mod_p(std::uint64_t n, std::uint64_t k, const PrimeField& fp);

} // namespace fsig
