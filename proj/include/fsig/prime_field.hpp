#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fsig {

#if !defined(__SIZEOF_INT128__)
#error "fsig requires compiler support for unsigned __int128 (GCC/Clang)."
#endif

using u128 = unsigned __int128;

/// Deterministic Miller-Rabin, valid for all n < 3'215'031'751 with the
/// witness set {2, 3, 5, 7}. All moduli we accept are below 2^31.
bool is_prime_u64(std::uint64_t n) noexcept;

/// Arithmetic context for the prime field F_p with 3 <= p < 2^31, p odd.
/// Elements are canonical residues in [0, p) stored as uint64_t; products
/// are reduced with a precomputed Barrett constant so the powering kernels
/// never touch a hardware division.
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p) : p_(p) {
        if (p < 3 || p >= (1ull << 31))
            throw std::invalid_argument("PrimeField: modulus must satisfy 3 <= p < 2^31, got " +
                                        std::to_string(p));
        if (p % 2 == 0 || !is_prime_u64(p))
            throw std::invalid_argument("PrimeField: modulus " + std::to_string(p) +
                                        " is not an odd prime");
        // floor((2^64 - 1) / p); the quotient estimate it yields is off by at
        // most 2, fixed up by the conditional subtractions in reduce().
        barrett_ = ~std::uint64_t{0} / p;
    }

    std::uint64_t modulus() const noexcept { return p_; }

    /// Reduce a product (or any value < 2^62) to [0, p).
    std::uint64_t reduce(std::uint64_t r) const noexcept {
        std::uint64_t qhat = static_cast<std::uint64_t>((u128(r) * barrett_) >> 64);
        r -= qhat * p_;
        if (r >= p_) r -= p_;
        if (r >= p_) r -= p_;
        return r;
    }

    std::uint64_t from_int(std::int64_t x) const noexcept {
        std::int64_t m = x % static_cast<std::int64_t>(p_);
        if (m < 0) m += static_cast<std::int64_t>(p_);
        return static_cast<std::uint64_t>(m);
    }

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return reduce(a * b); }

    std::uint64_t pow(std::uint64_t a, std::uint64_t k) const noexcept {
        std::uint64_t acc = 1 % p_;
        a %= p_;
        while (k) {
            if (k & 1) acc = mul(acc, a);
            a = mul(a, a);
            k >>= 1;
        }
        return acc;
    }

    std::uint64_t inv(std::uint64_t a) const {
        a %= p_;
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        return pow(a, p_ - 2);
    }

    std::uint64_t div(std::uint64_t a, std::uint64_t b) const { return mul(a, inv(b)); }

    bool operator==(const PrimeField& o) const noexcept { return p_ == o.p_; }

private:
    std::uint64_t p_;
    std::uint64_t barrett_;
};

} // namespace fsig
