#include "fsig/prime_field.hpp"

namespace fsig {

namespace {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((u128(a) * b) % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t k, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (k) {
        if (k & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        k >>= 1;
    }
    return r;
}

} // namespace

bool is_prime_u64(std::uint64_t n) noexcept {
    if (n < 2) return false;
    for (std::uint64_t sp : {2ull, 3ull, 5ull, 7ull}) {
        if (n == sp) return true;
        if (n % sp == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

} // namespace fsig
