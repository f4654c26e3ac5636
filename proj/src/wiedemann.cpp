#include <random>

#include "fsig/sparse_matrix.hpp"

namespace fsig {

namespace {

/// Berlekamp-Massey: degree of the minimal generating polynomial of the
/// sequence, plus whether its constant coefficient vanishes.
struct MinPoly {
    std::size_t degree;
    bool divisible_by_x;
};

MinPoly berlekamp_massey(const std::vector<std::uint64_t>& s, const PrimeField& fp) {
    std::vector<std::uint64_t> c{1}, b{1};
    std::size_t l = 0, m = 1;
    std::uint64_t bb = 1;
    for (std::size_t n = 0; n < s.size(); ++n) {
        std::uint64_t d = s[n];
        for (std::size_t i = 1; i <= l; ++i) d = fp.add(d, fp.mul(c[i], s[n - i]));
        if (d == 0) {
            ++m;
        } else if (2 * l <= n) {
            auto t = c;
            std::uint64_t coef = fp.mul(d, fp.inv(bb));
            c.resize(std::max(c.size(), b.size() + m), 0);
            for (std::size_t i = 0; i < b.size(); ++i)
                c[i + m] = fp.sub(c[i + m], fp.mul(coef, b[i]));
            l = n + 1 - l;
            b = std::move(t);
            bb = d;
            m = 1;
        } else {
            std::uint64_t coef = fp.mul(d, fp.inv(bb));
            c.resize(std::max(c.size(), b.size() + m), 0);
            for (std::size_t i = 0; i < b.size(); ++i)
                c[i + m] = fp.sub(c[i + m], fp.mul(coef, b[i]));
            ++m;
        }
    }
    // c(x) = 1 + c_1 x + ... with the recurrence read off as the reversal:
    // minimal polynomial has degree l; its constant term is c_l.
    bool div_x = (l >= c.size()) || (c[l] == 0);
    return {l, div_x};
}

void spmv(const SparseMatrix& m, const std::vector<std::uint64_t>& x,
          std::vector<std::uint64_t>& y, const PrimeField& fp) {
    y.assign(m.rows, 0);
    for (const auto& e : m.entries) y[e.row] = fp.add(y[e.row], fp.mul(e.val, x[e.col]));
}

void spmv_t(const SparseMatrix& m, const std::vector<std::uint64_t>& x,
            std::vector<std::uint64_t>& y, const PrimeField& fp) {
    y.assign(m.cols, 0);
    for (const auto& e : m.entries) y[e.col] = fp.add(y[e.col], fp.mul(e.val, x[e.row]));
}

} // namespace

std::optional<std::uint32_t> rank_wiedemann(const SparseMatrix& m, std::uint64_t seed,
                                            int max_rounds) {
    PrimeField fp(m.p);
    const std::size_t n = m.cols;
    if (n == 0 || m.entries.empty()) return 0;

    auto one_round = [&](std::uint64_t round_seed) -> std::uint32_t {
        std::mt19937_64 rng(round_seed);
        auto rnd_nonzero = [&] { return 1 + rng() % (m.p - 1); };
        auto rnd = [&] { return rng() % m.p; };

        std::vector<std::uint64_t> diag(m.rows);
        for (auto& d : diag) d = rnd_nonzero();
        std::vector<std::uint64_t> u(n), v(n);
        for (auto& x : u) x = rnd();
        for (auto& x : v) x = rnd();

        // Krylov sequence s_i = u^T (M^T D M)^i v.
        std::vector<std::uint64_t> seq(2 * n + 2), w(v), tmp, tmp2;
        for (std::size_t i = 0; i < seq.size(); ++i) {
            std::uint64_t dot = 0;
            for (std::size_t j = 0; j < n; ++j) dot = fp.add(dot, fp.mul(u[j], w[j]));
            seq[i] = dot;
            spmv(m, w, tmp, fp);
            for (std::size_t j = 0; j < m.rows; ++j) tmp[j] = fp.mul(tmp[j], diag[j]);
            spmv_t(m, tmp, tmp2, fp);
            w.swap(tmp2);
        }
        auto mp = berlekamp_massey(seq, fp);
        std::size_t est = mp.degree - (mp.divisible_by_x && mp.degree > 0 ? 1 : 0);
        return static_cast<std::uint32_t>(est);
    };

    // The projection only ever underestimates, so keep the running max and
    // insist on two independent draws agreeing on it.
    std::uint32_t best = 0;
    int agreement = 0;
    for (int r = 0; r < max_rounds; ++r) {
        std::uint32_t est = one_round(seed + 0x9e3779b97f4a7c15ull * std::uint64_t(r + 1));
        if (est > best) {
            best = est;
            agreement = 1;
        } else if (est == best) {
            ++agreement;
        }
        if (agreement >= 2) return best;
    }
    return std::nullopt;
}

} // namespace fsig
