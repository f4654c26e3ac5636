#include "fsig/graded_blocks.hpp"

#include <algorithm>
#include <stdexcept>

namespace fsig {

namespace {

/// Enumerate exponent vectors a with sum a_i * w_i == t and a_i < q, in
/// lexicographic order, appended flat to `out`.
void enumerate_slice(const WeightVector& w, std::uint64_t q, std::uint64_t t, std::size_t v,
                     std::vector<std::uint32_t>& cur, std::vector<std::uint32_t>& out,
                     const std::vector<std::uint64_t>& suffix_max) {
    const std::size_t n = w.size();
    if (v + 1 == n) {
        if (t % w[v] == 0 && t / w[v] < q) {
            cur[v] = static_cast<std::uint32_t>(t / w[v]);
            out.insert(out.end(), cur.begin(), cur.end());
        }
        return;
    }
    // a_v is bounded both by q and by what the remaining variables can absorb.
    std::uint64_t lo_num = t > suffix_max[v + 1] ? t - suffix_max[v + 1] : 0;
    std::uint64_t lo = (lo_num + w[v] - 1) / w[v];
    std::uint64_t hi = std::min<std::uint64_t>(q - 1, t / w[v]);
    for (std::uint64_t a = lo; a <= hi && a < q; ++a) {
        cur[v] = static_cast<std::uint32_t>(a);
        enumerate_slice(w, q, t - a * w[v], v + 1, cur, out, suffix_max);
    }
}

std::vector<std::uint64_t> suffix_capacity(const WeightVector& w, std::uint64_t q) {
    std::vector<std::uint64_t> s(w.size() + 1, 0);
    for (std::size_t v = w.size(); v-- > 0;) s[v] = s[v + 1] + std::uint64_t(w[v]) * (q - 1);
    return s;
}

std::uint32_t find_monomial(const std::vector<std::uint32_t>& flat, std::size_t n,
                            std::span<const std::uint32_t> key) {
    // Binary search over lexicographically sorted flat monomials.
    std::size_t lo = 0, hi = flat.size() / n;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        std::span<const std::uint32_t> m(flat.data() + mid * n, n);
        if (std::lexicographical_compare(m.begin(), m.end(), key.begin(), key.end()))
            lo = mid + 1;
        else
            hi = mid;
    }
    return static_cast<std::uint32_t>(lo);
}

std::uint64_t checked_pow(std::uint64_t q, std::size_t n) {
    std::uint64_t r = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (q != 0 && r > (std::uint64_t(1) << 62) / q)
            throw std::overflow_error("graded_blocks: q^n exceeds 2^62");
        r *= q;
    }
    return r;
}

} // namespace

GradedBlocks::GradedBlocks(Poly h, std::uint64_t q) : h_(std::move(h)), q_(q) {
    if (q < 1) throw std::invalid_argument("GradedBlocks: q must be >= 1");
    const auto& w = h_.ambient().weights();
    max_deg_ = 0;
    for (auto wi : w) max_deg_ += std::uint64_t(wi) * (q - 1);
    shift_ = h_.is_zero() ? 0 : h_.term_weighted_degree(0);
}

GradedBlocks mult_operator(const Poly& h, std::uint64_t q) {
    if (!h.weighted_homogeneous())
        throw std::invalid_argument(
            "mult_operator: h must be weighted-homogeneous (use the dense path otherwise)");
    if (truncate_bracket(h, q).term_count() != h.term_count())
        throw std::invalid_argument("mult_operator: h must already be truncated below q");
    return GradedBlocks(h, q);
}

std::vector<std::uint32_t> GradedBlocks::slice(std::uint64_t t) const {
    const auto& w = h_.ambient().weights();
    std::vector<std::uint32_t> out, cur(w.size());
    auto suffix = suffix_capacity(w, q_);
    if (t <= max_deg_) enumerate_slice(w, q_, t, 0, cur, out, suffix);
    return out;
}

std::uint64_t GradedBlocks::slice_size(std::uint64_t t) const {
    return slice(t).size() / h_.ambient().nvars();
}

SparseMatrix GradedBlocks::materialize(std::uint64_t t) const {
    const std::size_t n = h_.ambient().nvars();
    auto src = slice(t);
    auto dst = slice(t + shift_);
    const std::uint32_t ncols = static_cast<std::uint32_t>(src.size() / n);
    const std::uint32_t nrows = static_cast<std::uint32_t>(dst.size() / n);

    std::vector<SparseMatrix::Entry> entries;
    std::vector<std::uint32_t> key(n);
    for (std::uint32_t col = 0; col < ncols; ++col) {
        std::span<const std::uint32_t> a(src.data() + std::size_t(col) * n, n);
        for (std::size_t ti = 0; ti < h_.term_count(); ++ti) {
            auto b = h_.exponents(ti);
            bool alive = true;
            for (std::size_t v = 0; v < n; ++v) {
                std::uint64_t s = std::uint64_t(a[v]) + b[v];
                if (s >= q_) {
                    alive = false;
                    break;
                }
                key[v] = static_cast<std::uint32_t>(s);
            }
            if (!alive) continue;
            std::uint32_t row = find_monomial(dst, n, key);
            entries.push_back({row, col, h_.coeff(ti)});
        }
    }
    return SparseMatrix::make(nrows, ncols, h_.field().modulus(), std::move(entries));
}

SparseMatrix mult_operator_dense(const Poly& h, std::uint64_t q) {
    const std::size_t n = h.ambient().nvars();
    std::uint64_t dim = checked_pow(q, n);
    if (dim > (std::uint64_t(1) << 24))
        throw std::length_error("mult_operator_dense: q^n too large for the dense path");

    // Mixed-radix index: idx = sum a_v * q^v.
    std::vector<SparseMatrix::Entry> entries;
    std::vector<std::uint32_t> a(n, 0);
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        std::uint64_t r = idx;
        for (std::size_t v = 0; v < n; ++v) {
            a[v] = static_cast<std::uint32_t>(r % q);
            r /= q;
        }
        for (std::size_t ti = 0; ti < h.term_count(); ++ti) {
            auto b = h.exponents(ti);
            bool alive = true;
            std::uint64_t ridx = 0, mult = 1;
            for (std::size_t v = 0; v < n; ++v) {
                std::uint64_t s = std::uint64_t(a[v]) + b[v];
                if (s >= q) {
                    alive = false;
                    break;
                }
                ridx += s * mult;
                mult *= q;
            }
            if (!alive) continue;
            entries.push_back({static_cast<std::uint32_t>(ridx), static_cast<std::uint32_t>(idx),
                               h.coeff(ti)});
        }
    }
    return SparseMatrix::make(static_cast<std::uint32_t>(dim), static_cast<std::uint32_t>(dim),
                              h.field().modulus(), std::move(entries));
}

namespace {

RankProfile profile_impl(const GradedBlocks& blocks, bool parallel, bool dense_reference) {
    const std::uint64_t tmax = blocks.max_degree();
    std::vector<std::uint64_t> ranks(tmax + 1, 0), dims(tmax + 1, 0);

    auto body = [&](std::uint64_t t) {
        SparseMatrix block = blocks.materialize(t);
        dims[t] = block.cols;
        if (block.cols == 0) return;
        if (dense_reference) {
            // Straightforward dense elimination, no pivot heuristics.
            PrimeField fp(block.p);
            std::vector<std::vector<std::uint64_t>> a(block.rows,
                                                      std::vector<std::uint64_t>(block.cols, 0));
            for (const auto& e : block.entries) a[e.row][e.col] = e.val;
            std::uint32_t rk = 0;
            std::size_t prow = 0;
            for (std::size_t c = 0; c < block.cols && prow < block.rows; ++c) {
                std::size_t sel = SIZE_MAX;
                for (std::size_t r = prow; r < block.rows; ++r)
                    if (a[r][c] != 0) {
                        sel = r;
                        break;
                    }
                if (sel == SIZE_MAX) continue;
                std::swap(a[prow], a[sel]);
                std::uint64_t inv = fp.inv(a[prow][c]);
                for (std::size_t j = c; j < block.cols; ++j) a[prow][j] = fp.mul(a[prow][j], inv);
                for (std::size_t r = prow + 1; r < block.rows; ++r) {
                    if (a[r][c] == 0) continue;
                    std::uint64_t f = a[r][c];
                    for (std::size_t j = c; j < block.cols; ++j)
                        a[r][j] = fp.sub(a[r][j], fp.mul(f, a[prow][j]));
                }
                ++prow;
                ++rk;
            }
            ranks[t] = rk;
        } else {
            ranks[t] = rank(block);
        }
    };

    if (parallel && !dense_reference) {
#pragma omp parallel for schedule(dynamic)
        for (std::int64_t t = 0; t <= std::int64_t(tmax); ++t) body(std::uint64_t(t));
    } else {
        for (std::uint64_t t = 0; t <= tmax; ++t) body(t);
    }

    RankProfile out;
    for (std::uint64_t t = 0; t <= tmax; ++t) {
        out.total_rank += ranks[t];
        out.total_dim += dims[t];
        if (dims[t] > ranks[t]) out.kernel_dims.emplace_back(t, dims[t] - ranks[t]);
    }
    // Rank-nullity against the full q^n monomial basis, asserted on every
    // invocation: the slices must partition it.
    std::uint64_t nullity = 0;
    for (const auto& [t, d] : out.kernel_dims) nullity += d;
    std::uint64_t qn = checked_pow(blocks.q(), blocks.h().ambient().nvars());
    if (out.total_dim != qn || out.total_rank + nullity != qn)
        throw std::logic_error("graded_rank_profile: rank-nullity violation");
    return out;
}

} // namespace

RankProfile graded_rank_profile(const GradedBlocks& blocks, bool parallel) {
    return profile_impl(blocks, parallel, false);
}

RankProfile graded_rank_profile_reference(const GradedBlocks& blocks) {
    return profile_impl(blocks, false, true);
}

KernelMinDegree kernel_min_degree(const GradedBlocks& blocks, bool parallel) {
    RankProfile prof = graded_rank_profile(blocks, parallel);
    const auto& amb = blocks.h().ambient();
    std::uint64_t m_e = blocks.q() * amb.min_weight();
    if (!prof.kernel_dims.empty()) m_e = std::min(m_e, prof.kernel_dims.front().first);
    return {m_e, std::move(prof)};
}

} // namespace fsig
