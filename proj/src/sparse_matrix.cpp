#include "fsig/sparse_matrix.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace fsig {

SparseMatrix SparseMatrix::make(std::uint32_t rows, std::uint32_t cols, std::uint64_t p,
                                std::vector<Entry> raw) {
    PrimeField fp(p);
    for (auto& e : raw) {
        if (e.row >= rows || e.col >= cols)
            throw std::out_of_range("SparseMatrix: entry outside dimensions");
        e.val %= p;
    }
    std::sort(raw.begin(), raw.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    SparseMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.p = p;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::uint64_t acc = 0;
        std::size_t j = i;
        while (j < raw.size() && raw[j].row == raw[i].row && raw[j].col == raw[i].col) {
            acc = fp.add(acc, raw[j].val);
            ++j;
        }
        if (acc != 0) m.entries.push_back({raw[i].row, raw[i].col, acc});
        i = j;
    }
    return m;
}

SparseMatrix SparseMatrix::identity(std::uint32_t n, std::uint64_t p) {
    std::vector<Entry> e;
    e.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) e.push_back({i, i, 1});
    return make(n, n, p, std::move(e));
}

SparseMatrix SparseMatrix::transposed() const {
    std::vector<Entry> e;
    e.reserve(entries.size());
    for (const auto& x : entries) e.push_back({x.col, x.row, x.val});
    return make(cols, rows, p, std::move(e));
}

namespace {

using Term = std::pair<std::uint32_t, std::uint64_t>; // (col, val), rows sorted by col

/// r1 <- r1 - c * r2, sparse merge.
void row_axpy(std::vector<Term>& r1, const std::vector<Term>& r2, std::uint64_t c,
              const PrimeField& fp, std::vector<Term>& scratch) {
    scratch.clear();
    scratch.reserve(r1.size() + r2.size());
    std::size_t i = 0, j = 0;
    while (i < r1.size() || j < r2.size()) {
        if (j == r2.size() || (i < r1.size() && r1[i].first < r2[j].first)) {
            scratch.push_back(r1[i++]);
        } else if (i == r1.size() || r2[j].first < r1[i].first) {
            scratch.emplace_back(r2[j].first, fp.neg(fp.mul(c, r2[j].second)));
            ++j;
        } else {
            std::uint64_t v = fp.sub(r1[i].second, fp.mul(c, r2[j].second));
            if (v != 0) scratch.emplace_back(r1[i].first, v);
            ++i;
            ++j;
        }
    }
    r1.swap(scratch);
}

} // namespace

std::uint32_t rank(const SparseMatrix& m) {
    if (m.entries.empty()) return 0;
    PrimeField fp(m.p);

    std::vector<std::vector<Term>> rows(m.rows);
    for (const auto& e : m.entries) rows[e.row].emplace_back(e.col, e.val);

    std::vector<std::uint32_t> col_count(m.cols, 0);
    for (const auto& e : m.entries) ++col_count[e.col];
    // col -> candidate rows, with lazy (possibly stale) membership.
    std::vector<std::vector<std::uint32_t>> col_rows(m.cols);
    for (const auto& e : m.entries) col_rows[e.col].push_back(e.row);

    // Lazy min-heap over (row length, row): stale entries are discarded on pop.
    using HeapEntry = std::pair<std::uint32_t, std::uint32_t>;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<HeapEntry>> heap;
    for (std::uint32_t r = 0; r < m.rows; ++r)
        if (!rows[r].empty()) heap.push({std::uint32_t(rows[r].size()), r});

    std::vector<bool> eliminated(m.rows, false);
    std::vector<Term> scratch;
    std::uint32_t rk = 0;

    for (;;) {
        // Greedy Markowitz: shortest alive row, then its least-filled column.
        std::uint32_t best_row = UINT32_MAX;
        while (!heap.empty()) {
            auto [len, r] = heap.top();
            heap.pop();
            if (!eliminated[r] && rows[r].size() == len && len > 0) {
                best_row = r;
                break;
            }
        }
        if (best_row == UINT32_MAX) break;

        std::uint32_t pcol = rows[best_row][0].first;
        std::uint32_t pcost = UINT32_MAX;
        for (const auto& [c, v] : rows[best_row]) {
            if (col_count[c] < pcost) {
                pcost = col_count[c];
                pcol = c;
            }
        }

        const std::vector<Term>& prow = rows[best_row];
        std::uint64_t pval = 0;
        for (const auto& [c, v] : prow)
            if (c == pcol) pval = v;
        std::uint64_t pinv = fp.inv(pval);

        // Eliminate pcol from every other row that carries it.
        std::vector<std::uint32_t> cands;
        cands.swap(col_rows[pcol]);
        for (std::uint32_t r : cands) {
            if (r == best_row || eliminated[r]) continue;
            std::uint64_t v = 0;
            for (const auto& [c, val] : rows[r])
                if (c == pcol) v = val;
            if (v == 0) continue; // stale candidate
            for (const auto& [c, val] : rows[r]) --col_count[c];
            row_axpy(rows[r], prow, fp.mul(v, pinv), fp, scratch);
            for (const auto& [c, val] : rows[r]) {
                ++col_count[c];
                col_rows[c].push_back(r);
            }
            if (!rows[r].empty()) heap.push({std::uint32_t(rows[r].size()), r});
        }

        for (const auto& [c, v] : prow) --col_count[c];
        eliminated[best_row] = true;
        rows[best_row].clear();
        rows[best_row].shrink_to_fit();
        ++rk;
    }
    return rk;
}

std::vector<std::vector<std::uint64_t>> kernel_basis(const SparseMatrix& m) {
    PrimeField fp(m.p);
    const std::size_t R = m.rows, C = m.cols;
    if (__int128(R) * C > (__int128(1) << 24))
        throw std::length_error("kernel_basis: matrix too large for the dense path");

    std::vector<std::vector<std::uint64_t>> a(R, std::vector<std::uint64_t>(C, 0));
    for (const auto& e : m.entries) a[e.row][e.col] = e.val;

    // Gauss-Jordan to reduced row echelon form.
    std::vector<std::int64_t> pivot_of_col(C, -1);
    std::size_t prow = 0;
    for (std::size_t c = 0; c < C && prow < R; ++c) {
        std::size_t sel = SIZE_MAX;
        for (std::size_t r = prow; r < R; ++r)
            if (a[r][c] != 0) {
                sel = r;
                break;
            }
        if (sel == SIZE_MAX) continue;
        std::swap(a[prow], a[sel]);
        std::uint64_t inv = fp.inv(a[prow][c]);
        for (std::size_t j = c; j < C; ++j) a[prow][j] = fp.mul(a[prow][j], inv);
        for (std::size_t r = 0; r < R; ++r) {
            if (r == prow || a[r][c] == 0) continue;
            std::uint64_t f = a[r][c];
            for (std::size_t j = c; j < C; ++j) a[r][j] = fp.sub(a[r][j], fp.mul(f, a[prow][j]));
        }
        pivot_of_col[c] = static_cast<std::int64_t>(prow);
        ++prow;
    }

    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t c = 0; c < C; ++c) {
        if (pivot_of_col[c] >= 0) continue;
        std::vector<std::uint64_t> v(C, 0);
        v[c] = 1;
        for (std::size_t j = 0; j < C; ++j) {
            if (pivot_of_col[j] < 0) continue;
            std::uint64_t coef = a[std::size_t(pivot_of_col[j])][c];
            if (coef != 0) v[j] = fp.neg(coef);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace fsig
