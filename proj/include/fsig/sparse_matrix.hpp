#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fsig/prime_field.hpp"

namespace fsig {

/// Coordinate-list sparse matrix over F_p. Entries are sorted by (row, col),
/// unique, and nonzero; the builder normalizes.
struct SparseMatrix {
    struct Entry {
        std::uint32_t row, col;
        std::uint64_t val;
    };

    std::uint32_t rows = 0, cols = 0;
    std::uint64_t p = 0;
    std::vector<Entry> entries;

    static SparseMatrix make(std::uint32_t rows, std::uint32_t cols, std::uint64_t p,
                             std::vector<Entry> raw);
    static SparseMatrix identity(std::uint32_t n, std::uint64_t p);

    SparseMatrix transposed() const;
};

/// Exact rank over F_p by sparse Gaussian elimination with greedy Markowitz
/// pivoting (smallest row, then least-filled column). Deterministic.
std::uint32_t rank(const SparseMatrix& m);

/// Nullspace basis (cols - rank vectors, each of length cols, M*v = 0).
/// Dense Gauss-Jordan inside; meant for modest sizes.
std::vector<std::vector<std::uint64_t>> kernel_basis(const SparseMatrix& m);

/// Randomized Wiedemann-style rank estimate: Berlekamp-Massey minimal
/// polynomial of a bilinear projection of B = M^T D M with random diagonal
/// D. Monte Carlo, never overestimates; two independent draws must agree
/// (re-verification), otherwise more rounds are spent and nullopt is
/// returned on persistent disagreement. Practical only for larger p; the
/// deterministic elimination stays the default everywhere.
std::optional<std::uint32_t> rank_wiedemann(const SparseMatrix& m, std::uint64_t seed,
                                            int max_rounds = 6);

} // namespace fsig
