#pragma once

#include <cstdint>
#include <vector>

#include "fsig/poly.hpp"
#include "fsig/sparse_matrix.hpp"

namespace fsig {

/// Multiplication-by-h operator on A = S/m^[q], sliced along the weighted
/// grading. Slice t is spanned by the monomials of weighted degree t with
/// all exponents < q (these partition the q^n standard monomials); the block
/// at t maps slice t into slice t + deg_w(h). Slices and blocks are
/// materialized on demand and discarded, since memory is the binding
/// constraint at deep e.
class GradedBlocks {
public:
    GradedBlocks(Poly h, std::uint64_t q);

    const Poly& h() const noexcept { return h_; }
    std::uint64_t q() const noexcept { return q_; }
    std::uint64_t shift_degree() const noexcept { return shift_; }
    /// Largest weighted degree of any standard monomial: (q-1) * sum(w).
    std::uint64_t max_degree() const noexcept { return max_deg_; }

    /// Monomials of weighted degree t with all exponents < q, in canonical
    /// (lexicographic) order; flat layout, nvars entries per monomial.
    std::vector<std::uint32_t> slice(std::uint64_t t) const;
    std::uint64_t slice_size(std::uint64_t t) const;

    /// Block t -> t + shift as a sparse matrix (rows indexed by the target
    /// slice, columns by the source slice).
    SparseMatrix materialize(std::uint64_t t) const;

private:
    Poly h_;
    std::uint64_t q_;
    std::uint64_t shift_;
    std::uint64_t max_deg_;
};

/// Graded multiplication operator for a weighted-homogeneous h already
/// truncated below q. Non-homogeneous h is rejected; the dense path accepts
/// anything.
GradedBlocks mult_operator(const Poly& h, std::uint64_t q);

/// Ungraded multiplication operator on the full q^n monomial basis.
SparseMatrix mult_operator_dense(const Poly& h, std::uint64_t q);

struct RankProfile {
    std::uint64_t total_rank = 0;
    std::uint64_t total_dim = 0; // q^n, asserted = total_rank + sum of kernel dims
    std::vector<std::pair<std::uint64_t, std::uint64_t>> kernel_dims; // (degree, dim), dim > 0
};

/// Rank and kernel-dimension profile over all degree blocks. Blocks are
/// independent; `parallel` fans them out over OpenMP threads and the merge
/// is a deterministic reduction.
RankProfile graded_rank_profile(const GradedBlocks& blocks, bool parallel = true);

/// Serial reference: same loop, dense Gauss elimination per block. Kept for
/// differential testing and the kernel benchmark.
RankProfile graded_rank_profile_reference(const GradedBlocks& blocks);

struct KernelMinDegree {
    std::uint64_t m_e; // min(first degree with nonzero kernel, q * min weight)
    RankProfile profile;
};

/// m_e realized as the minimum weighted degree carrying a nonzero kernel
/// vector, capped by q * min(w) for the m^[q] generators sitting inside I_e.
KernelMinDegree kernel_min_degree(const GradedBlocks& blocks, bool parallel = true);

} // namespace fsig
