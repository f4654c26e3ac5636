#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fsig/poly.hpp"

namespace fsig {

enum class OrderKind {
    Lex,
    GrevLex,
    WGrevLex,  // weighted degree first, grevlex tie-break
    ElimBlock, // first `block` variables eliminated (grevlex within each block)
};

/// Total, multiplicative monomial order with 1 minimal.
struct MonomialOrder {
    OrderKind kind = OrderKind::GrevLex;
    std::size_t block = 0;

    static MonomialOrder lex() { return {OrderKind::Lex, 0}; }
    static MonomialOrder grevlex() { return {OrderKind::GrevLex, 0}; }
    static MonomialOrder wgrevlex() { return {OrderKind::WGrevLex, 0}; }
    static MonomialOrder elim(std::size_t first_k) { return {OrderKind::ElimBlock, first_k}; }

    /// -1, 0, +1 with +1 meaning a > b.
    int compare(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                const WeightVector& w) const;

    bool operator==(const MonomialOrder& o) const noexcept {
        return kind == o.kind && block == o.block;
    }
};

/// Raised when an S-pair budget is exhausted; validation runs fail loudly
/// rather than silently degrading.
class PairBudgetExceeded : public std::runtime_error {
public:
    explicit PairBudgetExceeded(std::uint64_t budget)
        : std::runtime_error("groebner: S-pair budget of " + std::to_string(budget) +
                             " exceeded") {}
};

struct GroebnerOptions {
    std::uint64_t pair_budget = 200'000;
};

/// Generators plus a cached reduced Groebner basis (with the order it was
/// computed under). The cache is created once and read-only afterwards.
struct IdealBasis {
    std::vector<Poly> generators;
    mutable std::optional<std::pair<MonomialOrder, std::vector<Poly>>> cache;

    IdealBasis() = default;
    explicit IdealBasis(std::vector<Poly> gens) : generators(std::move(gens)) {}
};

/// Reduced Groebner basis: monic, no leading term divides another, tails in
/// normal form, sorted by leading term. Independent of generator order.
std::vector<Poly> buchberger(const std::vector<Poly>& gens, const MonomialOrder& ord,
                             const GroebnerOptions& opts = {});

/// Cached access to the reduced basis of an IdealBasis.
const std::vector<Poly>& groebner_basis(const IdealBasis& ideal, const MonomialOrder& ord,
                                        const GroebnerOptions& opts = {});

/// Remainder of division by a reduced basis: no term divisible by any
/// leading term; f - result lies in the ideal; idempotent.
Poly normal_form(const Poly& f, const std::vector<Poly>& gb, const MonomialOrder& ord);

bool ideal_contains(const IdealBasis& ideal, const Poly& f, const MonomialOrder& ord,
                    const GroebnerOptions& opts = {});

/// Quotient c with f = c*h, or nullopt when h does not divide f exactly.
std::optional<Poly> exact_division(const Poly& f, const Poly& h, const MonomialOrder& ord);

/// (I : h) = { c | c*h in I } via tag-variable elimination: a fresh variable
/// t is prepended, the basis of t*I + (1-t)*h is computed under an
/// elimination order, the t-free part is I meet (h), and dividing by h gives
/// the colon generators.
IdealBasis colon_ideal(const IdealBasis& I, const Poly& h, const MonomialOrder& ord,
                       const GroebnerOptions& opts = {});

/// Number of standard monomials (monomials outside the leading-term ideal);
/// nullopt (+infinity) iff some variable has no pure power among the leading
/// terms.
std::optional<std::uint64_t> colength(const IdealBasis& I, const MonomialOrder& ord,
                                      const GroebnerOptions& opts = {});

} // namespace fsig
