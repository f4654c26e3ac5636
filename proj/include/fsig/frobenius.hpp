#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fsig/graded_blocks.hpp"
#include "fsig/groebner.hpp"
#include "fsig/poly.hpp"
#include "fsig/rational.hpp"

namespace fsig {

/// q = p^e is capped so that n*q stays far below the 32-bit per-variable
/// exponent bound even through the g^(q-1) * c products.
constexpr std::uint64_t kMaxBracketQ = std::uint64_t(1) << 28;

/// Raised when g^(q-1) lies in m^[q]: the hypersurface is not F-split at
/// level e and the nu/mu counters are undefined.
class NotFSplitError : public std::runtime_error {
public:
    NotFSplitError(std::uint64_t p, std::uint32_t e)
        : std::runtime_error("ring is not F-split at p=" + std::to_string(p) +
                             ", e=" + std::to_string(e) + " (g^(q-1) lies in m^[q])") {}
};

/// A localized hypersurface R = (S/(g))_m over F_p, or the ambient regular
/// ring itself when no relation is given. The relation is kept with integer
/// coefficients; each prime reduces it separately.
struct RingPresentation {
    AmbientPtr amb;
    std::optional<PolyZ> relation;
    std::uint64_t p;
    PrimeField fp;
    Poly relation_mod_p; // zero Poly when ambient
    bool is_standard_graded;
    bool relation_weighted_homogeneous;
    bool assume_normal; // user-asserted; gates the order_is_exact flag only

    static RingPresentation make(AmbientPtr amb, std::optional<PolyZ> relation, std::uint64_t p,
                                 bool assume_normal = false);

    bool ambient_regular() const noexcept { return !relation.has_value(); }
    std::size_t nvars() const noexcept { return amb->nvars(); }
    /// Krull dimension: n for the ambient ring, n-1 for a hypersurface.
    std::size_t dim() const noexcept { return nvars() - (relation ? 1 : 0); }
    std::uint64_t q_for(std::uint32_t e) const;

    /// Plain weighted order equals the paper's normalized order exactly on
    /// regular rings and on standard-graded normal rings; everywhere else it
    /// is only a lower bound and profiles carry the caveat.
    bool order_is_exact() const noexcept {
        return ambient_regular() ||
               (is_standard_graded && relation_weighted_homogeneous && assume_normal);
    }
};

/// Per-(p, e) measurement record.
struct FrobeniusProfile {
    std::uint64_t p = 0;
    std::uint32_t e = 0;
    std::uint64_t q = 0;
    std::optional<std::int64_t> nu_f, mu_f; // for a designated element, when tracked
    std::uint64_t colength_Ie = 0;          // l_R(R / I_e)
    Rational s_e;                           // colength / q^dim
    std::optional<std::uint64_t> m_e;       // absent on the dense (ungraded) path
    std::optional<Rational> alpha_e;        // m_e / q
    bool order_is_exact = false;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> kernel_degree_profile;

    void check_invariants() const;
};

/// Rigorous enclosure of an F-pure threshold: nu_e/q is a strict lower
/// bound, mu_e/q an upper bound, nested as e grows.
struct ThresholdBracket {
    Rational lower, upper;
    std::uint32_t e_used = 0;
    bool partial = false; // budget ran out before e_max
};

struct EBracket {
    std::uint32_t e;
    std::uint64_t q;
    std::int64_t nu, mu;
};

struct FptResult {
    ThresholdBracket bracket;
    std::vector<EBracket> per_e;
};

/// Largest r >= 0 with f^r outside m^[q] (ambient) or with
/// f^r * g^(q-1) outside m^[q] (hypersurface Fedder test). Found by binary
/// search: membership is monotone in r since m^[q] is an ideal.
std::int64_t nu_e(const Poly& f, const RingPresentation& ring, std::uint32_t e,
                  bool parallel = false);

/// nu_e + 1; equals min{r >= 0 | the level-e test fails for f^r}.
std::int64_t mu_e(const Poly& f, const RingPresentation& ring, std::uint32_t e,
                  bool parallel = false);

/// lower = max_e nu_e/q_e, upper = min_e mu_e/q_e; guarantees
/// lower < fpt <= upper. Stops early (flagged partial) if q would exceed the
/// exponent cap.
FptResult fpt_bracket(const Poly& f, const RingPresentation& ring, std::uint32_t e_max,
                      bool parallel = false);

struct ProfileOptions {
    bool parallel = true;
    bool use_wiedemann = false; // randomized rank behind a flag; elimination is default
    std::uint64_t seed = 1;
};

/// The level-e splitting measurement. Ambient ring: I_e = m^[q] exactly, so
/// colength q^n, s_e = 1, m_e = q*min(w). Hypersurface: h = trunc(g^(q-1)),
/// I_e corresponds to ker(mult-by-h on S/m^[q]) via the Fedder route, and
/// l_R(R/I_e) = l(hA) = rank. Non-homogeneous relations take the dense path
/// and report m_e unavailable.
FrobeniusProfile splitting_profile(const RingPresentation& ring, std::uint32_t e,
                                   const ProfileOptions& opts = {});

struct IdealNu {
    std::int64_t value; // exact nu_e, or the best lower bound found
    bool exact;
};

/// nu_e for an ideal: max r such that some product of r generators (with
/// repetition) survives the level-e test. Exhaustive over multisets, with a
/// product budget; exceeding it returns the partial lower bound, flagged.
IdealNu nu_e_ideal(const std::vector<Poly>& gens, const RingPresentation& ring, std::uint32_t e,
                   std::uint64_t product_budget = 2'000'000);

/// Finite-e comparison skeleton; these are theorems, checked exactly.
struct BoundCheckReport {
    std::uint64_t len_mod_me = 0;    // l(R / M_{m_e}), weighted-power ideal
    std::uint64_t len_mod_Ie = 0;    // l(R / I_e)
    std::int64_t nu_m = 0;           // nu_e of the maximal ideal
    bool nu_m_exact = true;
    std::uint64_t len_mod_m_nu1 = 0; // l(R / m^(nu_m + 1))
    bool lower_ok = false;           // len_mod_me <= len_mod_Ie
    bool upper_ok = false;           // len_mod_Ie <= len_mod_m_nu1
    bool briancon_skoda_ok = false;  // every monomial of degree n*q lies in m^[q]
    bool all_ok() const noexcept { return lower_ok && upper_ok && briancon_skoda_ok; }
};

BoundCheckReport bound_check(const FrobeniusProfile& profile, const RingPresentation& ring,
                             const GroebnerOptions& gopts = {});

/// Monomial generators of the ideal of all elements of weighted order >= k
/// (equals m^k under the standard grading).
std::vector<Poly> weighted_power_ideal_gens(const AmbientPtr& amb, const PrimeField& fp,
                                            std::uint64_t k);

/// Monomial generators of the plain power m^k.
std::vector<Poly> maximal_ideal_power_gens(const AmbientPtr& amb, const PrimeField& fp,
                                           std::uint64_t k);

} // namespace fsig
