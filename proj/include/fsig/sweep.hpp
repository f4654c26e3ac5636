#pragma once

#include <functional>
#include <iosfwd>

#include "fsig/ring_spec.hpp"
#include "fsig/toric.hpp"

namespace fsig {

/// Per-element threshold data inside a row.
struct ElementRow {
    std::string name;
    std::int64_t nu = 0, mu = 0;
};

/// One (p, e) task outcome; failed rows carry the error text and no profile.
struct SweepRow {
    std::uint64_t p = 0;
    std::uint32_t e = 0;
    std::uint64_t q = 0;
    std::string status = "ok";
    std::optional<FrobeniusProfile> profile;
    std::vector<ElementRow> elements;
    std::optional<BoundCheckReport> bounds;
    double wall_ms = 0.0;

    bool ok() const noexcept { return status == "ok"; }
};

struct ElementBracket {
    std::string name;
    Rational lower, upper;
    std::uint32_t e_used = 0;
};

struct PerPrimeSummary {
    std::uint64_t p = 0;
    std::optional<Rational> s_estimate;     // deepest successful e
    std::optional<Rational> s_uncertainty;  // 1/q at that depth
    std::optional<Rational> alpha_estimate;
    std::vector<ElementBracket> brackets;   // aggregated over e per element
};

struct Aggregate {
    std::optional<Rational> s_min;     // finite stand-in for liminf over p
    std::optional<Rational> alpha_min;
    struct Intersection {
        std::string name;
        Rational lower, upper;
        bool nonempty = false;
    };
    std::vector<Intersection> element_brackets;
    std::optional<Rational> toric_signature;
    bool toric_cross_check_ok = true; // |s_e - toric| <= 1/q on every ok row
    // Reserved: trend extrapolation over p is future work, never guessed at.
    std::optional<std::string> extrapolation;
};

struct SweepReport {
    RingSpec spec;
    std::string tool_version;
    std::vector<SweepRow> rows; // sorted by (p, e), one per requested task
    std::vector<PerPrimeSummary> per_prime;
    Aggregate aggregate;

    bool any_failure() const {
        for (const auto& r : rows)
            if (!r.ok()) return true;
        return false;
    }
};

/// Test-only fault injection: called before each (p, e) task.
using SweepHook = std::function<void(std::uint64_t p, std::uint32_t e)>;

struct SweepOptions {
    unsigned jobs = 1;
    bool use_wiedemann = false; // randomized rank path; elimination is default
    std::uint64_t seed = 1;
    SweepHook hook; // test-only fault injection
};

/// Run every (p, e) profile as an independent task on a small worker pool.
/// Row content is order-independent and deterministic; failures are isolated
/// per row and never abort the sweep.
SweepReport run_sweep(const RingSpec& spec, const SweepOptions& opts = {});
SweepReport run_sweep(const RingSpec& spec, unsigned jobs);

struct MultiplicityEstimate {
    std::optional<std::uint64_t> exact; // ord(g) when standard graded, 1 for ambient
    Rational fitted;                    // d! * l(R/m^n) / n^d at n = n_max
    std::vector<std::pair<std::uint32_t, Rational>> fit_points; // n_max-2 .. n_max
};

/// Hilbert-Samuel multiplicity: exact where the grading makes it free,
/// otherwise a colength fit with the two preceding points for convergence
/// inspection.
MultiplicityEstimate multiplicity_estimate(const RingSpec& spec, std::uint64_t p,
                                           std::uint32_t n_max);

} // namespace fsig
