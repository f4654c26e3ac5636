#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fsig/frobenius.hpp"

namespace fsig {

struct ElementSpec {
    std::string name;
    std::string expr;
};

/// One sweep experiment: a Z-presentation reduced mod many primes. Loaded
/// from a single JSON document (schema 1); no environment configuration.
struct RingSpec {
    int schema = 1;
    std::string label;
    std::vector<std::string> vars;
    WeightVector weights; // defaults to all ones
    std::optional<std::string> relation;
    std::vector<ElementSpec> designated_elements;
    std::vector<std::uint64_t> primes;
    std::uint32_t e_max = 1;
    std::optional<std::vector<std::vector<std::int64_t>>> toric_rays;
    bool assume_normal = false;
    bool run_bound_checks = true;
    std::uint64_t bound_check_max_q = 9; // Groebner-backed checks stay desk-sized

    AmbientPtr ambient() const;
    std::optional<PolyZ> relation_poly() const;
    RingPresentation presentation(std::uint64_t p) const;

    /// Full validation: label filesystem-safe, primes distinct and larger
    /// than every prime divisor of the relation's content, e_max >= 1,
    /// elements parse and are nonunits.
    void validate() const;
};

RingSpec ring_spec_from_json_text(const std::string& text);
RingSpec load_ring_spec(const std::string& path);
std::string ring_spec_to_json_text(const RingSpec& spec);

} // namespace fsig
