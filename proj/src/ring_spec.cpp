#include "fsig/ring_spec.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fsig/parse.hpp"

namespace fsig {

AmbientPtr RingSpec::ambient() const {
    WeightVector w = weights;
    if (w.empty()) w.assign(vars.size(), 1);
    return make_ambient(vars, w);
}

std::optional<PolyZ> RingSpec::relation_poly() const {
    if (!relation) return std::nullopt;
    return parse_poly(*relation, ambient());
}

RingPresentation RingSpec::presentation(std::uint64_t p) const {
    return RingPresentation::make(ambient(), relation_poly(), p, assume_normal);
}

namespace {

std::vector<std::uint64_t> prime_divisors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool filesystem_safe(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '_' || c == '-' || c == '.';
        if (!ok) return false;
    }
    return true;
}

} // namespace

void RingSpec::validate() const {
    if (schema != 1) throw std::invalid_argument("ring spec: unsupported schema version");
    if (!filesystem_safe(label))
        throw std::invalid_argument("ring spec: label must be nonempty and filesystem-safe");
    if (vars.empty()) throw std::invalid_argument("ring spec: no variables");
    if (e_max < 1) throw std::invalid_argument("ring spec: e_max must be >= 1");
    if (primes.empty()) throw std::invalid_argument("ring spec: no primes");

    AmbientPtr amb = ambient(); // validates weights/vars

    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (!is_prime_u64(primes[i]) || primes[i] < 3)
            throw std::invalid_argument("ring spec: " + std::to_string(primes[i]) +
                                        " is not an odd prime");
        for (std::size_t j = i + 1; j < primes.size(); ++j)
            if (primes[i] == primes[j])
                throw std::invalid_argument("ring spec: duplicate prime " +
                                            std::to_string(primes[i]));
    }

    if (relation) {
        PolyZ g = parse_poly(*relation, amb);
        if (g.is_zero()) throw std::invalid_argument("ring spec: relation is zero");
        if (g.has_constant_term())
            throw std::invalid_argument("ring spec: relation must have zero constant term");
        std::int64_t content = g.content();
        for (std::uint64_t bad : prime_divisors(std::uint64_t(content)))
            for (std::uint64_t p : primes)
                if (p <= bad)
                    throw std::invalid_argument(
                        "ring spec: prime " + std::to_string(p) +
                        " does not exceed content divisor " + std::to_string(bad));
    }

    for (const auto& el : designated_elements) {
        if (el.name.empty()) throw std::invalid_argument("ring spec: unnamed element");
        PolyZ f = parse_poly(el.expr, amb);
        if (f.is_zero()) throw std::invalid_argument("ring spec: element '" + el.name + "' is zero");
        if (f.has_constant_term())
            throw std::invalid_argument("ring spec: element '" + el.name +
                                        "' is a unit (constant term)");
    }

    if (toric_rays) {
        if (toric_rays->empty()) throw std::invalid_argument("ring spec: empty toric block");
        const std::size_t d = (*toric_rays)[0].size();
        for (const auto& r : *toric_rays)
            if (r.size() != d)
                throw std::invalid_argument("ring spec: ragged toric ray dimensions");
    }
}

RingSpec ring_spec_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RingSpec s;
    s.schema = j.value("schema", 1);
    s.label = j.at("label").get<std::string>();
    s.vars = j.at("vars").get<std::vector<std::string>>();
    if (j.contains("weights")) s.weights = j.at("weights").get<WeightVector>();
    if (j.contains("relation") && !j.at("relation").is_null())
        s.relation = j.at("relation").get<std::string>();
    if (j.contains("designated_elements"))
        for (const auto& e : j.at("designated_elements"))
            s.designated_elements.push_back(
                {e.at("name").get<std::string>(), e.at("expr").get<std::string>()});
    s.primes = j.at("primes").get<std::vector<std::uint64_t>>();
    s.e_max = j.at("e_max").get<std::uint32_t>();
    if (j.contains("toric") && !j.at("toric").is_null())
        s.toric_rays = j.at("toric").at("rays").get<std::vector<std::vector<std::int64_t>>>();
    s.assume_normal = j.value("assume_normal", false);
    s.run_bound_checks = j.value("run_bound_checks", true);
    s.bound_check_max_q = j.value("bound_check_max_q", std::uint64_t(9));
    s.validate();
    return s;
}

RingSpec load_ring_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open ring spec: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ring_spec_from_json_text(ss.str());
}

std::string ring_spec_to_json_text(const RingSpec& spec) {
    nlohmann::ordered_json j;
    j["schema"] = spec.schema;
    j["label"] = spec.label;
    j["vars"] = spec.vars;
    j["weights"] = spec.weights.empty() ? WeightVector(spec.vars.size(), 1) : spec.weights;
    if (spec.relation) j["relation"] = *spec.relation;
    else j["relation"] = nullptr;
    auto els = nlohmann::ordered_json::array();
    for (const auto& e : spec.designated_elements)
        els.push_back({{"name", e.name}, {"expr", e.expr}});
    j["designated_elements"] = els;
    j["primes"] = spec.primes;
    j["e_max"] = spec.e_max;
    if (spec.toric_rays) j["toric"] = {{"rays", *spec.toric_rays}};
    else j["toric"] = nullptr;
    j["assume_normal"] = spec.assume_normal;
    j["run_bound_checks"] = spec.run_bound_checks;
    j["bound_check_max_q"] = spec.bound_check_max_q;
    return j.dump(2);
}

} // namespace fsig
