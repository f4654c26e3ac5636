#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsig/groebner.hpp"
#include "fsig/parse.hpp"
#include "fsig/report.hpp"
#include "fsig/sweep.hpp"
#include "fsig/version.hpp"

namespace {

using namespace fsig;

/// Fixed-width table printer; every table has a JSON twin with identical
/// numeric content.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void print(std::ostream& os) const {
        std::vector<std::size_t> w(header.size());
        for (std::size_t c = 0; c < header.size(); ++c) w[c] = header[c].size();
        for (const auto& r : rows)
            for (std::size_t c = 0; c < r.size(); ++c) w[c] = std::max(w[c], r[c].size());
        auto line = [&](const std::vector<std::string>& r) {
            for (std::size_t c = 0; c < r.size(); ++c)
                os << std::left << std::setw(int(w[c]) + 2) << r[c];
            os << "\n";
        };
        line(header);
        for (const auto& r : rows) line(r);
    }
};

std::string rat_str(const Rational& r) { return r.str(); }

int cmd_fpt(const std::string& ring_path, const std::string& element, std::uint32_t e_max_override,
            const std::string& format, const std::string& out_path) {
    RingSpec spec = load_ring_spec(ring_path);
    std::uint32_t e_max = e_max_override ? e_max_override : spec.e_max;

    std::string expr = element;
    std::string name = element;
    if (expr.empty()) {
        if (spec.designated_elements.empty())
            throw CLI::ValidationError("--element", "no element given and none designated in spec");
        expr = spec.designated_elements[0].expr;
        name = spec.designated_elements[0].name;
    }

    nlohmann::ordered_json jout;
    jout["element"] = name;
    auto jprimes = nlohmann::ordered_json::array();
    std::ostringstream text;
    bool any_fail = false;

    for (std::uint64_t p : spec.primes) {
        Table t;
        t.header = {"e", "q", "nu_e", "mu_e", "lower", "upper"};
        nlohmann::ordered_json jp;
        jp["p"] = p;
        auto jrows = nlohmann::ordered_json::array();
        try {
            RingPresentation ring = spec.presentation(p);
            Poly f = reduce_mod_p(parse_poly(expr, ring.amb), p);
            FptResult res = fpt_bracket(f, ring, e_max, true);
            for (const auto& eb : res.per_e) {
                Rational lo(eb.nu, std::int64_t(eb.q)), hi(eb.mu, std::int64_t(eb.q));
                t.rows.push_back({std::to_string(eb.e), std::to_string(eb.q),
                                  std::to_string(eb.nu), std::to_string(eb.mu), rat_str(lo),
                                  rat_str(hi)});
                jrows.push_back({{"e", eb.e},
                                 {"q", eb.q},
                                 {"nu", eb.nu},
                                 {"mu", eb.mu},
                                 {"lower", {{"num", lo.num}, {"den", lo.den}}},
                                 {"upper", {{"num", hi.num}, {"den", hi.den}}}});
            }
            jp["rows"] = jrows;
            jp["bracket"] = {{"lower",
                              {{"num", res.bracket.lower.num}, {"den", res.bracket.lower.den}}},
                             {"upper",
                              {{"num", res.bracket.upper.num}, {"den", res.bracket.upper.den}}},
                             {"e_used", res.bracket.e_used},
                             {"partial", res.bracket.partial}};
            text << "p = " << p << ", element " << name << "\n";
            t.print(text);
            text << "bracket: (" << rat_str(res.bracket.lower) << ", "
                 << rat_str(res.bracket.upper) << "]"
                 << (res.bracket.partial ? " (partial: budget reached)" : "") << "\n\n";
        } catch (const std::exception& ex) {
            any_fail = true;
            jp["error"] = ex.what();
            text << "p = " << p << ": error: " << ex.what() << "\n\n";
        }
        jprimes.push_back(std::move(jp));
    }
    jout["primes"] = jprimes;

    std::string payload = (format == "json") ? jout.dump(2) + "\n" : text.str();
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + out_path);
        f << payload;
    } else {
        std::cout << payload;
    }
    return any_fail ? 1 : 0;
}

int cmd_profiles(const std::string& ring_path, const std::vector<std::uint64_t>& primes_override,
                 std::uint32_t e_max_override, unsigned jobs, bool wiedemann, std::uint64_t seed,
                 const std::string& format, const std::string& out_path, bool alpha_focus) {
    RingSpec spec = load_ring_spec(ring_path);
    if (!primes_override.empty()) spec.primes = primes_override;
    if (e_max_override) spec.e_max = e_max_override;
    spec.validate();

    SweepOptions sopts;
    sopts.jobs = jobs;
    sopts.use_wiedemann = wiedemann;
    sopts.seed = seed;
    SweepReport rep = run_sweep(spec, sopts);

    Table t;
    if (alpha_focus)
        t.header = {"p", "e", "q", "m_e", "alpha_e", "order_exact", "status"};
    else
        t.header = {"p", "e", "q", "colength_Ie", "s_e", "m_e", "alpha_e", "status"};
    for (const auto& row : rep.rows) {
        std::string me = "-", al = "-", se = "-", co = "-", ox = "-";
        if (row.profile) {
            co = std::to_string(row.profile->colength_Ie);
            se = rat_str(row.profile->s_e);
            if (row.profile->m_e) me = std::to_string(*row.profile->m_e);
            if (row.profile->alpha_e) al = rat_str(*row.profile->alpha_e);
            ox = row.profile->order_is_exact ? "yes" : "no";
        }
        if (alpha_focus)
            t.rows.push_back({std::to_string(row.p), std::to_string(row.e), std::to_string(row.q),
                              me, al, ox, row.status});
        else
            t.rows.push_back({std::to_string(row.p), std::to_string(row.e), std::to_string(row.q),
                              co, se, me, al, row.status});
    }

    std::string payload;
    if (format == "json") {
        payload = report_json(rep);
    } else {
        std::ostringstream ss;
        t.print(ss);
        if (rep.aggregate.s_min)
            ss << "\nmin s_e over primes (deepest e): " << rat_str(*rep.aggregate.s_min) << "\n";
        if (rep.aggregate.alpha_min)
            ss << "min alpha_e over primes: " << rat_str(*rep.aggregate.alpha_min) << "\n";
        if (rep.aggregate.toric_signature)
            ss << "toric signature: " << rat_str(*rep.aggregate.toric_signature)
               << " (cross-check " << (rep.aggregate.toric_cross_check_ok ? "pass" : "FAIL")
               << ")\n";
        payload = ss.str();
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + out_path);
        f << payload;
    } else {
        std::cout << payload;
    }
    return rep.any_failure() ? 1 : 0;
}

std::vector<std::vector<std::int64_t>> parse_rays(const std::string& text) {
    std::vector<std::vector<std::int64_t>> rays;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        std::vector<std::int64_t> ray;
        std::stringstream rs(part);
        std::string num;
        while (std::getline(rs, num, ',')) ray.push_back(std::stoll(num));
        if (!ray.empty()) rays.push_back(std::move(ray));
    }
    return rays;
}

int cmd_toric(const std::string& rays_text, const std::string& spec_path,
              std::uint64_t veronese_n, const std::string& format,
              const std::string& out_path) {
    std::vector<std::vector<std::int64_t>> rays;
    if (!rays_text.empty()) {
        rays = parse_rays(rays_text);
    } else if (!spec_path.empty()) {
        RingSpec spec = load_ring_spec(spec_path);
        if (!spec.toric_rays)
            throw CLI::ValidationError("--spec", "spec has no toric block");
        rays = *spec.toric_rays;
    } else {
        throw CLI::ValidationError("toric", "either --rays or --spec is required");
    }
    ToricCone cone = make_cone(std::move(rays));
    if (veronese_n > 1) cone = veronese_cone(cone, veronese_n);
    Rational sig = toric_fsignature(cone);

    std::string payload;
    if (format == "json") {
        nlohmann::ordered_json j;
        j["signature"] = {{"num", sig.num}, {"den", sig.den}};
        auto jr = nlohmann::ordered_json::array();
        for (const auto& r : cone.rays) jr.push_back(r);
        j["rays"] = jr;
        payload = j.dump(2) + "\n";
    } else {
        payload = sig.str() + "\n";
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + out_path);
        f << payload;
    } else {
        std::cout << payload;
    }
    return 0;
}

int cmd_sweep(const std::string& spec_path, unsigned jobs, const std::string& format,
              const std::string& out_path) {
    RingSpec spec = load_ring_spec(spec_path);
    SweepReport rep = run_sweep(spec, jobs);
    if (!out_path.empty()) {
        emit_report(rep, format, out_path);
        std::cerr << "wrote " << format << " report to " << out_path << "\n";
    } else {
        if (format == "csv") emit_csv(rep, std::cout);
        else emit_json(rep, std::cout);
    }
    return rep.any_failure() ? 1 : 0;
}

int cmd_verify(const std::string& spec_path, unsigned jobs, const std::string& format,
               const std::string& out_path) {
    RingSpec spec = load_ring_spec(spec_path);
    SweepReport rep = run_sweep(spec, jobs);

    unsigned contain_pass = 0, contain_total = 0;
    unsigned inv_pass = 0, inv_total = 0;
    std::ostringstream text;

    // Containment checks per row that ran them.
    for (const auto& row : rep.rows) {
        if (!row.bounds) continue;
        contain_total += 3;
        contain_pass += unsigned(row.bounds->lower_ok) + unsigned(row.bounds->upper_ok) +
                        unsigned(row.bounds->briancon_skoda_ok);
    }

    // Profile invariants on every successful row.
    for (const auto& row : rep.rows) {
        if (!row.ok()) continue;
        ++inv_total;
        try {
            row.profile->check_invariants();
            ++inv_pass;
        } catch (const std::exception&) {
        }
    }
    // Bracket monotonicity per element and prime.
    for (const auto& s : rep.per_prime) {
        for (std::size_t i = 0; i < s.brackets.size(); ++i) {
            Rational prev_lo(-1), prev_hi(INT64_MAX);
            bool ok = true;
            for (const auto& row : rep.rows) {
                if (row.p != s.p || !row.ok() || i >= row.elements.size()) continue;
                Rational lo(row.elements[i].nu, std::int64_t(row.q));
                Rational hi(row.elements[i].mu, std::int64_t(row.q));
                if (lo < prev_lo || hi > prev_hi) ok = false;
                prev_lo = lo;
                prev_hi = hi;
            }
            ++inv_total;
            if (ok) ++inv_pass;
        }
    }
    // Toric cross-check counts as one invariant when present.
    if (rep.aggregate.toric_signature) {
        ++inv_total;
        if (rep.aggregate.toric_cross_check_ok) ++inv_pass;
    }

    bool all_ok = contain_pass == contain_total && inv_pass == inv_total && !rep.any_failure();
    text << "containment checks: " << contain_pass << "/" << contain_total << " pass\n";
    text << "invariant checks: " << inv_pass << "/" << inv_total << " pass\n";
    for (const auto& row : rep.rows)
        if (!row.ok())
            text << "row p=" << row.p << " e=" << row.e << " failed: " << row.status << "\n";

    std::string payload;
    if (format == "json") {
        nlohmann::ordered_json j;
        j["containment_pass"] = contain_pass;
        j["containment_total"] = contain_total;
        j["invariant_pass"] = inv_pass;
        j["invariant_total"] = inv_total;
        j["all_ok"] = all_ok;
        payload = j.dump(2) + "\n";
    } else {
        payload = text.str();
    }
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open " + out_path);
        f << payload;
    } else {
        std::cout << payload;
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius-splitting laboratory: F-pure-threshold brackets, finite-level "
                 "F-signature estimates, local F-alpha proxies, and an exact toric oracle "
                 "over prime fields"};
    app.set_version_flag("--version", std::string(fsig::kToolVersion));
    app.require_subcommand(1);

    std::string ring_path, spec_path, element, format = "table", out_path, rays_text;
    std::string rank_method = "elimination";
    std::uint32_t e_max = 0;
    std::uint64_t seed = 1, veronese_n = 1;
    unsigned jobs = 1;
    std::vector<std::uint64_t> primes;

    auto* fpt = app.add_subcommand("fpt", "F-pure threshold bracket for an element");
    fpt->add_option("--ring", ring_path, "ring spec JSON")->required();
    fpt->add_option("--element", element, "element expression (default: first designated)");
    fpt->add_option("--e-max", e_max, "Frobenius depth override");
    fpt->add_option("--format", format, "table|json")->check(CLI::IsMember({"table", "json"}));
    fpt->add_option("--out", out_path, "write output to file");

    auto* fsig_cmd = app.add_subcommand("fsig", "finite-level F-signature profiles");
    auto* alpha = app.add_subcommand("alpha", "local F-alpha proxy profiles");
    for (auto* c : {fsig_cmd, alpha}) {
        c->add_option("--ring", ring_path, "ring spec JSON")->required();
        c->add_option("--primes", primes, "prime list override")->delimiter(',');
        c->add_option("--e-max", e_max, "Frobenius depth override");
        c->add_option("--jobs", jobs, "parallel (p,e) tasks");
        c->add_option("--rank-method", rank_method, "elimination|wiedemann")
            ->check(CLI::IsMember({"elimination", "wiedemann"}));
        c->add_option("--seed", seed, "seed for the randomized rank path");
        c->add_option("--format", format, "table|json")->check(CLI::IsMember({"table", "json"}));
        c->add_option("--out", out_path, "write output to file");
    }

    auto* toric = app.add_subcommand("toric", "exact toric F-signature from facet normals");
    toric->add_option("--rays", rays_text, "semicolon-separated rays, e.g. \"1,0;1,2\"");
    toric->add_option("--spec", spec_path, "ring spec JSON with a toric block");
    toric->add_option("--veronese", veronese_n, "pass to the n-th Veronese cone first");
    toric->add_option("--format", format, "table|json")->check(CLI::IsMember({"table", "json"}));
    toric->add_option("--out", out_path, "write output to file");

    auto* sweep = app.add_subcommand("sweep", "multi-prime sweep with CSV/JSON report");
    sweep->add_option("--spec", spec_path, "ring spec JSON")->required();
    sweep->add_option("--jobs", jobs, "parallel (p,e) tasks");
    sweep->add_option("--format", format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", out_path, "write report to file (default stdout)");

    auto* verify = app.add_subcommand("verify", "containment and invariant suite over a spec");
    verify->add_option("--spec", spec_path, "ring spec JSON")->required();
    verify->add_option("--jobs", jobs, "parallel (p,e) tasks");
    verify->add_option("--format", format, "table|json")->check(CLI::IsMember({"table", "json"}));
    verify->add_option("--out", out_path, "write output to file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // flag/spec validation errors exit 2
    }

    try {
        if (app.got_subcommand(fpt)) return cmd_fpt(ring_path, element, e_max, format, out_path);
        if (app.got_subcommand(fsig_cmd))
            return cmd_profiles(ring_path, primes, e_max, jobs, rank_method == "wiedemann", seed,
                                format, out_path, false);
        if (app.got_subcommand(alpha))
            return cmd_profiles(ring_path, primes, e_max, jobs, rank_method == "wiedemann", seed,
                                format, out_path, true);
        if (app.got_subcommand(toric))
            return cmd_toric(rays_text, spec_path, veronese_n, format, out_path);
        if (app.got_subcommand(sweep)) {
            if (format == "table") format = "csv";
            return cmd_sweep(spec_path, jobs, format, out_path);
        }
        if (app.got_subcommand(verify)) return cmd_verify(spec_path, jobs, format, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
