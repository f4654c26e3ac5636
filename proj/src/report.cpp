#include "fsig/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fsig {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

nlohmann::ordered_json rat_json(const Rational& r) {
    return {{"num", r.num}, {"den", r.den}};
}

} // namespace

void emit_csv(const SweepReport& report, std::ostream& os) {
    os << "label,p,e,q,colength_Ie,s_e_num,s_e_den,m_e,alpha_e_num,alpha_e_den,"
          "nu_f,mu_f,fpt_lo_num,fpt_lo_den,fpt_hi_num,fpt_hi_den,status\n";
    for (const auto& row : report.rows) {
        os << csv_escape(report.spec.label) << "," << row.p << "," << row.e << "," << row.q << ",";
        if (row.profile) {
            const auto& pr = *row.profile;
            os << pr.colength_Ie << "," << pr.s_e.num << "," << pr.s_e.den << ",";
            if (pr.m_e) os << *pr.m_e;
            os << ",";
            if (pr.alpha_e) os << pr.alpha_e->num << "," << pr.alpha_e->den;
            else os << ",";
            os << ",";
            if (pr.nu_f) os << *pr.nu_f;
            os << ",";
            if (pr.mu_f) os << *pr.mu_f;
            os << ",";
            if (pr.nu_f) {
                os << *pr.nu_f << "," << row.q << "," << *pr.mu_f << "," << row.q;
            } else {
                os << ",,,";
            }
        } else {
            os << ",,,,,,,,,,,"; // twelve empty fields
        }
        os << "," << csv_escape(row.status) << "\n";
    }
}

std::string report_csv(const SweepReport& report) {
    std::ostringstream ss;
    emit_csv(report, ss);
    return ss.str();
}

void emit_json(const SweepReport& report, std::ostream& os) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["tool"] = report.tool_version;
    j["spec"] = nlohmann::ordered_json::parse(ring_spec_to_json_text(report.spec));

    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : report.rows) {
        nlohmann::ordered_json r;
        r["p"] = row.p;
        r["e"] = row.e;
        r["q"] = row.q;
        r["status"] = row.status;
        if (row.profile) {
            const auto& pr = *row.profile;
            r["colength_Ie"] = pr.colength_Ie;
            r["s_e"] = rat_json(pr.s_e);
            r["m_e"] = pr.m_e ? nlohmann::ordered_json(*pr.m_e) : nlohmann::ordered_json(nullptr);
            r["alpha_e"] =
                pr.alpha_e ? rat_json(*pr.alpha_e) : nlohmann::ordered_json(nullptr);
            r["order_is_exact"] = pr.order_is_exact;
            auto kd = nlohmann::ordered_json::array();
            for (const auto& [deg, dim] : pr.kernel_degree_profile)
                kd.push_back({{"degree", deg}, {"dim", dim}});
            r["kernel_degree_profile"] = kd;
        }
        auto els = nlohmann::ordered_json::array();
        for (const auto& el : row.elements) {
            els.push_back({{"name", el.name},
                           {"nu", el.nu},
                           {"mu", el.mu},
                           {"fpt_lo", rat_json(Rational(el.nu, std::int64_t(row.q)))},
                           {"fpt_hi", rat_json(Rational(el.mu, std::int64_t(row.q)))}});
        }
        r["elements"] = els;
        if (row.bounds) {
            const auto& b = *row.bounds;
            r["bound_check"] = {{"len_mod_me", b.len_mod_me},
                                {"len_mod_Ie", b.len_mod_Ie},
                                {"nu_m", b.nu_m},
                                {"nu_m_exact", b.nu_m_exact},
                                {"len_mod_m_nu1", b.len_mod_m_nu1},
                                {"lower_ok", b.lower_ok},
                                {"upper_ok", b.upper_ok},
                                {"briancon_skoda_ok", b.briancon_skoda_ok}};
        }
        r["wall_ms"] = row.wall_ms;
        rows.push_back(std::move(r));
    }
    j["rows"] = rows;

    auto pp = nlohmann::ordered_json::array();
    for (const auto& s : report.per_prime) {
        nlohmann::ordered_json e;
        e["p"] = s.p;
        e["s_estimate"] =
            s.s_estimate ? rat_json(*s.s_estimate) : nlohmann::ordered_json(nullptr);
        e["s_uncertainty"] =
            s.s_uncertainty ? rat_json(*s.s_uncertainty) : nlohmann::ordered_json(nullptr);
        e["alpha_estimate"] =
            s.alpha_estimate ? rat_json(*s.alpha_estimate) : nlohmann::ordered_json(nullptr);
        auto brs = nlohmann::ordered_json::array();
        for (const auto& b : s.brackets)
            brs.push_back({{"name", b.name},
                           {"lower", rat_json(b.lower)},
                           {"upper", rat_json(b.upper)},
                           {"e_used", b.e_used}});
        e["brackets"] = brs;
        pp.push_back(std::move(e));
    }
    j["per_prime"] = pp;

    nlohmann::ordered_json agg;
    agg["s_min"] = report.aggregate.s_min ? rat_json(*report.aggregate.s_min)
                                          : nlohmann::ordered_json(nullptr);
    agg["alpha_min"] = report.aggregate.alpha_min ? rat_json(*report.aggregate.alpha_min)
                                                  : nlohmann::ordered_json(nullptr);
    auto ixs = nlohmann::ordered_json::array();
    for (const auto& ix : report.aggregate.element_brackets)
        ixs.push_back({{"name", ix.name},
                       {"lower", rat_json(ix.lower)},
                       {"upper", rat_json(ix.upper)},
                       {"nonempty", ix.nonempty}});
    agg["element_brackets"] = ixs;
    agg["toric_signature"] = report.aggregate.toric_signature
                                 ? rat_json(*report.aggregate.toric_signature)
                                 : nlohmann::ordered_json(nullptr);
    agg["toric_cross_check_ok"] = report.aggregate.toric_cross_check_ok;
    agg["extrapolation"] = nullptr; // reserved, never fitted here
    j["aggregate"] = agg;

    os << j.dump(2) << "\n";
}

std::string report_json(const SweepReport& report) {
    std::ostringstream ss;
    emit_json(report, ss);
    return ss.str();
}

void emit_report(const SweepReport& report, const std::string& format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit_report: cannot open '" + path + "' for writing");
    if (format == "csv") emit_csv(report, out);
    else if (format == "json") emit_json(report, out);
    else throw std::invalid_argument("emit_report: unknown format '" + format + "'");
    out.flush();
    if (!out) throw std::runtime_error("emit_report: write failed for '" + path + "'");
}

} // namespace fsig
