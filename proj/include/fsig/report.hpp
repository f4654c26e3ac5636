#pragma once

#include <iosfwd>
#include <string>

#include "fsig/sweep.hpp"

namespace fsig {

/// CSV with the fixed column contract:
/// label,p,e,q,colength_Ie,s_e_num,s_e_den,m_e,alpha_e_num,alpha_e_den,
/// nu_f,mu_f,fpt_lo_num,fpt_lo_den,fpt_hi_num,fpt_hi_den,status
/// Missing optionals are empty fields; nu_f/mu_f and the per-row fpt bracket
/// refer to the first designated element. Byte-deterministic given identical
/// report content.
void emit_csv(const SweepReport& report, std::ostream& os);
std::string report_csv(const SweepReport& report);

/// JSON mirror of the whole SweepReport, rationals as {num, den}.
void emit_json(const SweepReport& report, std::ostream& os);
std::string report_json(const SweepReport& report);

/// Persist in the chosen format ("csv" or "json"); I/O errors carry the path.
void emit_report(const SweepReport& report, const std::string& format, const std::string& path);

} // namespace fsig
