#include "berglab/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace berglab::report {

json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

namespace {
json finite_or_string(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}
}  // namespace

json estimate_json(const ConstantEstimate& e) {
  json j;
  j["value"] = finite_or_string(e.value);
  j["witness_anchor"] = complex_json(e.witness_anchor);
  j["samples"] = e.samples;
  j["slope"] = finite_or_string(e.level_slope);
  j["diverging"] = e.diverging;
  json levels = json::array();
  for (double v : e.level_max) levels.push_back(finite_or_string(v));
  j["level_max"] = levels;
  return j;
}

json lp_report_json(const LPReport& r) {
  json j;
  j["min_ratio"] = finite_or_string(r.min_ratio);
  j["max_ratio"] = finite_or_string(r.max_ratio);
  j["spread"] = finite_or_string(r.spread);
  j["one_sided_max"] = finite_or_string(r.one_sided_max);
  j["any_nonfinite"] = r.any_nonfinite;
  json rows = json::array();
  for (const LPRow& row : r.rows) {
    json rj;
    rj["function"] = row.label;
    rj["bergman_p"] = finite_or_string(row.bergman_p);
    rj["lp_p"] = finite_or_string(row.lp_p);
    rj["ratio"] = finite_or_string(row.ratio);
    rows.push_back(rj);
  }
  j["rows"] = rows;
  return j;
}

json tilde_report_json(const TildeReport& r) {
  json j;
  j["norm_spread"] = finite_or_string(r.norm_spread);
  j["lp_spread"] = finite_or_string(r.lp_spread);
  json rows = json::array();
  for (const TildeRow& row : r.rows) {
    json rj;
    rj["function"] = row.label;
    rj["base_p"] = finite_or_string(row.base_p);
    rj["tilde_p"] = finite_or_string(row.tilde_p);
    rj["lp_tilde_p"] = finite_or_string(row.lp_tilde_p);
    rows.push_back(rj);
  }
  j["rows"] = rows;
  return j;
}

json binfty_json(const BinftyReport& r) {
  json j;
  j["member_any"] = r.member_any;
  json per_p = json::array();
  for (const BinftyEntry& e : r.per_p) {
    json ej;
    ej["p"] = e.p;
    ej["member"] = e.member;
    ej["estimate"] = estimate_json(e.estimate);
    per_p.push_back(ej);
  }
  j["per_p"] = per_p;
  return j;
}

json kt_json(const KTFit& f) {
  json j;
  j["delta"] = finite_or_string(f.delta);
  j["C"] = finite_or_string(f.C);
  j["worst_residual"] = finite_or_string(f.worst_residual);
  j["failed"] = f.failed;
  j["witness_anchor"] = complex_json(f.witness_anchor);
  j["samples"] = f.samples;
  return j;
}

json profile_json(const VanishingProfile& p) {
  json j;
  j["vanishing"] = p.vanishing;
  j["tail_slope"] = finite_or_string(p.tail_slope);
  json rows = json::array();
  for (const ProfileRow& row : p.rows) {
    json rj;
    rj["level"] = row.level;
    rj["value"] = finite_or_string(row.value);
    rows.push_back(rj);
  }
  j["levels"] = rows;
  return j;
}

json tg_profile_json(const TgProfile& p) {
  json j;
  j["compactness_plausible"] = p.compactness_plausible;
  j["tail_slope"] = finite_or_string(p.tail_slope);
  json rows = json::array();
  for (const ProfileLevel& row : p.rows) {
    json rj;
    rj["level"] = row.level;
    rj["value"] = finite_or_string(row.value);
    rows.push_back(rj);
  }
  j["levels"] = rows;
  return j;
}

json resolvent_json(const ResolventVerdict& v) {
  json j;
  j["lambda"] = complex_json(v.lambda);
  j["spread"] = finite_or_string(v.spread);
  j["verdict"] = to_string(v.verdict);
  j["twisted_weight"] = v.twisted_weight_label;
  j["diverging"] = v.diverging;
  j["tilde_surrogate_member"] = v.tilde_surrogate_member;
  return j;
}

std::string csv_field(const std::string& value) {
  const bool needs_quotes =
      value.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs_quotes) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  auto line = [&out](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      out << csv_field(fields[i]);
    }
    out << "\r\n";
  };
  line(header);
  for (const auto& row : rows) line(row);
}

void write_json(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file " + path);
  out << j.dump(2) << "\n";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace berglab::report
