#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "berglab/carleson.hpp"
#include "berglab/estimate.hpp"
#include "berglab/norms.hpp"
#include "berglab/volterra.hpp"
#include "berglab/weight_classes.hpp"

namespace berglab::report {

using json = nlohmann::ordered_json;

json complex_json(cplx z);
json estimate_json(const ConstantEstimate& e);
json lp_report_json(const LPReport& r);
json tilde_report_json(const TildeReport& r);
json binfty_json(const BinftyReport& r);
json kt_json(const KTFit& f);
json profile_json(const VanishingProfile& p);
json tg_profile_json(const TgProfile& p);
json resolvent_json(const ResolventVerdict& v);

// RFC 4180: CRLF line endings, quotes doubled, fields quoted when needed.
std::string csv_field(const std::string& value);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);
void write_json(const std::string& path, const json& j);

std::string format_double(double v);

}  // namespace berglab::report
