#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "berglab/carleson.hpp"
#include "berglab/functions.hpp"
#include "berglab/norms.hpp"
#include "berglab/weights.hpp"

namespace berglab::cfg {

using json = nlohmann::ordered_json;

// Violations of the config schema or of an operation precondition; the CLI
// maps these to exit code 2 with the message on stderr.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rejects keys outside the allowed set.
void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where);

double require_number(const json& obj, const char* key, const std::string& where);
double number_or(const json& obj, const char* key, double fallback,
                 const std::string& where);
int int_or(const json& obj, const char* key, int fallback, const std::string& where);
std::string require_string(const json& obj, const char* key, const std::string& where);
cplx parse_complex(const json& v, const std::string& where);

Weight parse_weight(const json& spec);
AnalyticFunction parse_function(const json& spec);
SquareFamily parse_family(const json& spec);
QuadratureSpec parse_quadrature(const json& spec);
DiscMeasure parse_measure(const json& spec);
std::vector<AnalyticFunction> parse_suite(const json& spec, double p);

json load_file(const std::string& path);

// Catalog description used by the list-catalog command; sorted by label.
std::string catalog_text();

}  // namespace berglab::cfg
