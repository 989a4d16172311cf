#pragma once

#include <string>

#include "json.hpp"
#include "toric/approx.hpp"
#include "toric/casestudy.hpp"

namespace toric::report {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

json rat(const Rat& r);
json rats(const RatVec& v);
json integer(const Int& x);  // a JSON number when it fits in 64 bits, else a decimal string
json ints(const IntVec& v);
json cone(const Cone& c);
json ext(const ExtRat& x);

json fan_json(const Fan& fan);
json certificate_json(const CurveCertificate& c);
json chain_json(const MmpChain& chain);
json approx_json(const ApproxResult& r);
json form_json(const WeightedForm& f);
json tangent_json(const TangentReport& t);
json p4713_json(const P4713Report& r);
json candidates_json(const std::vector<Candidate>& c);

// Inputs. Every malformed document throws ParseError.
json read_json_file(const std::string& path);
Fan parse_fan(const json& j);
TorusDivisor parse_divisor(const json& j, std::size_t num_rays);
Cone parse_orbit(const std::string& text);
IntVec parse_int_vector(const std::string& text);
ArithmeticContext parse_context(const json& j);
Rat parse_rat_value(const json& j);

// Indented "key: value" lines, one leaf per line.
std::string to_text(const json& j);

}  // namespace toric::report
