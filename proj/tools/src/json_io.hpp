#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "symprod/domains.hpp"
#include "symprod/invmetrics.hpp"
#include "symprod/peaks.hpp"
#include "symprod/symgeo.hpp"

namespace symprod::cli {

using nlohmann::json;

json to_json(Complex c);
json to_json(std::span<const Complex> values);
json to_json(const ComplexPoint& z);
json to_json(const PlanarDomain& d);
json to_json(const Hyperplane& h);
json to_json(const Classification& c);
json to_json(const DistanceBound& b);
json to_json(const PeakReport& r);

/// Parses "[re, im]".
Complex complex_from_json(const json& j);
std::vector<Complex> complex_list_from_json(const json& j);
PlanarDomain domain_from_json(const json& j);

/// json::parse with errors rethrown as ValidationError naming the flag.
json parse_flag(const std::string& text, const std::string& flag);

}  // namespace symprod::cli
