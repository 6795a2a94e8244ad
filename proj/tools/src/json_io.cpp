#include "json_io.hpp"

#include <cmath>

#include "symprod/errors.hpp"

namespace symprod::cli {


json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

json to_json(std::span<const Complex> values) {
  json j = json::array();
  for (const auto& v : values) j.push_back(to_json(v));
  return j;
}

json to_json(const ComplexPoint& z) { return to_json(z.coords()); }

json to_json(const PlanarDomain& d) {
  json j{{"kind", to_string(d.kind())}};
  if (d.bounded()) {
    j["center"] = to_json(d.center());
    j["radius"] = d.radius();
  }
  if (d.kind() == DomainKind::ComplementFinite || d.kind() == DomainKind::DiscMinusFinite)
    j["punctures"] = to_json(d.punctures());
  return j;
}

json to_json(const Hyperplane& h) {
  return {{"witness", to_json(h.witness())}, {"coeffs", to_json(std::span<const Complex>(h.coeffs()))},
          {"offset", to_json(h.offset())}};
}

json to_json(const Classification& c) {
  json j{{"verdict", to_string(c.verdict)}, {"threshold", c.threshold}, {"reason", c.reason}};
  j["complement"] = c.complement.infinite() ? json("inf") : json(*c.complement.count);
  j["witness"] = c.witness ? json(c.witness->tag) : json(nullptr);
  return j;
}

namespace {

json number_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json cert_json(const LowerCertificate& c) {
  json j{{"tag", to_string(c.kind)}, {"value", c.value}};
  if (c.map) j["map"] = {{"tag", c.map->tag()}, {"a", to_json(c.map->a())}, {"b", to_json(c.map->b())},
                         {"c", to_json(c.map->c())}, {"d", to_json(c.map->d())}};
  if (c.kind == LowerCertificate::Kind::Coordinate) j["coordinate"] = c.coordinate;
  if (c.kind == LowerCertificate::Kind::PhiOmega) j["omega"] = to_json(c.omega);
  return j;
}

json cert_json(const UpperCertificate& c) {
  json j{{"tag", to_string(c.kind)}};
  if (!c.permutation.empty()) j["permutation"] = c.permutation;
  if (c.disc) {
    json coeffs = json::array();
    for (const auto& row : c.disc->coefficients) coeffs.push_back(to_json(row));
    j["disc"] = {{"coefficients", coeffs}, {"sigma", c.disc->sigma}, {"boundary_margin", c.disc->boundary_margin}};
  }
  if (!c.diagnostic.empty()) j["diagnostic"] = c.diagnostic;
  return j;
}

}  // namespace

json to_json(const DistanceBound& b) {
  return {{"lower", number_or_inf(b.lower)},
          {"upper", number_or_inf(b.upper)},
          {"lower_cert", cert_json(b.lower_cert)},
          {"upper_cert", cert_json(b.upper_cert)}};
}

json to_json(const PeakReport& r) {
  json approach = json::array();
  for (const auto& a : r.approach) approach.push_back({{"k", a.k}, {"modulus", a.modulus}});
  json j{{"target", to_json(r.target)},
         {"max_interior_modulus", r.max_interior_modulus},
         {"target_value", to_json(r.target_value)},
         {"approach", approach},
         {"verdict", r.pass ? "PASS" : "FAIL"}};
  if (!r.diagnostic.empty()) j["diagnostic"] = r.diagnostic;
  return j;
}

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError("complex values must be [re, im] pairs, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<Complex> complex_list_from_json(const json& j) {
  if (!j.is_array()) throw ValidationError("expected a list of [re, im] pairs, got " + j.dump());
  std::vector<Complex> out;
  for (const auto& e : j) out.push_back(complex_from_json(e));
  return out;
}

PlanarDomain domain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ValidationError("domain must be an object with a string \"kind\"");
  const std::string kind = j["kind"];
  auto center = [&] { return j.contains("center") ? complex_from_json(j["center"]) : Complex(0.0); };
  auto radius = [&] {
    if (!j.contains("radius") || !j["radius"].is_number()) throw ValidationError("domain: missing numeric radius");
    return j["radius"].get<double>();
  };
  auto punctures = [&] {
    if (!j.contains("punctures")) throw ValidationError("domain: missing punctures");
    return complex_list_from_json(j["punctures"]);
  };
  if (kind == "unit_disc") return PlanarDomain::unit_disc();
  if (kind == "disc") return PlanarDomain::disc(center(), radius());
  if (kind == "complement_finite") return PlanarDomain::complement_finite(punctures());
  if (kind == "disc_minus_finite") return PlanarDomain::disc_minus_finite(center(), radius(), punctures());
  throw ValidationError("domain: unknown kind \"" + kind + "\"");
}

json parse_flag(const std::string& text, const std::string& flag) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(flag + ": malformed JSON (" + e.what() + ")");
  }
}

}  // namespace symprod::cli
