#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "capkit/sparse_poly.hpp"

namespace capkit {

using Json = nlohmann::json;

inline Json poly_to_json(const PolyQ& p) {
  Json terms = Json::array();
  for (const auto& [mu, c] : p.terms())
    terms.push_back({{"exp", mu}, {"coef", rat_to_string(c)}});
  return Json{{"arity", p.arity()}, {"mode", "rational"}, {"terms", terms}};
}

inline Json poly_to_json(const PolyD& p) {
  Json terms = Json::array();
  for (const auto& [mu, c] : p.terms())
    terms.push_back({{"exp", mu}, {"coef", c}});
  return Json{{"arity", p.arity()}, {"mode", "float"}, {"terms", terms}};
}

namespace detail {

inline void check_poly_shape(const Json& j) {
  if (!j.is_object() || !j.contains("arity") || !j.contains("mode") ||
      !j.contains("terms"))
    throw std::invalid_argument(
        "polynomial JSON must have arity, mode, terms");
  if (!j["arity"].is_number_integer() || j["arity"].get<int>() < 0)
    throw std::invalid_argument("polynomial arity must be a nonnegative int");
  if (!j["terms"].is_array())
    throw std::invalid_argument("polynomial terms must be an array");
}

inline ExponentVec read_exp(const Json& t, int arity,
                            std::set<ExponentVec>& seen) {
  if (!t.is_object() || !t.contains("exp") || !t.contains("coef"))
    throw std::invalid_argument("term must have exp and coef");
  ExponentVec mu = t["exp"].get<ExponentVec>();
  if (static_cast<int>(mu.size()) != arity)
    throw std::invalid_argument("term exponent length != arity");
  if (!seen.insert(mu).second)
    throw std::invalid_argument("duplicate exponent " + exponent_to_string(mu));
  return mu;
}

}  // namespace detail

inline PolyQ poly_rational_from_json(const Json& j) {
  detail::check_poly_shape(j);
  if (j["mode"] != "rational")
    throw std::invalid_argument("expected mode 'rational'");
  PolyQ p(j["arity"].get<int>());
  std::set<ExponentVec> seen;
  for (const auto& t : j["terms"]) {
    ExponentVec mu = detail::read_exp(t, p.arity(), seen);
    if (!t["coef"].is_string())
      throw std::invalid_argument("rational coef must be a string");
    p.add_term(std::move(mu), rat_parse(t["coef"].get<std::string>()));
  }
  return p;
}

inline PolyD poly_float_from_json(const Json& j) {
  detail::check_poly_shape(j);
  if (j["mode"] != "float") throw std::invalid_argument("expected mode 'float'");
  PolyD p(j["arity"].get<int>());
  std::set<ExponentVec> seen;
  for (const auto& t : j["terms"]) {
    ExponentVec mu = detail::read_exp(t, p.arity(), seen);
    if (!t["coef"].is_number())
      throw std::invalid_argument("float coef must be a number");
    p.add_term(std::move(mu), t["coef"].get<double>());
  }
  return p;
}

using PolyVariant = std::variant<PolyQ, PolyD>;

inline PolyVariant poly_from_json(const Json& j) {
  detail::check_poly_shape(j);
  if (j["mode"] == "rational") return poly_rational_from_json(j);
  if (j["mode"] == "float") return poly_float_from_json(j);
  throw std::invalid_argument("mode must be 'rational' or 'float'");
}

// Any-mode load coerced to float coefficients.
inline PolyD poly_as_float_from_json(const Json& j) {
  PolyVariant v = poly_from_json(j);
  if (std::holds_alternative<PolyD>(v)) return std::get<PolyD>(v);
  return to_float(std::get<PolyQ>(v));
}

}  // namespace capkit
