#pragma once

#include <set>
#include <variant>

#include <json.hpp>

#include "capkit/linear_operator.hpp"
#include "capkit/poly_json.hpp"

namespace capkit {

using OperatorVariant = std::variant<OperatorQ, OperatorD>;

namespace detail {

inline Json profile_to_json(const LinearOperator<Rat>& t) {
  if (t.bounded()) return Json(t.profile->bounds);
  return Json{{"unbounded", t.trunc_order}};
}

inline Json profile_to_json(const LinearOperator<double>& t) {
  if (t.bounded()) return Json(t.profile->bounds);
  return Json{{"unbounded", t.trunc_order}};
}

}  // namespace detail

template <class C>
Json operator_to_json(const LinearOperator<C>& t) {
  Json action = Json::array();
  for (const auto& [mu, img] : t.action)
    action.push_back({{"mu", mu}, {"image", poly_to_json(img)}});
  return Json{{"in_arity", t.in_arity},
              {"out_arity", t.out_arity},
              {"profile", detail::profile_to_json(t)},
              {"action", action}};
}

// {"in_arity", "out_arity", "profile": [..] | {"unbounded": N},
//  "action": [{"mu": [..], "image": <polynomial>}, ...]}.
// The action must tabulate the full declared domain (the box 0 <= mu <=
// profile, or |mu| <= N); rational and float images may not be mixed.
inline OperatorVariant operator_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("in_arity") || !j.contains("out_arity") ||
      !j.contains("profile") || !j.contains("action"))
    throw std::invalid_argument(
        "operator JSON must have in_arity, out_arity, profile, action");
  const int n = j["in_arity"].get<int>();
  const int m = j["out_arity"].get<int>();
  if (n < 0 || m < 0) throw std::invalid_argument("operator arity < 0");
  if (!j["action"].is_array() || j["action"].empty())
    throw std::invalid_argument("operator action must be a nonempty array");

  bool rational = true;
  {
    const Json& first = j["action"][0];
    if (!first.is_object() || !first.contains("image"))
      throw std::invalid_argument("action entry must have mu and image");
    rational = first["image"].value("mode", "") == "rational";
  }

  auto build = [&](auto tag) -> OperatorVariant {
    using C = decltype(tag);
    LinearOperator<C> t;
    t.in_arity = n;
    t.out_arity = m;
    const Json& prof = j["profile"];
    if (prof.is_array()) {
      t.profile = DegreeProfile(prof.get<std::vector<int>>());
      if (t.profile->arity() != n)
        throw std::invalid_argument("operator profile length != in_arity");
    } else if (prof.is_object() && prof.contains("unbounded")) {
      t.trunc_order = prof["unbounded"].get<int>();
      if (t.trunc_order < 0)
        throw std::invalid_argument("operator truncation order < 0");
    } else {
      throw std::invalid_argument(
          "operator profile must be an array or {\"unbounded\": N}");
    }
    std::set<ExponentVec> seen;
    for (const Json& entry : j["action"]) {
      if (!entry.is_object() || !entry.contains("mu") || !entry.contains("image"))
        throw std::invalid_argument("action entry must have mu and image");
      ExponentVec mu = entry["mu"].get<ExponentVec>();
      if (!seen.insert(mu).second)
        throw std::invalid_argument("duplicate action monomial " +
                                    exponent_to_string(mu));
      if constexpr (std::is_same_v<C, Rat>)
        t.set_image(std::move(mu), poly_rational_from_json(entry["image"]));
      else
        t.set_image(std::move(mu), poly_float_from_json(entry["image"]));
    }
    // the declared domain must be fully tabulated
    ExponentVec mu(n, 0);
    if (t.bounded()) {
      do {
        if (!seen.count(mu))
          throw std::invalid_argument("action missing monomial " +
                                      exponent_to_string(mu));
      } while (next_in_box(mu, *t.profile));
    } else {
      do {
        if (!seen.count(mu))
          throw std::invalid_argument("action missing monomial " +
                                      exponent_to_string(mu));
      } while (next_by_total_degree(mu, t.trunc_order));
    }
    return t;
  };

  if (rational) return build(Rat{});
  return build(double{});
}

}  // namespace capkit
