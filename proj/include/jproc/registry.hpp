#pragma once

// Static name tables for the command line: maps, families and suites.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "jproc/maps.hpp"
#include "jproc/verify.hpp"

namespace jproc {

/// Raised for names that are not in a registry.
struct unknown_name_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using RegisteredMap = std::variant<GroupValuedMap, SelfMap>;

namespace detail {

inline long parse_int_arg(std::string_view text, std::string_view name) {
  long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw unknown_name_error("bad integer parameter in " + std::string(name));
  return v;
}

inline double parse_s_arg(std::string_view text, std::string_view name) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !(v >= 0.0 && v <= 1.0))
    throw unknown_name_error("parameter of " + std::string(name) + " must be a number in [0, 1]");
  return v;
}

/// Splits "base:param"; param is empty when there is no colon.
inline std::pair<std::string_view, std::optional<std::string_view>> split_name(std::string_view name) {
  const auto colon = name.find(':');
  if (colon == std::string_view::npos) return {name, std::nullopt};
  return {name.substr(0, colon), name.substr(colon + 1)};
}

}  // namespace detail

/// bm, bm_pow:<n>, H:<s>, Q, sigma:<k>, R, inv_sigma, inv_R, inv_H:<s>,
/// identity, antipodal.
inline RegisteredMap lookup_map(std::string_view name) {
  const auto [base, param] = detail::split_name(name);
  const auto no_param = [&] {
    if (param) throw unknown_name_error("map takes no parameter: " + std::string(name));
  };
  const auto need_param = [&] {
    if (!param) throw unknown_name_error("map needs a parameter: " + std::string(name));
    return *param;
  };

  if (base == "bm") {
    no_param();
    return bm_map();
  }
  if (base == "bm_pow") return bm_pow_map(detail::parse_int_arg(need_param(), name));
  if (base == "H") {
    const double s = detail::parse_s_arg(need_param(), name);
    return GroupValuedMap{[s](const PointS6& x) { return homotopy_H(s, x); }, std::string(name),
                          Equivariance::so3_conjugation};
  }
  if (base == "Q") {
    no_param();
    return q_map();
  }
  if (base == "sigma") return sigma_map(detail::parse_int_arg(need_param(), name));
  if (base == "R") {
    no_param();
    return rational_R_map();
  }
  if (base == "inv_sigma") {
    no_param();
    return SelfMap{[](const PointS6& x) { return exotic_involution(0.0, x); }, "inv_sigma"};
  }
  if (base == "inv_R") {
    no_param();
    return SelfMap{[](const PointS6& x) { return -rational_R(x); }, "inv_R"};
  }
  if (base == "inv_H") {
    const double s = detail::parse_s_arg(need_param(), name);
    return SelfMap{[s](const PointS6& x) { return exotic_involution(s, x); }, std::string(name)};
  }
  if (base == "identity") {
    no_param();
    return identity_map();
  }
  if (base == "antipodal") {
    no_param();
    return antipodal_map();
  }
  throw unknown_name_error("unknown map: " + std::string(name));
}

/// H, H_pow:<k>, demo_nonequiv, constant.
inline MapFamily lookup_family(std::string_view name) {
  const auto [base, param] = detail::split_name(name);
  if (base == "H_pow") {
    if (!param) throw unknown_name_error("H_pow needs a power: " + std::string(name));
    return homotopy_power_family(detail::parse_int_arg(*param, name));
  }
  if (param) throw unknown_name_error("family takes no parameter: " + std::string(name));
  if (base == "H") return homotopy_family();
  if (base == "demo_nonequiv") return demo_nonequiv_family();
  if (base == "constant") return constant_family();
  throw unknown_name_error("unknown family: " + std::string(name));
}

inline std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& s : registered_suites()) names.push_back(s.name);
  return names;
}

}  // namespace jproc
