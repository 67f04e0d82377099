#pragma once

// Text, JSON and CSV forms of quaternions, points, reports and sweep records.

#include <array>
#include <charconv>
#include <cmath>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "jproc/manifold.hpp"
#include "jproc/quat.hpp"
#include "jproc/verify.hpp"

namespace jproc {

/// Raised by the parsers on malformed input.
struct parse_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Shortest round-trip decimal; −0 prints as 0, non-finite values as null.
inline std::string format_real(double v) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) return "0";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return {buf.data(), res.ptr};
}

inline std::string json_array(std::span<const double> values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i != 0) out += ',';
    out += format_real(values[i]);
  }
  return out + "]";
}

/// [a,b,c,d]
inline std::string to_json(const Quaternion& q) {
  const auto c = q.coords();
  return json_array(c);
}

/// {"p":[b,c,d],"w":[a,b,c,d]}
inline std::string to_json(const PointS6& x) {
  const auto p = x.p.coords();
  const auto w = x.w.coords();
  return R"({"p":)" + json_array(p) + R"(,"w":)" + json_array(w) + "}";
}

/// a+bi+cj+dk
inline std::string to_text(const Quaternion& q) {
  std::string out = format_real(q.a);
  constexpr std::array<char, 3> units{'i', 'j', 'k'};
  const std::array<double, 3> im{q.b, q.c, q.d};
  for (std::size_t n = 0; n < 3; ++n) {
    const std::string s = format_real(im[n]);
    if (s.front() != '-') out += '+';
    out += s;
    out += units[n];
  }
  return out;
}

inline std::string csv_row(const PointS6& x) {
  const Ambient7 v = embed7(x);
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i != 0) out += ',';
    out += format_real(v[i]);
  }
  return out;
}

inline constexpr std::string_view point_csv_header = "p1,p2,p3,w0,w1,w2,w3";

inline std::string to_json(const VerifyReport& r) {
  std::ostringstream os;
  os << R"({"suite":")" << r.suite << R"(","samples":)" << r.samples << R"(,"max_residual":)"
     << format_real(r.max_residual) << R"(,"mean_residual":)" << format_real(r.mean_residual)
     << R"(,"worst_point":)" << to_json(r.worst_point) << R"(,"threshold":)" << format_real(r.threshold)
     << R"(,"pass":)" << (r.pass ? "true" : "false") << "}";
  return os.str();
}

inline constexpr std::string_view sweep_csv_header = "s,min_abs_det,min_singular_value,sign_changes,samples";

inline std::string csv_row(const SweepRecord& r) {
  return format_real(r.s) + "," + format_real(r.min_abs_det) + "," + format_real(r.min_singular_value) + "," +
         std::to_string(r.sign_changes) + "," + std::to_string(r.samples);
}

inline std::string to_json(const SweepRecord& r) {
  return R"({"s":)" + format_real(r.s) + R"(,"min_abs_det":)" + format_real(r.min_abs_det) +
         R"(,"min_singular_value":)" + format_real(r.min_singular_value) + R"(,"sign_changes":)" +
         std::to_string(r.sign_changes) + R"(,"samples":)" + std::to_string(r.samples) + "}";
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

}  // namespace detail

/// Parses sums of terms such as "0.5", "-i", "2.5e-1j", "1-0.5i+k".
inline Quaternion parse_quaternion(std::string_view text) {
  const std::string_view body = detail::trim(text);
  if (body.empty()) throw parse_error("empty quaternion literal");

  // Blanks may separate terms and signs but never split a number from its unit.
  const auto skip_blanks = [&](std::size_t pos) {
    while (pos < body.size() && (body[pos] == ' ' || body[pos] == '\t')) ++pos;
    return pos;
  };
  const auto is_unit = [](char ch) { return ch == 'i' || ch == 'j' || ch == 'k'; };

  Quaternion q;
  std::size_t pos = 0;
  const char* begin = body.data();
  const std::size_t n = body.size();
  while (pos < n) {
    double sign = 1.0;
    if (body[pos] == '+' || body[pos] == '-') {
      sign = body[pos] == '-' ? -1.0 : 1.0;
      pos = skip_blanks(pos + 1);
    } else if (pos != 0) {
      throw parse_error("expected '+' or '-' in quaternion literal: " + std::string(text));
    }
    if (pos >= n) throw parse_error("dangling sign in quaternion literal: " + std::string(text));

    double coeff = 1.0;
    bool have_number = false;
    if (!is_unit(body[pos])) {
      if (body[pos] == '+' || body[pos] == '-')
        throw parse_error("repeated sign in quaternion literal: " + std::string(text));
      const auto res = std::from_chars(begin + pos, begin + n, coeff);
      if (res.ec != std::errc{} || res.ptr == begin + pos)
        throw parse_error("bad number in quaternion literal: " + std::string(text));
      pos = static_cast<std::size_t>(res.ptr - begin);
      have_number = true;
    }
    char unit = 'r';
    if (pos < n && is_unit(body[pos])) unit = body[pos++];
    if (!have_number && unit == 'r') throw parse_error("empty term in quaternion literal: " + std::string(text));
    pos = skip_blanks(pos);

    const double v = sign * coeff;
    switch (unit) {
      case 'i': q.b += v; break;
      case 'j': q.c += v; break;
      case 'k': q.d += v; break;
      default: q.a += v; break;
    }
  }
  return q;
}

/// Accepts "(bi+cj+dk, a+bi+cj+dk)" or {"p":[b,c,d],"w":[a,b,c,d]}. The
/// result must satisfy the S⁶ constraint.
inline PointS6 parse_point(std::string_view text) {
  const std::string_view body = detail::trim(text);
  if (body.empty()) throw parse_error("empty point literal");
  PointS6 x;
  if (body.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(body);
    } catch (const nlohmann::json::exception& e) {
      throw parse_error(std::string("bad JSON point: ") + e.what());
    }
    if (!j.is_object() || !j.contains("p") || !j.contains("w") || !j["p"].is_array() || !j["w"].is_array() ||
        j["p"].size() != 3 || j["w"].size() != 4)
      throw parse_error("JSON point needs \"p\" (3 numbers) and \"w\" (4 numbers)");
    for (const auto& v : j["p"])
      if (!v.is_number()) throw parse_error("JSON point coordinates must be numbers");
    for (const auto& v : j["w"])
      if (!v.is_number()) throw parse_error("JSON point coordinates must be numbers");
    x.p = {j["p"][0].get<double>(), j["p"][1].get<double>(), j["p"][2].get<double>()};
    x.w = {j["w"][0].get<double>(), j["w"][1].get<double>(), j["w"][2].get<double>(), j["w"][3].get<double>()};
  } else {
    if (body.front() != '(' || body.back() != ')') throw parse_error("point literal must be parenthesized");
    const std::string_view inner = body.substr(1, body.size() - 2);
    const auto comma = inner.find(',');
    if (comma == std::string_view::npos || inner.find(',', comma + 1) != std::string_view::npos)
      throw parse_error("point literal needs exactly two components");
    const Quaternion p = parse_quaternion(inner.substr(0, comma));
    if (p.a != 0.0) throw parse_error("first component of a point must be pure imaginary");
    x.p = PureImaginary::imaginary_part(p);
    x.w = parse_quaternion(inner.substr(comma + 1));
  }
  if (!on_sphere(x)) throw parse_error("point does not satisfy |p|^2 + |w|^2 = 1");
  return x;
}

}  // namespace jproc
