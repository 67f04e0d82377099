#pragma once

// Quaternion algebra: Hamilton product, conjugation, the exponential of the
// unit-quaternion group and the conjugation action C_q(x) = q x q̄.

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace jproc {

/// Raised when an argument violates an operation's stated precondition.
struct precondition_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised for inputs outside an operation's mathematical domain.
struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Tolerance used to accept a quaternion as unit at operation boundaries.
inline constexpr double unit_tolerance = 1e-9;

/// Below this |x| the exponential switches to its series form.
inline constexpr double exp_small_angle = 1e-8;

/// a + b i + c j + d k, stored in (scalar, i, j, k) order.
struct Quaternion {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}
  /// Real scalar embedded as a quaternion.
  constexpr explicit Quaternion(double scalar) : a(scalar) {}

  static constexpr Quaternion one() { return {1.0, 0.0, 0.0, 0.0}; }
  static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr std::array<double, 4> coords() const { return {a, b, c, d}; }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion& operator+=(const Quaternion& o) {
    a += o.a; b += o.b; c += o.c; d += o.d;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    a -= o.a; b -= o.b; c -= o.c; d -= o.d;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    a *= s; b *= s; c *= s; d *= s;
    return *this;
  }
};

constexpr Quaternion operator+(Quaternion x, const Quaternion& y) { return x += y; }
constexpr Quaternion operator-(Quaternion x, const Quaternion& y) { return x -= y; }
constexpr Quaternion operator-(const Quaternion& x) { return {-x.a, -x.b, -x.c, -x.d}; }
constexpr Quaternion operator*(Quaternion x, double s) { return x *= s; }
constexpr Quaternion operator*(double s, Quaternion x) { return x *= s; }
constexpr Quaternion operator/(const Quaternion& x, double s) { return {x.a / s, x.b / s, x.c / s, x.d / s}; }

/// Hamilton product.
constexpr Quaternion operator*(const Quaternion& x, const Quaternion& y) {
  return {x.a * y.a - x.b * y.b - x.c * y.c - x.d * y.d,
          x.a * y.b + x.b * y.a + x.c * y.d - x.d * y.c,
          x.a * y.c - x.b * y.d + x.c * y.a + x.d * y.b,
          x.a * y.d + x.b * y.c - x.c * y.b + x.d * y.a};
}

constexpr Quaternion quat_mul(const Quaternion& x, const Quaternion& y) { return x * y; }

/// Element of Im ℍ. The scalar part is zero by construction.
struct PureImaginary {
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  constexpr PureImaginary() = default;
  constexpr PureImaginary(double b_, double c_, double d_) : b(b_), c(c_), d(d_) {}

  /// Drops the scalar part of x.
  static constexpr PureImaginary imaginary_part(const Quaternion& x) { return {x.b, x.c, x.d}; }

  constexpr Quaternion quat() const { return {0.0, b, c, d}; }
  constexpr operator Quaternion() const { return quat(); }  // NOLINT(google-explicit-constructor)
  constexpr std::array<double, 3> coords() const { return {b, c, d}; }

  constexpr bool operator==(const PureImaginary&) const = default;
};

constexpr PureImaginary operator+(const PureImaginary& x, const PureImaginary& y) {
  return {x.b + y.b, x.c + y.c, x.d + y.d};
}
constexpr PureImaginary operator-(const PureImaginary& x, const PureImaginary& y) {
  return {x.b - y.b, x.c - y.c, x.d - y.d};
}
constexpr PureImaginary operator-(const PureImaginary& x) { return {-x.b, -x.c, -x.d}; }
constexpr PureImaginary operator*(double s, const PureImaginary& x) { return {s * x.b, s * x.c, s * x.d}; }

constexpr Quaternion conj(const Quaternion& x) { return {x.a, -x.b, -x.c, -x.d}; }
constexpr double norm2(const Quaternion& x) { return x.a * x.a + x.b * x.b + x.c * x.c + x.d * x.d; }
constexpr double norm2(const PureImaginary& x) { return x.b * x.b + x.c * x.c + x.d * x.d; }
inline double norm(const Quaternion& x) { return std::sqrt(norm2(x)); }
inline double norm(const PureImaginary& x) { return std::sqrt(norm2(x)); }
constexpr double re(const Quaternion& x) { return x.a; }

/// conj(x) / |x|². Throws domain_error for the zero quaternion.
inline Quaternion inverse(const Quaternion& x) {
  const double n2 = norm2(x);
  if (!(n2 > 0.0)) throw domain_error("inverse of zero quaternion");
  return conj(x) / n2;
}

struct QuatBasic {
  Quaternion conj;
  double norm;
  double re;
  Quaternion inverse;
};

/// Bundle of the elementary unary operations; inverse is only formed for x ≠ 0.
inline QuatBasic quat_basic(const Quaternion& x) {
  return {jproc::conj(x), jproc::norm(x), x.a, jproc::inverse(x)};
}

/// Euclidean distance in ℝ⁴.
inline double distance(const Quaternion& x, const Quaternion& y) { return norm(x - y); }

inline bool is_unit(const Quaternion& q, double tol = unit_tolerance) {
  return std::abs(norm(q) - 1.0) <= tol;
}

inline void require_unit(const Quaternion& q, const char* what) {
  if (!is_unit(q)) throw precondition_error(std::string(what) + ": quaternion is not unit");
}

inline Quaternion normalized(const Quaternion& x) {
  const double n = norm(x);
  if (!(n > 0.0)) throw domain_error("cannot normalize zero quaternion");
  return x / n;
}

/// sin(x)/x, with a series near zero.
inline double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

/// e^x = cos|x| + sin|x| · x/|x| on Im ℍ.
inline Quaternion quat_exp(const PureImaginary& x) {
  const double angle = norm(x);
  const double s = angle < exp_small_angle ? 1.0 - angle * angle / 6.0 : std::sin(angle) / angle;
  return {std::cos(angle), s * x.b, s * x.c, s * x.d};
}

/// q x q̄ for unit q. Preserves Re(x) and |x|.
inline Quaternion conj_action(const Quaternion& q, const Quaternion& x) {
  require_unit(q, "conj_action");
  return q * x * conj(q);
}

/// Conjugation restricted to Im ℍ, which it preserves.
inline PureImaginary conj_action(const Quaternion& q, const PureImaginary& x) {
  return PureImaginary::imaginary_part(conj_action(q, x.quat()));
}

/// q^n by binary exponentiation; negative n uses the inverse.
inline Quaternion quat_pow(const Quaternion& q, long n) {
  Quaternion base = n < 0 ? inverse(q) : q;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  Quaternion acc = Quaternion::one();
  while (e != 0) {
    if (e & 1UL) acc = acc * base;
    base = base * base;
    e >>= 1U;
  }
  return acc;
}

}  // namespace jproc
