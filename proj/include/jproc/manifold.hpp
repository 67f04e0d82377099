#pragma once

// S⁶ ⊂ Im ℍ × ℍ, the SO(4) = S³×S³/±1 action on it, its invariant function,
// the antipodal involution, the S⁵ slice Re(w) = 0, ambient ℝ⁷ coordinates,
// oriented tangent frames and seeded uniform sampling.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "jproc/quat.hpp"

namespace jproc {

/// Tolerance of the |p|² + |w|² = 1 constraint.
inline constexpr double sphere_tolerance = 1e-9;
/// Tolerance of the Re(w) = 0 slice.
inline constexpr double slice_tolerance = 1e-9;

/// (p, w) ∈ Im ℍ × ℍ with |p|² + |w|² = 1.
struct PointS6 {
  PureImaginary p;
  Quaternion w;

  constexpr bool operator==(const PointS6&) const = default;
};

inline double norm2(const PointS6& x) { return norm2(x.p) + norm2(x.w); }

inline bool on_sphere(const PointS6& x, double tol = sphere_tolerance) {
  return std::isfinite(norm2(x)) && std::abs(norm2(x) - 1.0) <= tol;
}

inline void require_on_sphere(const PointS6& x, const char* what) {
  if (!on_sphere(x)) throw precondition_error(std::string(what) + ": point is not on S^6");
}

/// Radial projection back onto S⁶.
inline PointS6 retract(const PointS6& x) {
  const double n = std::sqrt(norm2(x));
  if (!(n > 0.0)) throw domain_error("retract: zero vector");
  return {(1.0 / n) * x.p, x.w / n};
}

/// Ambient ℝ⁷ distance.
inline double distance(const PointS6& x, const PointS6& y) {
  return std::sqrt(norm2(x.p - y.p) + norm2(x.w - y.w));
}

inline PointS6 operator-(const PointS6& x) { return {-x.p, -x.w}; }

/// The antipodal involution δ(p, w) = (−p, −w).
inline PointS6 antipodal(const PointS6& x) { return -x; }

/// S(p, w) = |p|² − |w|²; constant on SO(4) orbits.
inline double invariant_S(const PointS6& x) {
  require_on_sphere(x, "invariant_S");
  return norm2(x.p) - norm2(x.w);
}

/// A pair of unit quaternions modulo (q, r) ~ (−q, −r). The stored
/// representative has the first nonzero coordinate of q positive.
class SO4Element {
 public:
  SO4Element() = default;

  SO4Element(const Quaternion& q, const Quaternion& r) : q_(q), r_(r) {
    require_unit(q, "SO4Element");
    require_unit(r, "SO4Element");
    for (double c : q_.coords()) {
      if (c == 0.0) continue;
      if (c < 0.0) {
        q_ = -q_;
        r_ = -r_;
      }
      break;
    }
  }

  static SO4Element identity() { return {}; }

  const Quaternion& q() const { return q_; }
  const Quaternion& r() const { return r_; }

  /// Componentwise product.
  friend SO4Element operator*(const SO4Element& g, const SO4Element& h) {
    return {g.q_ * h.q_, g.r_ * h.r_};
  }

  friend bool operator==(const SO4Element&, const SO4Element&) = default;

 private:
  Quaternion q_ = Quaternion::one();
  Quaternion r_ = Quaternion::one();
};

/// (q, r)·(p, w) = (r p r̄, q w r̄). With this ordering the Blakers-Massey map
/// satisfies b(g·x) = q b(x) q̄ and (q, r) ↦ ±q is the projection to SO(3).
inline PointS6 so4_act(const Quaternion& q, const Quaternion& r, const PointS6& x) {
  require_unit(q, "so4_act");
  require_unit(r, "so4_act");
  require_on_sphere(x, "so4_act");
  const Quaternion rc = conj(r);
  return {PureImaginary::imaginary_part(r * x.p.quat() * rc), q * x.w * rc};
}

inline PointS6 so4_act(const SO4Element& g, const PointS6& x) { return so4_act(g.q(), g.r(), x); }

/// Coordinates (p₁, p₂, p₃, w₀, w₁, w₂, w₃).
using Ambient7 = std::array<double, 7>;

inline Ambient7 embed7(const PointS6& x) {
  return {x.p.b, x.p.c, x.p.d, x.w.a, x.w.b, x.w.c, x.w.d};
}

inline PointS6 from_ambient(const Ambient7& v) {
  return {{v[0], v[1], v[2]}, {v[3], v[4], v[5], v[6]}};
}

inline double dot(const Ambient7& u, const Ambient7& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < 7; ++i) s += u[i] * v[i];
  return s;
}

inline double norm(const Ambient7& v) { return std::sqrt(dot(v, v)); }

inline PointS6 lift7(const Ambient7& v) {
  if (!(std::abs(norm(v) - 1.0) <= sphere_tolerance))
    throw precondition_error("lift7: vector is not on S^6");
  return from_ambient(v);
}

using TangentFrame = std::array<Ambient7, 6>;

/// Orthonormal basis of the tangent space at x, oriented so that
/// det[x, f₁, …, f₆] = +1. A Householder reflection carries e₁ to ±x; the
/// images of e₂…e₇ are then re-orthonormalized against x. Deterministic in x.
inline TangentFrame tangent_frame(const PointS6& x) {
  require_on_sphere(x, "tangent_frame");
  Ambient7 v = embed7(x);
  const double vn = norm(v);
  for (double& c : v) c /= vn;

  // v[0] <= 0: H e₁ = v, det[v, He₂..He₇] = det H = −1, so flip f₁.
  // v[0] >  0: H e₁ = −v, det[v, He₂..He₇] = +1.
  const bool maps_to_v = v[0] <= 0.0;
  Ambient7 u = v;
  for (double& c : u) c = maps_to_v ? -c : c;
  u[0] += 1.0;
  const double uu = dot(u, u);

  TangentFrame frame{};
  for (std::size_t k = 0; k < 6; ++k) {
    Ambient7& f = frame[k];
    const std::size_t col = k + 1;
    for (std::size_t i = 0; i < 7; ++i) f[i] = -2.0 * u[i] * u[col] / uu;
    f[col] += 1.0;
  }
  if (maps_to_v)
    for (double& c : frame[0]) c = -c;

  for (std::size_t k = 0; k < 6; ++k) {
    Ambient7& f = frame[k];
    const double along_v = dot(f, v);
    for (std::size_t i = 0; i < 7; ++i) f[i] -= along_v * v[i];
    for (std::size_t m = 0; m < k; ++m) {
      const double along = dot(f, frame[m]);
      for (std::size_t i = 0; i < 7; ++i) f[i] -= along * frame[m][i];
    }
    const double n = norm(f);
    for (double& c : f) c /= n;
  }
  return frame;
}

/// A point certified to lie on the S⁵ slice Re(w) = 0.
struct PointS5 {
  PointS6 point;
};

inline bool on_slice(const PointS6& x, double tol = slice_tolerance) { return std::abs(x.w.a) <= tol; }

inline PointS5 restrict_s5(const PointS6& x) {
  require_on_sphere(x, "restrict_s5");
  if (!on_slice(x)) throw domain_error("restrict_s5: Re(w) is not zero");
  return {x};
}

/// Seeded source of uniformly distributed points and group elements.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  /// Shards of a parallel run use Sampler(seed, shard).
  Sampler(std::uint64_t seed, std::uint64_t shard) : rng_(shard_engine(seed, shard)) {}

  PointS6 point_s6() {
    for (;;) {
      Ambient7 v;
      for (double& c : v) c = gauss_(rng_);
      const double n = norm(v);
      if (n < 1e-12) continue;
      for (double& c : v) c /= n;
      return from_ambient(v);
    }
  }

  /// Uniform on the S⁵ slice.
  PointS6 point_s5() {
    for (;;) {
      Ambient7 v{};
      for (std::size_t i = 0; i < 7; ++i)
        if (i != 3) v[i] = gauss_(rng_);
      const double n = norm(v);
      if (n < 1e-12) continue;
      for (double& c : v) c /= n;
      return from_ambient(v);
    }
  }

  Quaternion unit_quaternion() {
    for (;;) {
      Quaternion q{gauss_(rng_), gauss_(rng_), gauss_(rng_), gauss_(rng_)};
      const double n = norm(q);
      if (n >= 1e-12) return q / n;
    }
  }

  PureImaginary unit_pure_imaginary() {
    for (;;) {
      PureImaginary p{gauss_(rng_), gauss_(rng_), gauss_(rng_)};
      const double n = norm(p);
      if (n >= 1e-12) return (1.0 / n) * p;
    }
  }

  SO4Element so4() {
    const Quaternion q = unit_quaternion();
    return {q, unit_quaternion()};
  }

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

 private:
  static std::mt19937_64 shard_engine(std::uint64_t seed, std::uint64_t shard) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                      static_cast<std::uint32_t>(shard), static_cast<std::uint32_t>(shard >> 32U)};
    return std::mt19937_64(seq);
  }

  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_{0.0, 1.0};
};

/// n uniform points on S⁶, deterministic in seed.
inline std::vector<PointS6> sample_s6(std::uint64_t seed, std::size_t n) {
  if (n < 1) throw precondition_error("sample_s6: n must be at least 1");
  Sampler sampler(seed);
  std::vector<PointS6> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(sampler.point_s6());
  return out;
}

}  // namespace jproc
