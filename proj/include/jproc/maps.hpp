#pragma once

// Explicit maps on S⁶: the Blakers-Massey element b and its powers, the
// equivariant homotopy H_s from b to the rational map Q, the J-process
// J_α(x) = α(x)·x, σᵏ, the rational diffeomorphism R, the linear form
// σ(x) = B(x)·x through Δ: SO(3) → SO(7), and the exotic involutions −J_α.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "jproc/manifold.hpp"
#include "jproc/quat.hpp"

namespace jproc {

/// Raised when the affine homotopy Ĥ_s comes numerically close to zero.
struct degeneracy_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// |Ĥ_s(x)| below this is reported as a degeneracy.
inline constexpr double hhat_degeneracy_floor = 1e-9;

enum class Equivariance { so3_conjugation, none };

/// α: S⁶ → S³.
struct GroupValuedMap {
  std::function<Quaternion(const PointS6&)> eval;
  std::string label;
  Equivariance equivariance = Equivariance::none;

  Quaternion operator()(const PointS6& x) const { return eval(x); }
};

/// α_s: S⁶ → S³ for s ∈ [0, 1].
struct MapFamily {
  std::function<Quaternion(double, const PointS6&)> eval;
  std::string label;
  Equivariance equivariance = Equivariance::none;

  Quaternion operator()(double s, const PointS6& x) const { return eval(s, x); }

  GroupValuedMap at(double s) const {
    auto f = eval;
    return {[f, s](const PointS6& x) { return f(s, x); }, label + ":" + std::to_string(s), equivariance};
  }

  std::pair<GroupValuedMap, GroupValuedMap> endpoints() const { return {at(0.0), at(1.0)}; }
};

/// A self map of S⁶.
struct SelfMap {
  std::function<PointS6(const PointS6&)> eval;
  std::string label;

  PointS6 operator()(const PointS6& x) const { return eval(x); }
};

namespace detail {

/// Scalar data of a point: t = |p|, u² = |w|² (after radial normalization),
/// and m = w p w̄ scaled to the unit sphere.
struct Radial {
  double t;
  double u2;
  PureImaginary m;
};

inline Radial radial(const PointS6& x) {
  const double rho2 = norm2(x);
  const double rho = std::sqrt(rho2);
  const PureImaginary m = PureImaginary::imaginary_part(x.w * x.p.quat() * conj(x.w));
  return {norm(x.p) / rho, norm2(x.w) / rho2, (1.0 / (rho2 * rho)) * m};
}

/// cos(nπt) and g_n(t) = sin(nπt) / (t(1 − t²)), with 1 − t² supplied as u2.
/// Both removable singularities (t = 0 and t = 1) are resolved analytically.
struct Profile {
  double cos_part;
  double g;
};

inline Profile power_profile(long n, double t, double u2) {
  const double npi = static_cast<double>(n) * std::numbers::pi;
  if (t <= 0.5) return {std::cos(npi * t), npi * sinc(npi * t) / u2};
  // t = 1 − d with d = u²/(1 + t); sin(nπt) = (−1)^{n+1} sin(nπd).
  const double d = u2 / (1.0 + t);
  const double parity = (n % 2 == 0) ? 1.0 : -1.0;
  return {parity * std::cos(npi * d), -parity * npi * sinc(npi * d) / (t * (1.0 + t))};
}

}  // namespace detail

/// g(t) = sin(πt) / (t(1 − t²)) on [0, 1], extended continuously to the ends.
inline double g_profile(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw domain_error("g_profile: t outside [0, 1]");
  return detail::power_profile(1, t, (1.0 - t) * (1.0 + t)).g;
}

/// c(t) = 1 − 4t².
constexpr double c_profile(double t) { return 1.0 - 4.0 * t * t; }

/// bⁿ(p, w) = cos(nπ|p|) + g_n(|p|) w p w̄, analytic on all of S⁶; equals
/// (w/|w|) e^{nπp} (w̄/|w|) for w ≠ 0 and (−1)ⁿ at w = 0.
inline Quaternion bm_pow(long n, const PointS6& x) {
  require_on_sphere(x, "bm_pow");
  const auto r = detail::radial(x);
  const auto prof = detail::power_profile(n, r.t, r.u2);
  return Quaternion(prof.cos_part) + prof.g * r.m.quat();
}

/// The Blakers-Massey element b: S⁶ → S³.
inline Quaternion bm(const PointS6& x) { return bm_pow(1, x); }

/// The branch form (w/|w|) e^{nπp} (w̄/|w|), or (−1)ⁿ when w = 0.
inline Quaternion bm_pow_branch(long n, const PointS6& x) {
  require_on_sphere(x, "bm_pow_branch");
  const double wn = norm(x.w);
  if (wn == 0.0) return Quaternion(n % 2 == 0 ? 1.0 : -1.0);
  const Quaternion unit_w = x.w / wn;
  return unit_w * quat_exp(static_cast<double>(n) * std::numbers::pi * x.p) * conj(unit_w);
}

/// Ĥ_s = (1 − s) b + s (1 − 4|p|² + w p w̄), before normalization.
inline Quaternion homotopy_hat(double s, const PointS6& x) {
  if (!(s >= 0.0 && s <= 1.0)) throw precondition_error("homotopy: s outside [0, 1]");
  require_on_sphere(x, "homotopy");
  const auto r = detail::radial(x);
  const auto prof = detail::power_profile(1, r.t, r.u2);
  const double scalar = (1.0 - s) * prof.cos_part + s * c_profile(r.t);
  const double coeff = (1.0 - s) * prof.g + s;
  return Quaternion(scalar) + coeff * r.m.quat();
}

/// H_s = Ĥ_s / |Ĥ_s|, the equivariant homotopy from b (s = 0) to Q (s = 1).
inline Quaternion homotopy_H(double s, const PointS6& x) {
  const Quaternion h = homotopy_hat(s, x);
  const double n = norm(h);
  if (!(n >= hhat_degeneracy_floor)) throw degeneracy_error("homotopy: |H_hat| vanished");
  return h / n;
}

/// Q(p, w) = (1 + 4p² + w p w̄) / sqrt((1 + 4p²)² − |w|⁴ p²), evaluated as written.
inline Quaternion rational_Q(const PointS6& x) {
  require_on_sphere(x, "rational_Q");
  const Quaternion p = x.p.quat();
  const Quaternion p2 = p * p;
  const Quaternion base = Quaternion::one() + 4.0 * p2;
  const Quaternion numerator = base + x.w * p * conj(x.w);
  const double w4 = norm2(x.w) * norm2(x.w);
  const Quaternion radicand = base * base - w4 * p2;
  return numerator / std::sqrt(radicand.a);
}

/// J_α(x) = α·(p, w) = (α p ᾱ, α w ᾱ) for a unit quaternion α.
inline PointS6 j_process(const Quaternion& alpha, const PointS6& x) {
  require_unit(alpha, "j_process");
  require_on_sphere(x, "j_process");
  return {conj_action(alpha, x.p), conj_action(alpha, x.w)};
}

inline PointS6 j_process(const GroupValuedMap& alpha, const PointS6& x) { return j_process(alpha(x), x); }

inline SelfMap j_process(const GroupValuedMap& alpha) {
  return {[alpha](const PointS6& x) { return j_process(alpha, x); }, "J[" + alpha.label + "]"};
}

/// x ↦ α(x)⁻¹.
inline GroupValuedMap pointwise_inverse(const GroupValuedMap& alpha) {
  return {[alpha](const PointS6& x) { return conj(alpha(x)); }, alpha.label + "^-1", alpha.equivariance};
}

/// x ↦ α(x)ᵏ by repeated multiplication.
inline GroupValuedMap pointwise_power(const GroupValuedMap& alpha, long k) {
  return {[alpha, k](const PointS6& x) { return quat_pow(alpha(x), k); },
          alpha.label + "^" + std::to_string(k), alpha.equivariance};
}

/// σᵏ(p, w) = (bᵏ p b⁻ᵏ, bᵏ w b⁻ᵏ).
inline PointS6 sigma_k(long k, const PointS6& x) { return j_process(bm_pow(k, x), x); }

inline PointS6 sigma(const PointS6& x) { return sigma_k(1, x); }

template <std::size_t N>
using Matrix = std::array<std::array<double, N>, N>;

using Mat3 = Matrix<3>;
using Mat7 = Matrix<7>;

/// Matrix of x ↦ q x q̄ on Im ℍ in the (i, j, k) basis. Invariant under q ↦ −q.
inline Mat3 rot3_from_quat(const Quaternion& q) {
  require_unit(q, "rot3_from_quat");
  const auto [a, b, c, d] = q.coords();
  return {{{a * a + b * b - c * c - d * d, 2 * (b * c - a * d), 2 * (b * d + a * c)},
           {2 * (b * c + a * d), a * a - b * b + c * c - d * d, 2 * (c * d - a * b)},
           {2 * (b * d - a * c), 2 * (c * d + a * b), a * a - b * b - c * c + d * d}}};
}

template <std::size_t N>
Matrix<N> transpose(const Matrix<N>& m) {
  Matrix<N> t{};
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) t[c][r] = m[r][c];
  return t;
}

template <std::size_t N>
Matrix<N> mat_mul(const Matrix<N>& x, const Matrix<N>& y) {
  Matrix<N> out{};
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t k = 0; k < N; ++k)
      for (std::size_t c = 0; c < N; ++c) out[r][c] += x[r][k] * y[k][c];
  return out;
}

template <std::size_t N>
std::array<double, N> mat_vec(const Matrix<N>& m, const std::array<double, N>& v) {
  std::array<double, N> out{};
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) out[r] += m[r][c] * v[c];
  return out;
}

/// max |Mᵀ M − I|.
template <std::size_t N>
double orthogonality_defect(const Matrix<N>& m) {
  const Matrix<N> g = mat_mul(transpose(m), m);
  double worst = 0.0;
  for (std::size_t r = 0; r < N; ++r)
    for (std::size_t c = 0; c < N; ++c) worst = std::max(worst, std::abs(g[r][c] - (r == c ? 1.0 : 0.0)));
  return worst;
}

/// Δ(T) = diag(T, 1, T) in the (p, w₀, Im w) block order.
inline Mat7 delta7(const Mat3& t) {
  if (orthogonality_defect(t) > 1e-9) throw precondition_error("delta7: matrix is not orthogonal");
  Mat7 out{};
  out[3][3] = 1.0;
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) {
      out[r][c] = t[r][c];
      out[r + 4][c + 4] = t[r][c];
    }
  return out;
}

/// B(x) = Δ(P(b(x))), so that embed7(σ(x)) = B(x) · embed7(x).
inline Mat7 sigma_matrix(const PointS6& x) { return delta7(rot3_from_quat(bm(x))); }

/// R(p, w) = (N p N̄, N w N̄) / ((1 + 4p²)² − |w|⁴ p²) with N = 1 + 4p² + w p w̄.
inline PointS6 rational_R(const PointS6& x) {
  require_on_sphere(x, "rational_R");
  const Quaternion p = x.p.quat();
  const Quaternion p2 = p * p;
  const Quaternion base = Quaternion::one() + 4.0 * p2;
  const Quaternion wpw = x.w * p * conj(x.w);
  const Quaternion left = base + wpw;
  const Quaternion right = base - wpw;
  const double w4 = norm2(x.w) * norm2(x.w);
  const double denom = (base * base - w4 * p2).a;
  return {PureImaginary::imaginary_part(left * p * right / denom), left * x.w * right / denom};
}

/// −R on the S⁵ slice in the variables p, w with w̄ = −w:
/// −((1 + 4p² − wpw) p (1 + 4p² + wpw), (1 + 4p² − wpw) w (1 + 4p² + wpw)) / ((1 + 4p²)² − w⁴p²).
inline PointS6 rational_involution_s5(const PointS5& y) {
  const PointS6& x = y.point;
  const Quaternion p = x.p.quat();
  const Quaternion w = x.w;
  const Quaternion p2 = p * p;
  const Quaternion base = Quaternion::one() + 4.0 * p2;
  const Quaternion wpw = w * p * w;
  const Quaternion left = base - wpw;
  const Quaternion right = base + wpw;
  const double denom = (base * base - w * w * w * w * p2).a;
  return {-PureImaginary::imaginary_part(left * p * right / denom), -(left * w * right / denom)};
}

/// −J_{H_s}: an involution deforming −σ (s = 0) into −R (s = 1).
inline PointS6 exotic_involution(double s, const PointS6& x) { return -j_process(homotopy_H(s, x), x); }

/// |b(−x) − conj(b(x))|.
inline double conj_antisymmetry_check(const PointS6& x) {
  return distance(bm(antipodal(x)), conj(bm(x)));
}

// Registered maps and families.

inline GroupValuedMap bm_map() { return {[](const PointS6& x) { return bm(x); }, "bm", Equivariance::so3_conjugation}; }

inline GroupValuedMap bm_pow_map(long n) {
  return {[n](const PointS6& x) { return bm_pow(n, x); }, "bm_pow:" + std::to_string(n), Equivariance::so3_conjugation};
}

inline GroupValuedMap q_map() {
  return {[](const PointS6& x) { return rational_Q(x); }, "Q", Equivariance::so3_conjugation};
}

inline MapFamily homotopy_family() {
  return {[](double s, const PointS6& x) { return homotopy_H(s, x); }, "H", Equivariance::so3_conjugation};
}

/// s ↦ H_sᵏ.
inline MapFamily homotopy_power_family(long k) {
  return {[k](double s, const PointS6& x) { return quat_pow(homotopy_H(s, x), k); }, "H_pow:" + std::to_string(k),
          Equivariance::so3_conjugation};
}

inline MapFamily constant_family() {
  return {[](double, const PointS6&) { return Quaternion::one(); }, "constant", Equivariance::so3_conjugation};
}

/// α_s(p, w) = exp(sπ Im w) · b(p, w). Not equivariant; a constructed
/// perturbation for exploratory degeneracy sweeps.
inline MapFamily demo_nonequiv_family() {
  return {[](double s, const PointS6& x) {
            return normalized(quat_exp(s * std::numbers::pi * PureImaginary::imaginary_part(x.w)) * bm(x));
          },
          "demo_nonequiv", Equivariance::none};
}

inline SelfMap identity_map() {
  return {[](const PointS6& x) { return x; }, "identity"};
}

inline SelfMap antipodal_map() {
  return {[](const PointS6& x) { return antipodal(x); }, "antipodal"};
}

inline SelfMap sigma_map(long k) {
  return {[k](const PointS6& x) { return sigma_k(k, x); }, "sigma:" + std::to_string(k)};
}

inline SelfMap rational_R_map() {
  return {[](const PointS6& x) { return rational_R(x); }, "R"};
}

}  // namespace jproc
