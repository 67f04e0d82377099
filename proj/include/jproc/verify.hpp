#pragma once

// Numerical verification harness: residual suites over seeded samples,
// central-difference Jacobians in oriented tangent frames, degeneracy sweeps
// along map families and degree-sign checks.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <future>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jproc/manifold.hpp"
#include "jproc/maps.hpp"
#include "jproc/quat.hpp"

namespace jproc {

inline constexpr double default_fd_step = 1e-5;
inline constexpr double min_fd_step = 1e-7;
inline constexpr double max_fd_step = 1e-3;

/// Below this |det| (or singular value) an FD quantity is not called nonzero.
inline double fd_floor(double h) { return 10.0 * h * h; }

/// s ∈ {0, 1/(n−1), …, 1}.
inline std::vector<double> s_grid(std::size_t n) {
  if (n < 1) throw precondition_error("s_grid: need at least one point");
  if (n == 1) return {0.0};
  std::vector<double> grid(n);
  for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(n - 1);
  return grid;
}

struct VerifyReport {
  std::string suite;
  std::size_t samples = 0;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  PointS6 worst_point{};
  double threshold = 0.0;
  bool pass = false;
};

struct SweepRecord {
  double s = 0.0;
  double min_abs_det = 0.0;
  double min_singular_value = 0.0;
  std::size_t sign_changes = 0;
  std::size_t samples = 0;
};

/// Residual of one drawn sample and the point it was measured at.
struct SampleResidual {
  double residual;
  PointS6 point;
};

using SampleCheck = std::function<SampleResidual(Sampler&)>;

struct SuiteSpec {
  std::string name;
  double threshold;
  SampleCheck check;
};

namespace detail {

inline constexpr std::size_t shard_count = 8;

struct ShardTotals {
  std::size_t count = 0;
  double sum = 0.0;
  double max = -1.0;
  PointS6 worst{};
};

/// Runs f over shards of [0, n) in parallel; shard k draws from Sampler(seed, k).
/// Results depend only on (seed, n), not on scheduling.
template <typename ShardFn>
auto run_sharded(std::uint64_t seed, std::size_t n, ShardFn f) {
  using Result = decltype(f(std::declval<Sampler&>(), std::size_t{}));
  std::vector<std::future<Result>> futures;
  for (std::size_t k = 0; k < shard_count; ++k) {
    const std::size_t begin = n * k / shard_count;
    const std::size_t end = n * (k + 1) / shard_count;
    futures.push_back(std::async(std::launch::async, [=] {
      Sampler sampler(seed, k);
      return f(sampler, end - begin);
    }));
  }
  std::vector<Result> results;
  results.reserve(shard_count);
  for (auto& fut : futures) results.push_back(fut.get());
  return results;
}

}  // namespace detail

/// Evaluates check on `samples` seeded draws and reduces to a report.
inline VerifyReport run_suite(const SuiteSpec& spec, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw precondition_error("residual suite: samples must be at least 1");
  const auto shards = detail::run_sharded(seed, samples, [&](Sampler& sampler, std::size_t count) {
    detail::ShardTotals totals;
    for (std::size_t i = 0; i < count; ++i) {
      const SampleResidual r = spec.check(sampler);
      const double value = std::isnan(r.residual) ? std::numeric_limits<double>::infinity() : r.residual;
      ++totals.count;
      totals.sum += value;
      if (value > totals.max) {
        totals.max = value;
        totals.worst = r.point;
      }
    }
    return totals;
  });
  VerifyReport report;
  report.suite = spec.name;
  report.threshold = spec.threshold;
  double sum = 0.0;
  report.max_residual = -1.0;
  for (const auto& t : shards) {
    report.samples += t.count;
    sum += t.sum;
    if (t.count > 0 && t.max > report.max_residual) {
      report.max_residual = t.max;
      report.worst_point = t.worst;
    }
  }
  report.mean_residual = sum / static_cast<double>(report.samples);
  report.pass = report.max_residual < report.threshold;
  return report;
}

namespace suites {

inline constexpr double identity_threshold = 1e-11;

/// Grid of H_s parameters used by property sweeps.
inline const std::vector<double>& homotopy_grid() {
  static const std::vector<double> grid = s_grid(21);
  return grid;
}

/// The equivariant maps exercised by the J-process suites: b, H_s on the grid, Q.
inline std::vector<GroupValuedMap> equivariant_alphas() {
  std::vector<GroupValuedMap> alphas{bm_map()};
  const MapFamily h = homotopy_family();
  for (double s : homotopy_grid()) alphas.push_back(h.at(s));
  alphas.push_back(q_map());
  return alphas;
}

inline SampleResidual branch_values(Sampler& sampler) {
  const PointS6 x{sampler.unit_pure_imaginary(), Quaternion{}};
  double worst = 0.0;
  for (long n = 0; n <= 12; ++n) {
    const Quaternion expected(n % 2 == 0 ? 1.0 : -1.0);
    worst = std::max(worst, distance(bm_pow(n, x), expected));
  }
  return {worst, x};
}

inline SampleResidual equivariance_bm(Sampler& sampler) {
  const SO4Element g = sampler.so4();
  const PointS6 x = sampler.point_s6();
  return {distance(bm(so4_act(g, x)), conj_action(g.q(), bm(x))), x};
}

inline SampleResidual equivariance_H(Sampler& sampler) {
  const SO4Element g = sampler.so4();
  const PointS6 x = sampler.point_s6();
  const PointS6 gx = so4_act(g, x);
  double worst = 0.0;
  for (double s : homotopy_grid())
    worst = std::max(worst, distance(homotopy_H(s, gx), conj_action(g.q(), homotopy_H(s, x))));
  return {worst, x};
}

inline SampleResidual so4_well_defined(Sampler& sampler) {
  const Quaternion q = sampler.unit_quaternion();
  const Quaternion r = sampler.unit_quaternion();
  const PointS6 x = sampler.point_s6();
  return {distance(so4_act(q, r, x), so4_act(-q, -r, x)), x};
}

inline SampleResidual so4_invariant(Sampler& sampler) {
  const SO4Element g = sampler.so4();
  const PointS6 x = sampler.point_s6();
  const PointS6 gx = so4_act(g, x);
  return {std::max(std::abs(invariant_S(gx) - invariant_S(x)), std::abs(norm2(gx) - 1.0)), x};
}

inline SampleResidual thm1_inverse(Sampler& sampler) {
  static const std::vector<GroupValuedMap> alphas = equivariant_alphas();
  const PointS6 x = sampler.point_s6();
  double worst = 0.0;
  for (const auto& alpha : alphas) {
    const PointS6 y = j_process(alpha, x);
    worst = std::max(worst, distance(j_process(conj(alpha(y)), y), x));
  }
  return {worst, x};
}

inline SampleResidual thm1_power(Sampler& sampler) {
  static const std::vector<GroupValuedMap> alphas = equivariant_alphas();
  const PointS6 x = sampler.point_s6();
  double worst = 0.0;
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    const auto& alpha = alphas[a];
    const Quaternion value = alpha(x);
    PointS6 iterate = x;
    for (long k = 1; k <= 12; ++k) {
      iterate = j_process(alpha, iterate);
      const Quaternion power = a == 0 ? bm_pow(k, x) : quat_pow(value, k);
      worst = std::max(worst, distance(iterate, j_process(power, x)));
    }
  }
  return {worst, x};
}

inline SampleResidual thm2_involution(Sampler& sampler) {
  static const std::vector<GroupValuedMap> alphas = equivariant_alphas();
  const PointS6 x = sampler.point_s6();
  double worst = 0.0;
  for (const auto& alpha : alphas) {
    const PointS6 y = -j_process(alpha, x);
    worst = std::max(worst, distance(-j_process(alpha, y), x));
  }
  return {worst, x};
}

inline SampleResidual endpoint_H0(Sampler& sampler) {
  const PointS6 x = sampler.point_s6();
  return {distance(homotopy_H(0.0, x), bm(x)), x};
}

inline SampleResidual endpoint_H1(Sampler& sampler) {
  const PointS6 x = sampler.point_s6();
  return {distance(homotopy_H(1.0, x), rational_Q(x)), x};
}

inline SampleResidual rational_R_consistency(Sampler& sampler) {
  const PointS6 x = sampler.point_s6();
  return {distance(rational_R(x), j_process(rational_Q(x), x)), x};
}

inline SampleResidual linear_action(Sampler& sampler) {
  const PointS6 x = sampler.point_s6();
  const Ambient7 lhs = embed7(sigma(x));
  const Ambient7 rhs = mat_vec(sigma_matrix(x), embed7(x));
  double d2 = 0.0;
  for (std::size_t i = 0; i < 7; ++i) d2 += (lhs[i] - rhs[i]) * (lhs[i] - rhs[i]);
  return {std::sqrt(d2), x};
}

inline SampleResidual s5_restriction(Sampler& sampler) {
  const PointS6 x = sampler.point_s5();
  double worst = 0.0;
  for (long k : {1L, 2L, 12L}) worst = std::max(worst, std::abs(sigma_k(k, x).w.a));
  worst = std::max(worst, std::abs(rational_R(x).w.a));
  for (double s : {0.0, 0.5, 1.0}) worst = std::max(worst, std::abs(exotic_involution(s, x).w.a));
  return {worst, x};
}

inline SampleResidual s5_rational_involution(Sampler& sampler) {
  const PointS6 x = sampler.point_s5();
  return {distance(rational_involution_s5(restrict_s5(x)), -rational_R(x)), x};
}

inline SampleResidual conj_antisymmetry(Sampler& sampler) {
  const PointS6 x = sampler.point_s6();
  return {conj_antisymmetry_check(x), x};
}

inline SampleResidual bm_pow_consistency(Sampler& sampler) {
  const PointS6 x = sampler.point_s6();
  const Quaternion b = bm(x);
  double worst = 0.0;
  for (long n = -12; n <= 12; ++n) {
    const Quaternion v = bm_pow(n, x);
    worst = std::max({worst, distance(v, quat_pow(b, n)), distance(v, bm_pow_branch(n, x))});
  }
  return {worst, x};
}

inline SampleResidual sigma_inverse(Sampler& sampler) {
  const PointS6 x = sampler.point_s6();
  double worst = 0.0;
  for (long k : {1L, 2L, 12L}) worst = std::max(worst, distance(sigma_k(-k, sigma_k(k, x)), x));
  return {worst, x};
}

inline SampleResidual unit_values(Sampler& sampler) {
  const PointS6 x = sampler.point_s6();
  double worst = std::max(std::abs(norm(bm(x)) - 1.0), std::abs(norm(rational_Q(x)) - 1.0));
  for (double s : homotopy_grid()) worst = std::max(worst, std::abs(norm(homotopy_H(s, x)) - 1.0));
  return {worst, x};
}

}  // namespace suites

/// Registered residual suites in reporting order.
inline const std::vector<SuiteSpec>& registered_suites() {
  static const std::vector<SuiteSpec> table = {
      {"branch_values", 1e-12, suites::branch_values},
      {"equivariance_bm", suites::identity_threshold, suites::equivariance_bm},
      {"equivariance_H", suites::identity_threshold, suites::equivariance_H},
      {"so4_well_defined", 1e-12, suites::so4_well_defined},
      {"so4_invariant", 1e-12, suites::so4_invariant},
      {"thm1_inverse", suites::identity_threshold, suites::thm1_inverse},
      {"thm1_power", 1e-10, suites::thm1_power},
      {"thm2_involution", suites::identity_threshold, suites::thm2_involution},
      {"endpoint_H0", 1e-12, suites::endpoint_H0},
      {"endpoint_H1", 1e-12, suites::endpoint_H1},
      {"rational_R", 1e-12, suites::rational_R_consistency},
      {"linear_action", suites::identity_threshold, suites::linear_action},
      {"s5_restriction", 1e-12, suites::s5_restriction},
      {"s5_rational_involution", 1e-12, suites::s5_rational_involution},
      {"conj_antisymmetry", 1e-12, suites::conj_antisymmetry},
      {"bm_pow_consistency", 1e-10, suites::bm_pow_consistency},
      {"sigma_inverse", suites::identity_threshold, suites::sigma_inverse},
      {"unit_values", 1e-12, suites::unit_values},
  };
  return table;
}

inline const SuiteSpec* find_suite(std::string_view name) {
  for (const auto& spec : registered_suites())
    if (spec.name == name) return &spec;
  return nullptr;
}

/// Runs a registered suite. Throws precondition_error for unknown names.
inline VerifyReport residual_suite(std::string_view name, std::size_t samples, std::uint64_t seed,
                                   std::optional<double> threshold = std::nullopt) {
  const SuiteSpec* spec = find_suite(name);
  if (spec == nullptr) throw precondition_error("unknown suite: " + std::string(name));
  if (!threshold) return run_suite(*spec, samples, seed);
  SuiteSpec overridden = *spec;
  overridden.threshold = *threshold;
  return run_suite(overridden, samples, seed);
}

using Jacobian = Eigen::Matrix<double, 6, 6>;

/// Differential of f at x in the tangent frames at x and f(x), by central
/// differences along retracted frame directions. Second order in h.
inline Jacobian jacobian_fd(const SelfMap& f, const PointS6& x, double h = default_fd_step) {
  if (!(h >= min_fd_step && h <= max_fd_step)) throw precondition_error("jacobian_fd: step outside [1e-7, 1e-3]");
  require_on_sphere(x, "jacobian_fd");
  const auto checked = [&](const PointS6& at) {
    const PointS6 y = f(at);
    if (!on_sphere(y)) throw precondition_error("jacobian_fd: map output is not on S^6");
    return embed7(y);
  };
  const TangentFrame source = tangent_frame(x);
  const TangentFrame target = tangent_frame(from_ambient(checked(x)));
  const Ambient7 base = embed7(x);

  Jacobian jac;
  for (std::size_t k = 0; k < 6; ++k) {
    Ambient7 plus = base;
    Ambient7 minus = base;
    for (std::size_t i = 0; i < 7; ++i) {
      plus[i] += h * source[k][i];
      minus[i] -= h * source[k][i];
    }
    const Ambient7 fp = checked(retract(from_ambient(plus)));
    const Ambient7 fm = checked(retract(from_ambient(minus)));
    Ambient7 diff;
    for (std::size_t i = 0; i < 7; ++i) diff[i] = (fp[i] - fm[i]) / (2.0 * h);
    for (std::size_t r = 0; r < 6; ++r) jac(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k)) = dot(target[r], diff);
  }
  return jac;
}

struct JacobianStats {
  double det;
  double min_singular_value;
};

inline JacobianStats jacobian_stats(const Jacobian& jac) {
  const Eigen::JacobiSVD<Jacobian> svd(jac);
  return {jac.determinant(), svd.singularValues().minCoeff()};
}

/// Per s: minimum |det| and singular value of J_{α_s} over the same seeded
/// sample, and the number of points with det ≤ 0.
inline std::vector<SweepRecord> degeneracy_sweep(const MapFamily& family, const std::vector<double>& grid,
                                                 std::size_t samples, std::uint64_t seed,
                                                 double h = default_fd_step) {
  if (samples < 1) throw precondition_error("degeneracy_sweep: samples must be at least 1");
  for (double s : grid)
    if (!(s >= 0.0 && s <= 1.0)) throw precondition_error("degeneracy_sweep: s outside [0, 1]");
  const std::vector<PointS6> points = sample_s6(seed, samples);

  std::vector<SweepRecord> records;
  records.reserve(grid.size());
  for (double s : grid) {
    const SelfMap map = j_process(family.at(s));
    std::vector<std::future<SweepRecord>> parts;
    for (std::size_t k = 0; k < detail::shard_count; ++k) {
      const std::size_t begin = samples * k / detail::shard_count;
      const std::size_t end = samples * (k + 1) / detail::shard_count;
      parts.push_back(std::async(std::launch::async, [&, begin, end] {
        SweepRecord part{s, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0, 0};
        for (std::size_t i = begin; i < end; ++i) {
          const JacobianStats st = jacobian_stats(jacobian_fd(map, points[i], h));
          part.min_abs_det = std::min(part.min_abs_det, std::abs(st.det));
          part.min_singular_value = std::min(part.min_singular_value, st.min_singular_value);
          if (!(st.det > 0.0)) ++part.sign_changes;
          ++part.samples;
        }
        return part;
      }));
    }
    SweepRecord rec{s, std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(), 0, 0};
    for (auto& fut : parts) {
      const SweepRecord part = fut.get();
      rec.min_abs_det = std::min(rec.min_abs_det, part.min_abs_det);
      rec.min_singular_value = std::min(rec.min_singular_value, part.min_singular_value);
      rec.sign_changes += part.sign_changes;
      rec.samples += part.samples;
    }
    records.push_back(rec);
  }
  return records;
}

struct DegreeSign {
  int sign = 0;
  bool unanimous = false;
  bool inconclusive = false;
  std::size_t samples = 0;
  double min_abs_det = 0.0;
};

/// Sign of det d f over seeded samples. For a diffeomorphism of S⁶ this is
/// the degree. Any |det| < 10h² makes the result inconclusive.
inline DegreeSign degree_sign(const SelfMap& f, std::size_t samples, std::uint64_t seed,
                              double h = default_fd_step) {
  if (samples < 1) throw precondition_error("degree_sign: samples must be at least 1");
  DegreeSign out;
  out.min_abs_det = std::numeric_limits<double>::infinity();
  std::size_t positive = 0;
  std::size_t negative = 0;
  for (const PointS6& x : sample_s6(seed, samples)) {
    const double det = jacobian_fd(f, x, h).determinant();
    out.min_abs_det = std::min(out.min_abs_det, std::abs(det));
    if (std::abs(det) < fd_floor(h)) {
      out.inconclusive = true;
    } else if (det > 0.0) {
      ++positive;
    } else {
      ++negative;
    }
    ++out.samples;
  }
  out.sign = positive >= negative ? 1 : -1;
  out.unanimous = !out.inconclusive && (positive == 0 || negative == 0);
  if (out.inconclusive) out.sign = 0;
  return out;
}

/// Smallest |Ĥ_s(x)| over the grid and a seeded sample.
inline double min_hhat_norm(const std::vector<double>& grid, std::size_t samples, std::uint64_t seed) {
  double smallest = std::numeric_limits<double>::infinity();
  for (const PointS6& x : sample_s6(seed, samples))
    for (double s : grid) smallest = std::min(smallest, norm(homotopy_hat(s, x)));
  return smallest;
}

/// Smallest |(−J_α)(x) − x| over a seeded sample; evidence that −J_α is free.
inline double min_involution_displacement(const GroupValuedMap& alpha, std::size_t samples, std::uint64_t seed) {
  double smallest = std::numeric_limits<double>::infinity();
  for (const PointS6& x : sample_s6(seed, samples)) smallest = std::min(smallest, distance(-j_process(alpha, x), x));
  return smallest;
}

}  // namespace jproc
