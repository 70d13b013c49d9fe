#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "trisub/die_stream.hpp"
#include "trisub/errors.hpp"
#include "trisub/flat_ifs.hpp"
#include "trisub/geometry.hpp"

namespace trisub {

// Seeded Monte Carlo engines for the planar shape chain, the flat chain and
// their coupling, with the derived statistics: invariant-measure histogram,
// the rate L, log-height slopes, Wasserstein diagnostics, limit-set coverage
// and largest-angle exceedance.

struct FlatStep {
  int roll = 0;  // 0 at step 0
  double x = 0.0;
};

struct FlatTraceData {
  std::uint64_t seed = 0;
  double start = 0.0;
  std::vector<FlatStep> steps;  // length = requested steps + 1
};

struct TriangleStep {
  int roll = 0;
  double x = 0.0;
  double y = 0.0;      // underflows to 0 eventually on long runs
  double log_y = 0.0;  // exact continuation of ln(y); -inf only for flat states
  double j = 0.0;      // +inf on flat states
  double angle = 0.0;  // NaN if the apex degenerates to an edge endpoint
};

struct TriangleTraceData {
  std::uint64_t seed = 0;
  ShapePoint start;
  std::vector<TriangleStep> steps;
};

struct CoupledRun {
  TriangleTraceData planar;
  FlatTraceData flat;
  std::vector<double> gap;  // |X_n - Z_n| per step
};

/// Below this height the chain steps through the flat maps and continues
/// ln(y) by the one-step contraction |z_i'|, the exact flat limit of the
/// height ratio; this keeps the log height finite long after the double
/// representation of y underflows. The true x-displacement neglected this
/// way is O(y^2), far below double resolution at the switch.
constexpr double kFlatSwitchY = 1e-150;

namespace detail {

struct PlanarState {
  double x, y, log_y;
};

inline PlanarState planar_step(const PlanarState& s, int roll) {
  if (s.y > kFlatSwitchY) {
    const ShapePoint child = child_shape({s.x, s.y}, roll);
    return {child.x, child.y, std::log(child.y)};
  }
  const double d = z_derivative_abs(roll, s.x);
  const double log_y = s.log_y + std::log(d);
  const double y = s.y == 0.0 ? 0.0 : std::exp(log_y);
  return {z_map(roll, s.x), y, log_y};
}

inline double record_angle(double x, double y) {
  if (x == 0.0 && y == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return largest_angle({x, y});
}

}  // namespace detail

/// Flat chain Z_{n+1} = z_{roll}(Z_n), driven by an explicit die stream.
inline FlatTraceData run_flat_chain(DieStream& die, double start, long steps) {
  if (steps < 0) throw std::invalid_argument("run_flat_chain: steps must be >= 0");
  if (!(start >= 0.0 && start <= 0.5))
    throw std::invalid_argument("run_flat_chain: start must lie in [0, 1/2]");
  FlatTraceData trace;
  trace.seed = die.seed_used();
  trace.start = start;
  trace.steps.reserve(std::size_t(steps) + 1);
  trace.steps.push_back({0, start});
  double z = start;
  for (long n = 0; n < steps; ++n) {
    const int r = die.roll();
    z = z_map(r, z);
    trace.steps.push_back({r, z});
  }
  return trace;
}

inline FlatTraceData run_flat_chain(std::uint64_t seed, double start, long steps) {
  DieStream die(seed);
  return run_flat_chain(die, start, steps);
}

/// Planar chain: each step picks one child of the barycentric subdivision
/// and renormalizes, recording shape, J and the largest angle.
inline TriangleTraceData run_triangle_chain(DieStream& die, const ShapePoint& start, long steps) {
  if (steps < 0) throw std::invalid_argument("run_triangle_chain: steps must be >= 0");
  if (!is_valid_shape(start))
    throw std::invalid_argument("run_triangle_chain: start is not a valid shape point");
  TriangleTraceData trace;
  trace.seed = die.seed_used();
  trace.start = start;
  trace.steps.reserve(std::size_t(steps) + 1);
  detail::PlanarState s{start.x, start.y, std::log(start.y)};
  trace.steps.push_back(
      {0, s.x, s.y, s.log_y, functional_J(start).value(), detail::record_angle(s.x, s.y)});
  for (long n = 0; n < steps; ++n) {
    const int r = die.roll();
    s = detail::planar_step(s, r);
    const double j = functional_J({s.x, s.y}).value();
    trace.steps.push_back({r, s.x, s.y, s.log_y, j, detail::record_angle(s.x, s.y)});
  }
  return trace;
}

inline TriangleTraceData run_triangle_chain(std::uint64_t seed, const ShapePoint& start, long steps) {
  DieStream die(seed);
  return run_triangle_chain(die, start, steps);
}

/// Planar and flat chains driven by one shared die stream, with the
/// per-step gap |X_n - Z_n|.
inline CoupledRun run_coupled_chain(std::uint64_t seed, const ShapePoint& start_xy, double start_z,
                                    long steps) {
  if (steps < 0) throw std::invalid_argument("run_coupled_chain: steps must be >= 0");
  if (!is_valid_shape(start_xy) || !(start_z >= 0.0 && start_z <= 0.5))
    throw std::invalid_argument("run_coupled_chain: invalid start state");
  CoupledRun run;
  run.planar.seed = seed;
  run.planar.start = start_xy;
  run.flat.seed = seed;
  run.flat.start = start_z;
  DieStream die(seed);
  detail::PlanarState s{start_xy.x, start_xy.y, std::log(start_xy.y)};
  double z = start_z;
  run.planar.steps.push_back(
      {0, s.x, s.y, s.log_y, functional_J(start_xy).value(), detail::record_angle(s.x, s.y)});
  run.flat.steps.push_back({0, z});
  run.gap.push_back(std::fabs(s.x - z));
  for (long n = 0; n < steps; ++n) {
    const int r = die.roll();
    s = detail::planar_step(s, r);
    z = z_map(r, z);
    run.planar.steps.push_back(
        {r, s.x, s.y, s.log_y, functional_J({s.x, s.y}).value(), detail::record_angle(s.x, s.y)});
    run.flat.steps.push_back({r, z});
    run.gap.push_back(std::fabs(s.x - z));
  }
  return run;
}

/// Histogram of masses on equal-width bins over [0, 1/2]. Bins are
/// half-open to the right, with 1/2 falling in the last bin.
struct Histogram {
  int bins = 0;
  std::uint64_t samples = 0;
  std::vector<double> mass;

  double bin_low(int k) const { return 0.5 * k / bins; }
  double bin_high(int k) const { return 0.5 * (k + 1) / bins; }
  double bin_mid(int k) const { return 0.5 * (k + 0.5) / bins; }
};

/// Occupation histogram of the flat chain, started uniformly on [0,1/2]
/// from the seed's own stream and binning every visited state.
inline Histogram estimate_invariant_measure(std::uint64_t seed, long steps, int bins) {
  if (bins < 1 || steps < bins) throw std::invalid_argument("estimate_invariant_measure: need steps >= bins >= 1");
  DieStream die(seed);
  double z = 0.5 * die.uniform01();
  std::vector<std::uint64_t> counts(std::size_t(bins), 0);
  const auto deposit = [&](double v) {
    int b = int(v * 2.0 * bins);
    b = std::clamp(b, 0, bins - 1);
    ++counts[std::size_t(b)];
  };
  deposit(z);
  for (long n = 0; n < steps; ++n) {
    z = z_map(die.roll(), z);
    deposit(z);
  }
  Histogram h;
  h.bins = bins;
  h.samples = std::uint64_t(steps) + 1;
  h.mass.resize(std::size_t(bins));
  for (int k = 0; k < bins; ++k) h.mass[std::size_t(k)] = double(counts[std::size_t(k)]) / double(h.samples);
  return h;
}

/// Running mean of ln G(roll_n, Z_{n-1}) = -ln(D)/2 along a flat-chain run;
/// converges to the rate L. Without an explicit start the chain begins
/// uniformly on [0,1/2], drawn from the seed's stream.
inline double estimate_rate_L(std::uint64_t seed, long steps, std::optional<double> start = std::nullopt) {
  if (steps < 1) throw std::invalid_argument("estimate_rate_L: steps must be >= 1");
  if (start && !(*start >= 0.0 && *start <= 0.5))
    throw std::invalid_argument("estimate_rate_L: start must lie in [0, 1/2]");
  DieStream die(seed);
  double z = start ? *start : 0.5 * die.uniform01();
  double sum = 0.0;
  for (long n = 0; n < steps; ++n) {
    const int r = die.roll();
    sum += -0.5 * std::log(z_derivative_abs(r, z));
    z = z_map(r, z);
  }
  return sum / double(steps);
}

/// Least-squares slope of ln(Y_n) against n over the second half of a
/// planar trace. Requires a strictly positive height throughout.
inline double lyapunov_slope_Y(const TriangleTraceData& trace) {
  const std::size_t len = trace.steps.size();
  if (len < 100) throw std::invalid_argument("lyapunov_slope_Y: need at least 100 recorded states");
  for (const auto& st : trace.steps)
    if (std::isinf(st.log_y)) throw FlatTrace("lyapunov_slope_Y: flat state in trace");
  const std::size_t lo = len / 2;
  double sn = 0.0, sy = 0.0, snn = 0.0, sny = 0.0;
  const double m = double(len - lo);
  for (std::size_t n = lo; n < len; ++n) {
    const double t = double(n);
    const double v = trace.steps[n].log_y;
    sn += t;
    sy += v;
    snn += t * t;
    sny += t * v;
  }
  return (m * sny - sn * sy) / (m * snn - sn * sn);
}

/// Sorted sample carrying an empirical distribution on [0, 1/2].
struct EmpiricalMeasure {
  std::vector<double> sorted;

  static EmpiricalMeasure from_samples(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return {std::move(v)};
  }
};

/// W1 distance between equal-size empirical measures: mean absolute
/// difference of the order statistics.
inline double w1_empirical(const EmpiricalMeasure& p, const EmpiricalMeasure& q) {
  if (p.sorted.size() != q.sorted.size())
    throw SizeMismatch("w1_empirical: sample counts differ");
  if (p.sorted.empty()) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < p.sorted.size(); ++k) acc += std::fabs(p.sorted[k] - q.sorted[k]);
  return acc / double(p.sorted.size());
}

/// W1 distance between two histograms on the same binning, as measures
/// sitting on the bin midpoints: the area between the two mass CDFs. For
/// equal sample counts this equals w1_empirical on midpoint-quantized
/// samples.
inline double w1_histogram(const Histogram& a, const Histogram& b) {
  if (a.bins != b.bins) throw SizeMismatch("w1_histogram: bin counts differ");
  double acc = 0.0, ca = 0.0, cb = 0.0;
  const double spacing = 0.5 / a.bins;
  for (int k = 0; k + 1 < a.bins; ++k) {
    ca += a.mass[std::size_t(k)];
    cb += b.mass[std::size_t(k)];
    acc += std::fabs(ca - cb) * spacing;
  }
  return acc;
}

/// Fraction of the `bins` cells of [0,1/2] visited by the x-coordinate over
/// the second half of the trace.
inline double limit_set_coverage(const std::vector<double>& xs, int bins) {
  if (xs.empty()) throw std::invalid_argument("limit_set_coverage: empty trace");
  if (bins < 1) throw std::invalid_argument("limit_set_coverage: bins must be >= 1");
  std::vector<char> seen(std::size_t(bins), 0);
  for (std::size_t n = xs.size() / 2; n < xs.size(); ++n) {
    int b = int(xs[n] * 2.0 * bins);
    b = std::clamp(b, 0, bins - 1);
    seen[std::size_t(b)] = 1;
  }
  long hit = 0;
  for (char c : seen) hit += c;
  return double(hit) / double(bins);
}

inline double limit_set_coverage(const FlatTraceData& trace, int bins) {
  std::vector<double> xs(trace.steps.size());
  for (std::size_t n = 0; n < xs.size(); ++n) xs[n] = trace.steps[n].x;
  return limit_set_coverage(xs, bins);
}

inline double limit_set_coverage(const TriangleTraceData& trace, int bins) {
  std::vector<double> xs(trace.steps.size());
  for (std::size_t n = 0; n < xs.size(); ++n) xs[n] = trace.steps[n].x;
  return limit_set_coverage(xs, bins);
}

/// Fraction of traces whose largest angle at step n exceeds the threshold.
inline double angle_exceedance(const std::vector<TriangleTraceData>& traces, std::size_t n,
                               double threshold) {
  if (traces.empty()) throw std::invalid_argument("angle_exceedance: no traces");
  long count = 0;
  for (const auto& t : traces) {
    if (t.steps.size() <= n) throw std::invalid_argument("angle_exceedance: trace shorter than n");
    if (t.steps[n].angle > threshold) ++count;
  }
  return double(count) / double(traces.size());
}

}  // namespace trisub
