#pragma once

// Lobachevsky function, orthoscheme volumes, the Boroczky-Florian constant
// and a Monte Carlo volume estimate in the Klein chart.

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "horopack/coxeter.hpp"
#include "horopack/errors.hpp"
#include "horopack/hull.hpp"
#include "horopack/lorentz.hpp"

namespace horopack {

enum class VolumeMethod { ClosedForm, MonteCarlo };

inline const char* to_string(VolumeMethod m) {
  return m == VolumeMethod::ClosedForm ? "closed-form" : "monte-carlo";
}

struct VolumeResult {
  double value = 0.0;
  VolumeMethod method = VolumeMethod::ClosedForm;
  double std_error = 0.0;  // zero for closed forms
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

namespace detail {

// c_k = zeta(2k) / (k (2k+1) pi^{2k}); the series in theta converges for
// |theta| < pi with ratio (theta/pi)^2, so at most pi/2 after reduction
// 30 terms are far below double rounding.
inline const std::array<double, 30>& lobachevsky_coefficients() {
  static const std::array<double, 30> c = [] {
    std::array<double, 30> out{};
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double pw = 1.0;
    for (int k = 1; k <= 30; ++k) {
      pw *= pi2;
      out[k - 1] = std::riemann_zeta(2.0 * k) / (k * (2.0 * k + 1.0) * pw);
    }
    return out;
  }();
  return c;
}

}  // namespace detail

/// Lambda(theta) = -int_0^theta log|2 sin t| dt.  Odd and pi-periodic.
inline double lobachevsky(double theta) {
  const double pi = std::numbers::pi;
  if (!std::isfinite(theta)) throw InvalidInput("lobachevsky: non-finite argument");
  // reduce to (-pi/2, pi/2]
  double r = std::remainder(theta, pi);
  if (r <= -pi / 2) r += pi;
  const double a = std::abs(r);
  if (a == 0.0) return 0.0;
  const auto& c = detail::lobachevsky_coefficients();
  const double a2 = a * a;
  double sum = 0.0;
  double pw = a * a2;
  for (double ck : c) {
    const double term = ck * pw;
    sum += term;
    if (term < 1e-18 * a) break;
    pw *= a2;
  }
  const double v = a - a * std::log(2.0 * a) + sum;
  return r < 0 ? -v : v;
}

/// The characteristic orthoscheme of each fully asymptotic tiling and how
/// many copies make up one cell.
struct CellDecomposition {
  SchlafliSymbol orthoscheme;
  int pieces;
};

inline CellDecomposition cell_decomposition(const SchlafliSymbol& tiling) {
  require_fully_asymptotic(tiling);
  if (tiling == SchlafliSymbol{3, 3, 6}) return {{3, 6, 3}, 6};
  if (tiling == SchlafliSymbol{3, 4, 4}) return {{4, 4, 4}, 16};
  if (tiling == SchlafliSymbol{4, 3, 6}) return {{4, 3, 6}, 48};
  return {{5, 3, 6}, 120};
}

inline bool is_supported_orthoscheme(const SchlafliSymbol& s) {
  return s == SchlafliSymbol{3, 6, 3} || s == SchlafliSymbol{4, 4, 4} ||
         s == SchlafliSymbol{4, 3, 6} || s == SchlafliSymbol{5, 3, 6};
}

/// Closed-form volume of the orthoscheme with dihedral angles pi/p, pi/q,
/// pi/r at its three essential edges (the others right angles).
inline VolumeResult orthoscheme_volume(const SchlafliSymbol& s) {
  if (!is_supported_orthoscheme(s)) {
    throw UnsupportedSymbol("orthoscheme_volume: no closed form wired for " + s.str());
  }
  const double pi = std::numbers::pi;
  const double a1 = pi / s.p, a2 = pi / s.q, a3 = pi / s.r;
  const double disc = std::cos(a2) * std::cos(a2) -
                      std::sin(a1) * std::sin(a1) * std::sin(a3) * std::sin(a3);
  if (disc <= 0.0) throw DomainError("orthoscheme_volume: not a hyperbolic orthoscheme " + s.str());
  const double d = std::atan(std::sqrt(disc) / (std::cos(a1) * std::cos(a3)));
  const auto L = lobachevsky;
  const double v = 0.25 * (L(a1 + d) - L(a1 - d) + L(a3 + d) - L(a3 - d) - L(pi / 2 - a2 + d) +
                           L(pi / 2 - a2 - d) + 2.0 * L(pi / 2 - d));
  return {v, VolumeMethod::ClosedForm, 0.0, 0, 0};
}

/// Volume of one cell of a fully asymptotic tiling.
inline VolumeResult tiling_cell_volume(const SchlafliSymbol& tiling) {
  const auto dec = cell_decomposition(tiling);
  VolumeResult r = orthoscheme_volume(dec.orthoscheme);
  r.value *= dec.pieces;
  return r;
}

/// Partial sums of 1 + 1/2^2 - 1/4^2 - 1/5^2 + 1/7^2 + 1/8^2 - ...
/// (integers prime to 3, signs + + - - repeating).
struct BfSeries {
  double value;             // reciprocal of the summed series
  double series;            // the summed series itself
  double truncation_bound;  // bound on |value - exact reciprocal|
  long blocks;
};

inline double bf_partial(long terms) {
  // terms counted over integers not divisible by 3
  double s = 0.0;
  long n = 0, used = 0;
  while (used < terms) {
    ++n;
    if (n % 3 == 0) continue;
    const int m6 = static_cast<int>(n % 6);
    const double sign = (m6 == 1 || m6 == 2) ? 1.0 : -1.0;
    s += sign / (static_cast<double>(n) * n);
    ++used;
  }
  return s;
}

inline BfSeries bf_series(long blocks = 2000000) {
  // block j holds 6j+1, 6j+2 (plus) and 6j+4, 6j+5 (minus); block sums are
  // positive and decreasing, and sum_{j>=K} b_j <= 16/(6K+1)^3 + 4/(3(6K+1)^2)
  double s = 0.0;
  for (long j = blocks - 1; j >= 0; --j) {
    const double n = 6.0 * j;
    s += 1.0 / ((n + 1) * (n + 1)) + 1.0 / ((n + 2) * (n + 2)) - 1.0 / ((n + 4) * (n + 4)) -
         1.0 / ((n + 5) * (n + 5));
  }
  const double m = 6.0 * blocks + 1.0;
  const double tail = 16.0 / (m * m * m) + 4.0 / (3.0 * m * m);
  return {1.0 / s, s, tail / (s * s), blocks};
}

inline double bf_constant() { return bf_series().value; }

/// Monte Carlo estimate of the hyperbolic volume of a region of the Klein
/// ball given by a membership predicate and a bounding box.  The integrand is
/// the Klein volume element 1/(1-|x|^2)^2.
template <class Inside>
VolumeResult monte_carlo_volume(Inside&& inside, const Vec3& lo, const Vec3& hi,
                                std::uint64_t samples, std::uint64_t seed) {
  if (samples < 10000) throw InvalidInput("monte_carlo_volume: need at least 1e4 samples");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(lo.x(), hi.x()), uy(lo.y(), hi.y()),
      uz(lo.z(), hi.z());
  const double box = (hi - lo).prod();
  // Welford running mean/variance
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t i = 1; i <= samples; ++i) {
    const Vec3 x(ux(rng), uy(rng), uz(rng));
    double f = 0.0;
    const double q = 1.0 - x.squaredNorm();
    if (q > 0.0 && inside(x)) f = 1.0 / (q * q);
    const double d = f - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (f - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {box * mean, VolumeMethod::MonteCarlo,
          box * std::sqrt(var / static_cast<double>(samples)), samples, seed};
}

/// Monte Carlo volume of the convex hull of Klein-chart points.
///
/// Near an ideal vertex the volume element grows like 1/t^2 in the distance
/// t to the vertex, which gives plain box sampling an infinite variance (the
/// reported error bar is then meaningless).  When the hull has ideal
/// vertices, half of the samples are therefore drawn from the box and the
/// rest from densities proportional to 1/t^2 around each ideal vertex
/// (uniform direction, radius uniform in [0, R]).  Weighting by the mixture
/// density keeps the estimator unbiased and bounded.
inline VolumeResult monte_carlo_volume(const std::vector<Vec3>& vertices, std::uint64_t samples,
                                       std::uint64_t seed) {
  const auto planes = supporting_planes(vertices);
  Vec3 lo = vertices.front(), hi = vertices.front();
  for (const auto& v : vertices) {
    lo = lo.cwiseMin(v);
    hi = hi.cwiseMax(v);
  }
  auto inside = [&](const Vec3& x) { return inside_hull(planes, x); };
  std::vector<Vec3> cusps;
  for (const auto& v : vertices) {
    if (std::abs(1.0 - v.squaredNorm()) <= kAbsoluteTolerance) cusps.push_back(v);
  }
  if (cusps.empty()) return monte_carlo_volume(inside, lo, hi, samples, seed);
  if (samples < 10000) throw InvalidInput("monte_carlo_volume: need at least 1e4 samples");

  const double radius = 0.5;
  const double w_box = 0.5;
  const double w_cusp = (1.0 - w_box) / static_cast<double>(cusps.size());
  const double box = (hi - lo).prod();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t i = 1; i <= samples; ++i) {
    Vec3 x;
    const double pick = u01(rng);
    if (pick < w_box) {
      x = lo + (hi - lo).cwiseProduct(Vec3(u01(rng), u01(rng), u01(rng)));
    } else {
      const auto k = std::min(cusps.size() - 1,
                              static_cast<std::size_t>((pick - w_box) / w_cusp));
      Vec3 dir(gauss(rng), gauss(rng), gauss(rng));
      dir.normalize();
      x = cusps[k] + radius * u01(rng) * dir;
    }
    double f = 0.0;
    const double q = 1.0 - x.squaredNorm();
    if (q > 0.0 && inside(x)) {
      bool in_box = (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
      double density = in_box ? w_box / box : 0.0;
      for (const auto& c : cusps) {
        const double t = (x - c).norm();
        if (t < radius) density += w_cusp / (4.0 * std::numbers::pi * radius * t * t);
      }
      f = 1.0 / (q * q * density);
    }
    const double d = f - mean;
    mean += d / static_cast<double>(i);
    m2 += d * (f - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean, VolumeMethod::MonteCarlo, std::sqrt(var / static_cast<double>(samples)), samples,
          seed};
}

/// Hyperbolic volume of a ball of hyperbolic radius rho.
inline double ball_volume(double rho) { return std::numbers::pi * (std::sinh(2 * rho) - 2 * rho); }

}  // namespace horopack
