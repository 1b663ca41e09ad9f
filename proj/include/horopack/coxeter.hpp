#pragma once

// Schlafli symbols of linear Coxeter schemes and their Gram matrices.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "horopack/errors.hpp"
#include "horopack/lorentz.hpp"

namespace horopack {

/// (p, q, r) for a 3-dimensional honeycomb or orthoscheme.
struct SchlafliSymbol {
  int p = 0, q = 0, r = 0;

  constexpr SchlafliSymbol() = default;
  constexpr SchlafliSymbol(int p_, int q_, int r_) : p(p_), q(q_), r(r_) {}

  constexpr std::array<int, 3> weights() const { return {p, q, r}; }
  constexpr bool operator==(const SchlafliSymbol&) const = default;

  std::string str() const {
    return "(" + std::to_string(p) + "," + std::to_string(q) + "," + std::to_string(r) + ")";
  }
  /// "336" style tag used on the command line.
  std::string tag() const { return std::to_string(p) + std::to_string(q) + std::to_string(r); }

  /// Accepts "336", "3,3,6" or "(3,3,6)".
  static SchlafliSymbol parse(const std::string& text) {
    std::array<int, 3> w{};
    int n = 0;
    for (char ch : text) {
      if (ch >= '0' && ch <= '9') {
        if (n == 3) throw InvalidInput("schlafli symbol: too many weights in '" + text + "'");
        w[n++] = ch - '0';
      } else if (ch != ',' && ch != '(' && ch != ')' && ch != ' ') {
        throw InvalidInput("schlafli symbol: unexpected character in '" + text + "'");
      }
    }
    if (n != 3) throw InvalidInput("schlafli symbol: need three weights in '" + text + "'");
    return {w[0], w[1], w[2]};
  }
};

struct CoxeterMatrix {
  Mat4 b;  // Gram matrix of unit normals, b_ii = 1, b_ij = -cos(pi/n_ij)
  Mat4 a;  // inverse of b
  Eigen::Vector4d eigenvalues;  // ascending
  double condition = 0.0;       // |lambda|max / |lambda|min
  int negative_eigenvalues = 0;

  bool hyperbolic() const { return negative_eigenvalues == 1; }
};

/// Tridiagonal Coxeter-Schlafli matrix of the orthoscheme with the given
/// symbol.  Always returns a matrix; condition data tells degenerate cases
/// apart.
inline CoxeterMatrix coxeter_matrix(const SchlafliSymbol& s) {
  for (int w : s.weights()) {
    if (w < 2) throw InvalidInput("coxeter_matrix: weights must be >= 2, got " + s.str());
  }
  const double pi = std::numbers::pi;
  CoxeterMatrix m;
  m.b = Mat4::Identity();
  const auto w = s.weights();
  for (int i = 0; i < 3; ++i) {
    m.b(i, i + 1) = m.b(i + 1, i) = -std::cos(pi / w[i]);
  }
  Eigen::SelfAdjointEigenSolver<Mat4> es(m.b);
  m.eigenvalues = es.eigenvalues();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (int i = 0; i < 4; ++i) {
    const double l = m.eigenvalues[i];
    if (l < -1e-12) ++m.negative_eigenvalues;
    lo = std::min(lo, std::abs(l));
    hi = std::max(hi, std::abs(l));
  }
  m.condition = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  m.a = m.b.inverse();
  return m;
}

/// Distance between orthoscheme vertices i and j read off the inverse Gram
/// matrix.  With b_ii = +1 the form on normals has one negative direction,
/// so proper vertices have a_ii < 0; ideal ones (a_ii ~ 0) give +infinity.
inline double vertex_distance(const CoxeterMatrix& m, int i, int j, double tol = 1e-10) {
  if (i < 0 || i > 3 || j < 0 || j > 3 || i == j) {
    throw InvalidInput("vertex_distance: need two distinct indices in 0..3");
  }
  const double aii = m.a(i, i), ajj = m.a(j, j);
  if (aii >= -tol || ajj >= -tol) return std::numeric_limits<double>::infinity();
  const double c = -m.a(i, j) / std::sqrt(aii * ajj);
  return std::acosh(std::max(1.0, c));
}

enum class TilingClass { ProperCentersAndVertices, FullyAsymptotic, InfiniteCenters, Unsupported };

inline const char* to_string(TilingClass c) {
  switch (c) {
    case TilingClass::ProperCentersAndVertices: return "proper centers and vertices";
    case TilingClass::FullyAsymptotic: return "fully asymptotic";
    case TilingClass::InfiniteCenters: return "infinite centers";
    case TilingClass::Unsupported: return "unsupported";
  }
  return "?";
}

inline TilingClass classify_tiling(const SchlafliSymbol& s) {
  static constexpr SchlafliSymbol proper[] = {{3, 5, 3}, {4, 3, 5}, {5, 3, 4}, {5, 3, 5}};
  static constexpr SchlafliSymbol asymptotic[] = {{3, 3, 6}, {3, 4, 4}, {4, 3, 6}, {5, 3, 6}};
  static constexpr SchlafliSymbol infinite[] = {{3, 6, 3}, {4, 4, 4}, {6, 3, 6}, {4, 4, 3},
                                                {6, 3, 3}, {6, 3, 4}, {6, 3, 5}};
  for (const auto& t : proper) if (t == s) return TilingClass::ProperCentersAndVertices;
  for (const auto& t : asymptotic) if (t == s) return TilingClass::FullyAsymptotic;
  for (const auto& t : infinite) if (t == s) return TilingClass::InfiniteCenters;
  return TilingClass::Unsupported;
}

/// Throws UnsupportedSymbol unless s is one of the four fully asymptotic
/// tilings (the only ones that carry a horoball at every cell vertex).
inline void require_fully_asymptotic(const SchlafliSymbol& s) {
  if (classify_tiling(s) != TilingClass::FullyAsymptotic) {
    throw UnsupportedSymbol("tiling " + s.str() + " is not fully asymptotic (" +
                            to_string(classify_tiling(s)) + ")");
  }
}

}  // namespace horopack
