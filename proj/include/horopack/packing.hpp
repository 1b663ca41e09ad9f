#pragma once

// Horoball packings of the four fully asymptotic cells: one horoball per
// ideal vertex, densities, one-parameter families and the named
// arrangements.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "horopack/cell.hpp"
#include "horopack/coxeter.hpp"
#include "horopack/errors.hpp"
#include "horopack/horoball.hpp"
#include "horopack/lorentz.hpp"

namespace horopack {

inline constexpr double kPackingTolerance = 1e-9;

/// Shared, lazily built copy of the standard cell of each tiling.
inline const Cell& standard_cell(const SchlafliSymbol& s) {
  require_fully_asymptotic(s);
  static const Cell c336 = build_cell({3, 3, 6});
  static const Cell c344 = build_cell({3, 4, 4});
  static const Cell c436 = build_cell({4, 3, 6});
  static const Cell c536 = build_cell({5, 3, 6});
  if (s == SchlafliSymbol{3, 3, 6}) return c336;
  if (s == SchlafliSymbol{3, 4, 4}) return c344;
  if (s == SchlafliSymbol{4, 3, 6}) return c436;
  return c536;
}

struct Tangency {
  int i, j;
  Vec4 contact;
};

struct PackingConfiguration {
  SchlafliSymbol tiling;
  std::string label;
  Cell cell;
  std::vector<Horoball> balls;  // balls[v] centered at cell.vertices[v]
  std::vector<Tangency> tangencies;

  /// Canonical type parameter of every ball.
  std::vector<double> types() const {
    std::vector<double> out;
    for (int v = 0; v < cell.size(); ++v) out.push_back(canonical_s(cell, v, balls[v]));
    return out;
  }
};

inline std::vector<Tangency> find_tangencies(const std::vector<Horoball>& balls,
                                             double tol = kPackingTolerance) {
  std::vector<Tangency> out;
  for (int i = 0; i < static_cast<int>(balls.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(balls.size()); ++j) {
      if (tangent(balls[i], balls[j], tol)) {
        out.push_back({i, j, contact_point(balls[i], balls[j]).coords()});
      }
    }
  }
  return out;
}

inline PackingConfiguration make_configuration(const Cell& cell, std::vector<Horoball> balls,
                                               std::string label = {}) {
  if (static_cast<int>(balls.size()) != cell.size()) {
    throw InvalidConfiguration("configuration needs exactly one horoball per vertex");
  }
  for (int v = 0; v < cell.size(); ++v) {
    if (!balls[v].center().projectively_equal(cell.vertices[v])) {
      throw InvalidConfiguration("horoball " + std::to_string(v) + " is not centered at its vertex");
    }
  }
  PackingConfiguration c{cell.schlafli, std::move(label), cell, std::move(balls), {}};
  c.tangencies = find_tangencies(c.balls);
  return c;
}

/// Configuration from canonical types, one per vertex.
inline PackingConfiguration configuration_from_types(const SchlafliSymbol& tiling,
                                                     const std::vector<double>& s,
                                                     std::string label = {}) {
  const Cell& cell = standard_cell(tiling);
  if (static_cast<int>(s.size()) != cell.size()) {
    throw InvalidInput("configuration_from_types: need " + std::to_string(cell.size()) + " types");
  }
  std::vector<Horoball> balls;
  for (int v = 0; v < cell.size(); ++v) balls.push_back(horoball_at(cell, v, s[v]));
  return make_configuration(cell, std::move(balls), std::move(label));
}

struct Violation {
  enum Kind { Overlap, Face } kind;
  int i;       // vertex
  int j;       // other vertex (Overlap) or face index (Face)
  bool edge;   // Overlap along a cell edge
  double depth;  // hyperbolic overlap depth
  std::string describe() const {
    if (kind == Overlap) {
      return "horoballs " + std::to_string(i) + " and " + std::to_string(j) + " overlap by " +
             std::to_string(depth) + (edge ? " (edge)" : " (diagonal)");
    }
    return "horoball " + std::to_string(i) + " crosses face " + std::to_string(j) + " by " +
           std::to_string(depth);
  }
};

struct Validity {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
  explicit operator bool() const { return valid(); }
};

/// Every pair of horoballs is checked, not only pairs joined by an edge: in
/// the larger cells a ball can reach past an edge neighbour to a vertex
/// across a face.
inline Validity validate_packing(const PackingConfiguration& c, double tol = kPackingTolerance) {
  Validity out;
  const int n = c.cell.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double gap = horoball_gap(c.balls[i], c.balls[j]);
      if (gap < -tol) out.violations.push_back({Violation::Overlap, i, j, c.cell.adjacent(i, j), -gap});
    }
  }
  for (int v = 0; v < n; ++v) {
    const Vec4 cv = c.balls[v].vector();
    for (int f : c.cell.far_faces(v)) {
      const double e = std::abs(c.cell.faces[f].plane.evaluate(cv));
      // the horosphere reaches the plane when |<c,b>| = 1
      if (e < 1.0 - tol) out.violations.push_back({Violation::Face, v, f, false, -std::log(e)});
    }
  }
  return out;
}

struct DensityReport {
  double density = 0.0;
  std::vector<double> sector_volumes;
  double cell_volume = 0.0;
  PackingConfiguration config;
};

/// Sum of sector volumes over the cell volume.  With check = false overlaps
/// between balls are ignored (a ball crossing a face still throws).
inline DensityReport density(const PackingConfiguration& c, bool check = true) {
  if (check) {
    const auto val = validate_packing(c);
    if (!val) throw InvalidConfiguration("density: " + val.violations.front().describe());
  }
  DensityReport r{0.0, {}, c.cell.volume.value, c};
  double sum = 0.0;
  for (int v = 0; v < c.cell.size(); ++v) {
    r.sector_volumes.push_back(vertex_sector_volume(c.balls[v], c.cell, v));
    sum += r.sector_volumes.back();
  }
  r.density = sum / r.cell_volume;
  return r;
}

/// Smallest kappa (largest ball) at vertex v that keeps clear of the faces
/// not containing v.
inline double face_bound(const Cell& cell, int v) {
  double k = 0.0;
  for (int f : cell.far_faces(v)) {
    k = std::max(k, 1.0 / std::abs(cell.faces[f].plane.evaluate(cell.vertex(v))));
  }
  return k;
}

/// -<E_a, E_b> with both vertices scaled so <T, E> = -1; a symmetric
/// closeness measure between ideal vertices.
inline double vertex_separation(const Cell& cell, int a, int b) {
  const Vec4& ea = cell.vertex(a);
  const Vec4& eb = cell.vertex(b);
  return -bilinear_form(ea, eb) /
         (bilinear_form(cell.center, ea) * bilinear_form(cell.center, eb));
}

/// Anchors get type s; every other vertex, stage by stage and nearest
/// anchor first, gets the largest ball that is no larger than the anchor
/// type, stays clear of far faces, and does not overlap any ball already
/// placed.
inline std::vector<Horoball> complete_configuration(const Cell& cell, const std::vector<int>& anchors,
                                                    double s,
                                                    std::vector<std::vector<int>> stages = {}) {
  const int n = cell.size();
  std::vector<std::optional<Horoball>> placed(n);
  for (int a : anchors) placed.at(a) = horoball_at(cell, a, s);
  std::vector<int> rest;
  for (const auto& st : stages) rest.insert(rest.end(), st.begin(), st.end());
  std::vector<int> tail;
  for (int v = 0; v < n; ++v) {
    if (!placed[v] && std::find(rest.begin(), rest.end(), v) == rest.end()) tail.push_back(v);
  }
  if (!tail.empty()) stages.push_back(tail);
  const double cap = kappa_from_s(s);
  for (auto st : stages) {
    std::erase_if(st, [&](int v) { return placed[v].has_value(); });
    auto near = [&](int v) {
      double m = std::numeric_limits<double>::infinity();
      for (int a : anchors) m = std::min(m, vertex_separation(cell, a, v));
      return m;
    };
    std::stable_sort(st.begin(), st.end(), [&](int a, int b) {
      const double ma = near(a), mb = near(b);
      if (std::abs(ma - mb) > 1e-12) return ma < mb;
      return a < b;
    });
    for (int v : st) {
      if (placed[v]) continue;
      double k = std::max(cap * cell.type_scale(v), face_bound(cell, v));
      for (int u = 0; u < n; ++u) {
        if (!placed[u]) continue;
        k = std::max(k, 2.0 / (placed[u]->kappa() * -bilinear_form(placed[u]->center().coords(),
                                                                   cell.vertex(v))));
      }
      placed[v] = Horoball(cell.vertices[v], k);
    }
  }
  std::vector<Horoball> out;
  for (auto& p : placed) out.push_back(*p);
  return out;
}

/// One-parameter family: anchor balls of type s, the rest filled in by
/// complete_configuration.  Breakpoints split the range where the tangency
/// pattern changes.
struct Family {
  SchlafliSymbol tiling;
  std::string name;
  std::vector<int> anchors;
  std::vector<std::vector<int>> stages;
  double s_lo, s_hi;
  std::vector<double> breakpoints;

  std::vector<std::pair<double, double>> segments() const {
    std::vector<double> cuts{s_lo};
    for (double b : breakpoints) {
      if (b > s_lo && b < s_hi) cuts.push_back(b);
    }
    cuts.push_back(s_hi);
    std::vector<std::pair<double, double>> out;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) out.emplace_back(cuts[i], cuts[i + 1]);
    return out;
  }

  bool contains(double s) const { return s >= s_lo - 1e-12 && s <= s_hi + 1e-12; }

  /// Hyperbolic distance the anchor horospheres have moved out from their
  /// smallest state at s_hi.
  double x_of(double s) const { return std::log(kappa_from_s(s_hi) / kappa_from_s(s)); }

  PackingConfiguration at(double s, std::string label = {}) const {
    if (!contains(s)) {
      throw InvalidInput("family " + name + ": s = " + std::to_string(s) + " outside [" +
                         std::to_string(s_lo) + ", " + std::to_string(s_hi) + "]");
    }
    const Cell& cell = standard_cell(tiling);
    if (label.empty()) label = name;
    return make_configuration(cell, complete_configuration(cell, anchors, s, stages), std::move(label));
  }
};

namespace detail {

// index helpers for the fixed vertex numbering of build_cell
inline std::vector<int> cube_indices() { return {0, 1, 2, 3, 4, 5, 6, 7}; }
inline std::vector<int> non_cube_indices() {
  std::vector<int> v;
  for (int i = 8; i < 20; ++i) v.push_back(i);
  return v;
}
// E3 and the three cube vertices across a face diagonal from it
inline std::vector<int> cube_tetrahedron() { return {1, 2, 3, 4}; }

/// Type making all dodecahedron balls equal and tangent along edges.
inline double dodecahedron_uniform_s() {
  const Cell& c = standard_cell({5, 3, 6});
  const auto [a, b] = c.edges.front();
  const double m = -bilinear_form(c.vertex(a), c.vertex(b));
  const double k2 = 2.0 / m;
  return (k2 - 1.0) / (k2 + 1.0);
}

}  // namespace detail

inline std::vector<Family> families(const SchlafliSymbol& t) {
  require_fully_asymptotic(t);
  if (t == SchlafliSymbol{3, 3, 6}) return {{t, "E3", {3}, {}, 0.0, 0.5, {}}};
  if (t == SchlafliSymbol{3, 4, 4}) return {{t, "E3", {3}, {}, -1.0 / 3.0, 1.0 / 3.0, {0.0}}};
  if (t == SchlafliSymbol{4, 3, 6}) {
    return {{t, "E3", {3}, {}, -1.0 / 3.0, 0.5, {0.2}}, {t, "pair", {3, 7}, {}, 0.0, 0.5, {}}};
  }
  const auto cube = detail::cube_indices();
  const auto rest = detail::non_cube_indices();
  return {{t, "cube", cube, {rest}, 0.5, detail::dodecahedron_uniform_s(), {}},
          {t, "pair", {3, 7}, {cube, rest}, 0.0, 0.5, {}},
          {t, "tetra", detail::cube_tetrahedron(), {cube, rest}, 0.2, 0.5, {}},
          {t, "E3", {3}, {cube, rest}, 0.0, 0.2, {}}};
}

inline Family family(const SchlafliSymbol& t, const std::string& name) {
  for (auto& f : families(t)) {
    if (f.name == name) return f;
  }
  std::string known;
  for (auto& f : families(t)) known += (known.empty() ? "" : ", ") + f.name;
  throw InvalidInput("unknown family '" + name + "' for " + t.str() + " (known: " + known + ")");
}

struct CatalogEntry {
  std::string label;  // B1, B2, ...
  std::string family;
  double s;
  std::string description;
};

inline std::vector<CatalogEntry> catalog_entries(const SchlafliSymbol& t) {
  require_fully_asymptotic(t);
  if (t == SchlafliSymbol{3, 3, 6}) {
    return {{"B1", "E3", 0.5, "four equal balls tangent at edge midpoints"},
            {"B2", "E3", 0.0, "E3 ball touching the opposite face, three small balls"}};
  }
  if (t == SchlafliSymbol{3, 4, 4}) {
    return {{"B1", "E3", 1.0 / 3.0, "six equal balls tangent at edge midpoints"},
            {"B2", "E3", 0.0, "E3 and E5 tangent at the center, four small balls"},
            {"B3", "E3", -1.0 / 3.0, "E3 touching its far faces, five balls around it"}};
  }
  if (t == SchlafliSymbol{4, 3, 6}) {
    return {{"B1", "E3", 0.5, "eight equal balls tangent at edge midpoints"},
            {"B2", "pair", 0.0, "E3 and E7 tangent at the center, six small balls"},
            {"B3", "E3", 0.2, "four equal balls on alternate vertices, tangent across face diagonals"},
            {"B4", "E3", -1.0 / 3.0, "E3 touching its far faces, seven balls around it"}};
  }
  return {{"B1", "cube", detail::dodecahedron_uniform_s(), "twenty equal balls tangent at edge midpoints"},
          {"B2", "cube", 0.5, "equal balls on the inscribed cube, the other twelve tangent to them"},
          {"B3", "pair", 0.0, "E3 and E7 tangent at the center, cube and remaining balls filled in"},
          {"B4", "tetra", 0.2, "equal balls on an inscribed tetrahedron, the rest filled in"},
          {"B5", "E3", 0.0, "E3 enlarged from B4, cube and remaining balls filled in"}};
}

inline std::vector<PackingConfiguration> catalog(const SchlafliSymbol& t) {
  std::vector<PackingConfiguration> out;
  for (const auto& e : catalog_entries(t)) out.push_back(family(t, e.family).at(e.s, e.label));
  return out;
}

inline PackingConfiguration catalog_configuration(const SchlafliSymbol& t, const std::string& label) {
  for (const auto& e : catalog_entries(t)) {
    if (e.label == label) return family(t, e.family).at(e.s, e.label);
  }
  std::string known;
  for (const auto& e : catalog_entries(t)) known += (known.empty() ? "" : ", ") + e.label;
  throw InvalidInput("unknown configuration '" + label + "' for " + t.str() + " (known: " + known + ")");
}

/// Range of x for which volume_function is defined: neither ball may cross
/// a face it does not touch.
inline std::pair<double, double> admissible_interval(const PackingConfiguration& c, int i, int j) {
  if (!tangent(c.balls.at(i), c.balls.at(j), kPackingTolerance)) {
    throw InvalidInput("volume_function: balls " + std::to_string(i) + " and " + std::to_string(j) +
                       " are not tangent");
  }
  const double vi = vertex_sector_volume(c.balls[i], c.cell, i);
  const double vj = vertex_sector_volume(c.balls[j], c.cell, j);
  const double t0 = 0.25 * std::log(vi / vj);
  const double ki = c.balls[i].kappa(), kj = c.balls[j].kappa();
  const double t_lo = std::log(face_bound(c.cell, i) / ki);
  const double t_hi = std::log(kj / face_bound(c.cell, j));
  // x = t0 - t, t being the log-scale applied to ball i
  return {t0 - t_hi, t0 - t_lo};
}

/// Summed sector volume of balls i and j after sliding their contact point a
/// hyperbolic distance x from the balanced point (x > 0 grows ball i).
inline double volume_function(const PackingConfiguration& c, int i, int j, double x) {
  const auto [lo, hi] = admissible_interval(c, i, j);
  if (x < lo - 1e-12 || x > hi + 1e-12) {
    throw DomainError("volume_function: x = " + std::to_string(x) + " outside admissible interval [" +
                      std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const double vi = vertex_sector_volume(c.balls[i], c.cell, i);
  const double vj = vertex_sector_volume(c.balls[j], c.cell, j);
  const double t = 0.25 * std::log(vi / vj) - x;
  // clamp rounding at the interval ends so the face test does not trip
  const double ki = std::max(c.balls[i].kappa() * std::exp(t), face_bound(c.cell, i));
  const double kj = std::max(c.balls[j].kappa() * std::exp(-t), face_bound(c.cell, j));
  return vertex_sector_volume(Horoball(c.balls[i].center(), ki), c.cell, i) +
         vertex_sector_volume(Horoball(c.balls[j].center(), kj), c.cell, j);
}

struct SweepRow {
  double s;
  double x;
  bool valid;
  std::string violation;  // first violation when invalid
  DensityReport report;
};

inline std::vector<SweepRow> sweep(const SchlafliSymbol& t, const Family& f, const std::vector<double>& grid) {
  if (!(f.tiling == t)) throw InvalidInput("sweep: family belongs to " + f.tiling.str());
  std::vector<SweepRow> out;
  for (double s : grid) {
    const auto cfg = f.at(s, f.name + "@" + std::to_string(s));
    const auto val = validate_packing(cfg);
    out.push_back({s, f.x_of(s), val.valid(), val ? "" : val.violations.front().describe(),
                   density(cfg, false)});
  }
  return out;
}

inline std::vector<SweepRow> sweep(const SchlafliSymbol& t, const std::string& family_name,
                                   const std::vector<double>& grid) {
  return sweep(t, family(t, family_name), grid);
}

inline std::vector<double> linspace(double lo, double hi, int n) {
  if (n < 1) throw InvalidInput("linspace: need at least one point");
  if (n == 1) return {lo};
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(k + 1 == n ? hi : lo + (hi - lo) * k / (n - 1));
  return g;
}

struct Certificate {
  std::vector<DensityReport> evaluated;  // every catalog entry
  std::vector<DensityReport> optima;     // argmax set, ties at 1e-6
  double family_max = 0.0;               // best density seen on the family grids
  std::string family_argmax;
};

inline Certificate certify_optimum(const SchlafliSymbol& t, double grid_step = 1e-3) {
  Certificate c;
  for (const auto& cfg : catalog(t)) c.evaluated.push_back(density(cfg));
  for (const auto& f : families(t)) {
    const int n = std::max(2, static_cast<int>(std::ceil((f.s_hi - f.s_lo) / grid_step)) + 1);
    for (const auto& row : sweep(t, f, linspace(f.s_lo, f.s_hi, n))) {
      if (row.valid && row.report.density > c.family_max) {
        c.family_max = row.report.density;
        c.family_argmax = f.name + "@" + std::to_string(row.s);
      }
    }
  }
  double best = 0.0;
  for (const auto& r : c.evaluated) best = std::max(best, r.density);
  for (const auto& r : c.evaluated) {
    if (r.density >= best - 1e-6) c.optima.push_back(r);
  }
  return c;
}

/// Apply a Lorentz transformation to the whole configuration.
inline PackingConfiguration transform(const PackingConfiguration& c, const Mat4& m) {
  std::vector<Vec4> verts;
  for (int v = 0; v < c.cell.size(); ++v) verts.push_back(m * c.cell.vertex(v));
  const Vec4 center = m * c.cell.center;
  Cell cell = make_cell(c.cell.schlafli, verts, center, c.cell.reference);
  std::vector<Horoball> balls;
  for (const auto& b : c.balls) {
    const Vec4 w = m * b.vector();
    balls.emplace_back(ProjectivePoint(w), w[0]);
  }
  return make_configuration(cell, std::move(balls), c.label);
}

}  // namespace horopack
