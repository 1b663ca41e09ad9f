#pragma once

// Ideal cells of the four fully asymptotic tilings and their characteristic
// orthoschemes, in the Klein chart.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "horopack/coxeter.hpp"
#include "horopack/errors.hpp"
#include "horopack/hull.hpp"
#include "horopack/lorentz.hpp"
#include "horopack/volume.hpp"

namespace horopack {

struct Orthoscheme {
  SchlafliSymbol schlafli;
  std::array<ProjectivePoint, 4> vertices;
  std::array<Hyperplane, 4> faces;  // faces[i] is opposite vertices[i], inward normal
  CoxeterMatrix matrix;
  VolumeResult volume;
};

struct Face {
  std::vector<int> vertices;  // cyclic order
  Hyperplane plane;           // inward unit normal: <x, b> >= 0 inside the cell
};

struct Cell {
  SchlafliSymbol schlafli;
  std::vector<ProjectivePoint> vertices;  // all on the absolute, x0 = 1
  std::vector<std::pair<int, int>> edges;
  std::vector<Face> faces;
  Vec4 center;          // fixed point of the cell symmetries, x0 = 1
  int reference = 3;    // vertex playing the role of (1,0,0,1)
  CellDecomposition decomposition{};
  VolumeResult volume;

  int size() const { return static_cast<int>(vertices.size()); }
  const Vec4& vertex(int i) const { return vertices.at(i).coords(); }

  bool adjacent(int i, int j) const {
    for (const auto& [a, b] : edges) {
      if ((a == i && b == j) || (a == j && b == i)) return true;
    }
    return false;
  }

  bool on_face(int f, int v) const {
    const auto& fv = faces.at(f).vertices;
    return std::find(fv.begin(), fv.end(), v) != fv.end();
  }

  /// Faces that do not contain vertex v.
  std::vector<int> far_faces(int v) const {
    std::vector<int> out;
    for (int f = 0; f < static_cast<int>(faces.size()); ++f) {
      if (!on_face(f, v)) out.push_back(f);
    }
    return out;
  }

  /// Neighbours of v in cyclic order around v.
  std::vector<int> neighbors(int v) const {
    std::vector<int> nb;
    for (const auto& [a, b] : edges) {
      if (a == v) nb.push_back(b);
      if (b == v) nb.push_back(a);
    }
    const Vec3 apex = vertices[v].klein();
    const Vec3 axis = (apex - center.tail<3>()).normalized();
    auto proj = [&](int j) {
      Vec3 d = vertices[j].klein() - apex;
      return Vec3(d - axis * axis.dot(d));
    };
    const Vec3 e1 = proj(nb.front()).normalized();
    const Vec3 e2 = axis.cross(e1);
    std::sort(nb.begin(), nb.end(), [&](int a, int b) {
      const Vec3 pa = proj(a), pb = proj(b);
      return std::atan2(pa.dot(e2), pa.dot(e1)) < std::atan2(pb.dot(e2), pb.dot(e1));
    });
    return nb;
  }

  /// Ratio turning a canonical type at the reference vertex into the same
  /// type at vertex v: the isometry fixing the center and moving the
  /// reference vertex to v rescales x0 = 1 representatives by this factor.
  double type_scale(int v) const {
    return bilinear_form(center, vertex(reference)) / bilinear_form(center, vertex(v));
  }
};

/// Builds edges and faces from an ideal vertex set.
inline Cell make_cell(const SchlafliSymbol& s, std::vector<Vec4> verts, const Vec4& center,
                      int reference = 3) {
  Cell c;
  c.schlafli = s;
  c.reference = reference;
  c.center = center / center[0];
  std::vector<Vec3> pts;
  for (auto& v : verts) {
    ProjectivePoint p(v);
    if (classify(p) != PointClass::Absolute) {
      throw InvalidConfiguration("make_cell: vertex is not on the absolute");
    }
    c.vertices.push_back(p);
    pts.push_back(p.klein());
  }
  const auto planes = supporting_planes(pts);
  for (const auto& h : planes) {
    // cyclic order of the face around its centroid
    std::vector<int> fv = h.vertices;
    Vec3 m = Vec3::Zero();
    for (int i : fv) m += pts[i];
    m /= static_cast<double>(fv.size());
    const Vec3 e1 = (pts[fv.front()] - m).normalized();
    const Vec3 e2 = h.n.cross(e1);
    std::sort(fv.begin(), fv.end(), [&](int a, int b) {
      const Vec3 da = pts[a] - m, db = pts[b] - m;
      return std::atan2(da.dot(e2), da.dot(e1)) < std::atan2(db.dot(e2), db.dot(e1));
    });
    // n.x <= r inside, so b = -(r, n) gives <(1,x), b> = r - n.x >= 0
    c.faces.push_back({fv, Hyperplane(Vec4(-h.r, -h.n.x(), -h.n.y(), -h.n.z()))});
  }
  const int n = c.size();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int shared = 0;
      for (const auto& f : c.faces) {
        const bool a = std::find(f.vertices.begin(), f.vertices.end(), i) != f.vertices.end();
        const bool b = std::find(f.vertices.begin(), f.vertices.end(), j) != f.vertices.end();
        if (!a || !b) continue;
        // both on the face and consecutive in its cycle
        const int k = static_cast<int>(f.vertices.size());
        for (int t = 0; t < k; ++t) {
          const int u = f.vertices[t], w = f.vertices[(t + 1) % k];
          if ((u == i && w == j) || (u == j && w == i)) {
            ++shared;
            break;
          }
        }
      }
      if (shared >= 2) c.edges.emplace_back(i, j);
    }
  }
  if (classify_tiling(s) == TilingClass::FullyAsymptotic) {
    c.decomposition = cell_decomposition(s);
    c.volume = tiling_cell_volume(s);
  }
  return c;
}

namespace detail {

inline Vec4 ideal(const Vec3& u) {
  const Vec3 d = u.normalized();
  return Vec4(1.0, d.x(), d.y(), d.z());
}

inline Mat3 rot_z(double a) {
  return Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix();
}

/// Orthonormal frame whose first two axes are a and the part of b
/// orthogonal to a.
inline Mat3 frame(const Vec3& a, const Vec3& b) {
  const Vec3 x = a.normalized();
  const Vec3 y = (b - x * x.dot(b)).normalized();
  Mat3 m;
  m.col(0) = x;
  m.col(1) = y;
  m.col(2) = x.cross(y);
  return m;
}

inline std::vector<Vec3> cube_directions() {
  const double r23 = std::sqrt(2.0 / 3.0), r2 = std::sqrt(2.0);
  const Vec3 e0(-r23, r2 / 3.0, 1.0 / 3.0);
  const Vec3 e3(0, 0, 1);
  // E0..E4 as printed; E5, E6 by the 3-fold turn about the E3 axis; E7
  // antipodal to E3
  return {e0,
          Vec3(-r23, -r2 / 3.0, -1.0 / 3.0),
          Vec3(0, 2.0 * r2 / 3.0, -1.0 / 3.0),
          e3,
          Vec3(r23, -r2 / 3.0, -1.0 / 3.0),
          rot_z(2 * std::numbers::pi / 3) * e0,
          rot_z(4 * std::numbers::pi / 3) * e0,
          -e3};
}

}  // namespace detail

inline Cell build_cell(const SchlafliSymbol& s) {
  require_fully_asymptotic(s);
  using detail::ideal;
  const double r3 = std::sqrt(3.0);
  std::vector<Vec4> v;
  Vec4 center(1, 0, 0, 0);
  if (s == SchlafliSymbol{3, 3, 6}) {
    v = {ideal({0, 1, 0}), ideal({r3 / 2, -0.5, 0}), ideal({-r3 / 2, -0.5, 0}), ideal({0, 0, 1})};
    center = Vec4(1, 0, 0, 1.0 / 3.0);
  } else if (s == SchlafliSymbol{3, 4, 4}) {
    v = {ideal({0, 1, 0}), ideal({1, 0, 0}),  ideal({0, -1, 0}),
         ideal({0, 0, 1}), ideal({-1, 0, 0}), ideal({0, 0, -1})};
  } else if (s == SchlafliSymbol{4, 3, 6}) {
    for (const auto& d : detail::cube_directions()) v.push_back(ideal(d));
  } else {
    // the 8 cube vertices followed by the 12 golden-ratio vertices, moved
    // into the cube's frame
    const auto cube = detail::cube_directions();
    for (const auto& d : cube) v.push_back(ideal(d));
    const double phi = std::numbers::phi;
    const Mat3 R = detail::frame(cube[3], cube[0]) *
                   detail::frame(Vec3(1, 1, 1), Vec3(1, 1, -1)).transpose();
    for (double a : {-1.0, 1.0}) {
      for (double b : {-1.0, 1.0}) {
        for (const Vec3& u : {Vec3(0, a / phi, b * phi), Vec3(a / phi, b * phi, 0),
                              Vec3(b * phi, 0, a / phi)}) {
          v.push_back(ideal(R * u));
        }
      }
    }
    // the standard cube must land on the printed one
    for (double x : {-1.0, 1.0}) {
      for (double y : {-1.0, 1.0}) {
        for (double z : {-1.0, 1.0}) {
          const Vec3 img = (R * Vec3(x, y, z)).normalized();
          const bool hit = std::any_of(cube.begin(), cube.end(),
                                       [&](const Vec3& c) { return (c - img).norm() < 1e-12; });
          if (!hit) throw InvalidConfiguration("build_cell: dodecahedron frame mismatch");
        }
      }
    }
  }
  Cell c = make_cell(s, v, center);
  static const std::array<std::array<int, 3>, 4> counts = {
      {{4, 6, 4}, {6, 12, 8}, {8, 12, 6}, {20, 30, 12}}};
  const int idx = s.p == 3 ? (s.q == 3 ? 0 : 1) : (s.p == 4 ? 2 : 3);
  if (c.size() != counts[idx][0] || static_cast<int>(c.edges.size()) != counts[idx][1] ||
      static_cast<int>(c.faces.size()) != counts[idx][2]) {
    throw InvalidConfiguration("build_cell: wrong combinatorics for " + s.str());
  }
  return c;
}

inline VolumeResult cell_volume(const Cell& c) { return c.volume; }

/// Orthoscheme with faces[i] opposite vertices[i].
inline Orthoscheme make_orthoscheme(const SchlafliSymbol& s, const std::array<Vec4, 4>& a) {
  Vec4 g = Vec4::Zero();
  for (const auto& x : a) g += x / x[0];
  g /= 4.0;
  auto face = [&](int i) {
    std::array<Vec4, 3> o;
    for (int k = 0, t = 0; k < 4; ++k) {
      if (k != i) o[t++] = a[k];
    }
    return Hyperplane::through(o[0], o[1], o[2], g);
  };
  return {s,
          {ProjectivePoint(a[0]), ProjectivePoint(a[1]), ProjectivePoint(a[2]),
           ProjectivePoint(a[3])},
          {face(0), face(1), face(2), face(3)},
          coxeter_matrix(s),
          orthoscheme_volume(s)};
}

inline Orthoscheme build_orthoscheme(const SchlafliSymbol& s) {
  if (s == SchlafliSymbol{3, 6, 3}) {
    return make_orthoscheme(
        s, {Vec4(1, 0, 1, 0), Vec4(1, std::sqrt(3.0) / 4, 0.25, 0), Vec4(1, 0, 0, 0),
            Vec4(1, 0, 0, 1)});
  }
  if (s == SchlafliSymbol{4, 4, 4}) {
    return make_orthoscheme(s, {Vec4(1, 0, 1, 0), Vec4(1, 0.5, 0.5, 0), Vec4(1, 0, 0, 0),
                                Vec4(1, 0, 0, 1)});
  }
  if (s == SchlafliSymbol{4, 3, 6} || s == SchlafliSymbol{5, 3, 6}) {
    // vertex, foot on an edge, foot on a face through that edge, center
    const Cell c = build_cell(s);
    const int v = c.reference;
    const int w = c.neighbors(v).front();
    int f = -1;
    for (int k = 0; k < static_cast<int>(c.faces.size()); ++k) {
      if (c.on_face(k, v) && c.on_face(k, w)) {
        f = k;
        break;
      }
    }
    const ProjectivePoint T(c.center);
    const Vec4 a1 = foot_on_line(T, c.vertices[v], c.vertices[w]).coords();
    const Vec4& b = c.faces[f].plane.normal();
    const Vec4 a2 = c.center - bilinear_form(c.center, b) * b;
    return make_orthoscheme(s, {c.vertex(v), a1, a2 / a2[0], c.center});
  }
  throw UnsupportedSymbol("build_orthoscheme: " + s.str());
}

}  // namespace horopack
