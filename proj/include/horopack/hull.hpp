#pragma once

// Supporting planes of a small convex point set in the Klein chart.  The
// cells here have at most 20 vertices, so trying every triple is cheap and
// avoids a general hull algorithm.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <vector>

#include "horopack/errors.hpp"
#include "horopack/lorentz.hpp"

namespace horopack {

/// Affine plane n.x = r with |n| = 1 and the hull on the side n.x <= r.
struct HullPlane {
  Vec3 n;
  double r;
  std::vector<int> vertices;  // indices of points on the plane, unordered
};

inline bool is_degenerate(const std::vector<Vec3>& pts, double tol = 1e-12) {
  if (pts.size() < 4) return true;
  Vec3 c = Vec3::Zero();
  for (const auto& p : pts) c += p;
  c /= static_cast<double>(pts.size());
  Eigen::MatrixXd m(pts.size(), 3);
  for (size_t i = 0; i < pts.size(); ++i) m.row(i) = (pts[i] - c).transpose();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto sv = svd.singularValues();
  return sv[2] <= tol * std::max(1.0, sv[0]);
}

inline std::vector<HullPlane> supporting_planes(const std::vector<Vec3>& pts, double tol = 1e-9) {
  if (is_degenerate(pts)) throw InvalidInput("supporting_planes: degenerate point set");
  const int n = static_cast<int>(pts.size());
  std::vector<HullPlane> out;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Vec3 nrm = (pts[j] - pts[i]).cross(pts[k] - pts[i]);
        if (nrm.norm() < 1e-12) continue;
        nrm.normalize();
        double r = nrm.dot(pts[i]);
        // keep only planes with every point on one side; flip so that side is n.x <= r
        bool pos = true, neg = true;
        for (int m = 0; m < n; ++m) {
          const double d = nrm.dot(pts[m]) - r;
          if (d > tol) pos = false;
          if (d < -tol) neg = false;
        }
        if (!pos && !neg) continue;
        if (!pos) {
          nrm = -nrm;
          r = -r;
        }
        const bool seen = std::any_of(out.begin(), out.end(), [&](const HullPlane& h) {
          return (h.n - nrm).norm() < 1e-9 && std::abs(h.r - r) < 1e-9;
        });
        if (seen) continue;
        HullPlane h{nrm, r, {}};
        for (int m = 0; m < n; ++m) {
          if (std::abs(nrm.dot(pts[m]) - r) <= tol) h.vertices.push_back(m);
        }
        out.push_back(std::move(h));
      }
    }
  }
  return out;
}

inline bool inside_hull(const std::vector<HullPlane>& planes, const Vec3& x) {
  for (const auto& h : planes) {
    if (h.n.dot(x) > h.r) return false;
  }
  return true;
}

}  // namespace horopack
