#pragma once

// Text outputs: CSV rows, JSON documents and OBJ scenes.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "horopack/horoball.hpp"
#include "horopack/packing.hpp"

namespace horopack {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersion = "1.0.0";

/// 15 significant digits, the CSV convention.
inline std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

inline std::string csv_line(const std::vector<std::string>& cells) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += cells[i];
  }
  return out + '\n';
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  if (rows.empty()) return;
  std::vector<std::string> head{"s", "x", "density", "valid"};
  for (size_t v = 0; v < rows.front().report.sector_volumes.size(); ++v) {
    head.push_back("V" + std::to_string(v));
  }
  os << csv_line(head);
  for (const auto& r : rows) {
    std::vector<std::string> cells{fmt(r.s), fmt(r.x), fmt(r.report.density), r.valid ? "1" : "0"};
    for (double v : r.report.sector_volumes) cells.push_back(fmt(v));
    os << csv_line(cells);
  }
}

inline nlohmann::json to_json(const DensityReport& r) {
  nlohmann::json j;
  j["label"] = r.config.label;
  j["tiling"] = r.config.tiling.str();
  j["density"] = r.density;
  j["cell_volume"] = r.cell_volume;
  j["sector_volumes"] = r.sector_volumes;
  j["types"] = r.config.types();
  nlohmann::json t = nlohmann::json::array();
  for (const auto& tg : r.config.tangencies) t.push_back({tg.i, tg.j});
  j["tangent_pairs"] = t;
  return j;
}

inline nlohmann::json sweep_json(const SchlafliSymbol& t, const std::string& family,
                                 const std::vector<SweepRow>& rows) {
  nlohmann::json j;
  j["schema_version"] = kSchemaVersion;
  j["tiling"] = t.str();
  j["family"] = family;
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    j["rows"].push_back({{"s", r.s},
                         {"x", r.x},
                         {"density", r.report.density},
                         {"valid", r.valid},
                         {"violation", r.violation},
                         {"sector_volumes", r.report.sector_volumes}});
  }
  return j;
}

/// Grid of horosphere points, row-major in theta (0..pi) then phi.
inline std::vector<Vec3> tessellate(const Horoball& h, int phi_steps, int theta_steps) {
  std::vector<Vec3> pts;
  for (int i = 0; i <= theta_steps; ++i) {
    const double th = std::numbers::pi * i / theta_steps;
    for (int k = 0; k < phi_steps; ++k) {
      const double ph = 2.0 * std::numbers::pi * k / phi_steps;
      pts.push_back(polar_point(h, th, ph).klein());
    }
  }
  return pts;
}

namespace detail {

inline void obj_grid(std::ostream& os, const std::vector<Vec3>& pts, int phi_steps, int theta_steps,
                     long& base) {
  char buf[128];
  for (const auto& p : pts) {
    std::snprintf(buf, sizeof buf, "v %.9f %.9f %.9f\n", p.x(), p.y(), p.z());
    os << buf;
  }
  for (int i = 0; i < theta_steps; ++i) {
    for (int k = 0; k < phi_steps; ++k) {
      const long a = base + i * phi_steps + k;
      const long b = base + i * phi_steps + (k + 1) % phi_steps;
      const long c = base + (i + 1) * phi_steps + (k + 1) % phi_steps;
      const long d = base + (i + 1) * phi_steps + k;
      os << "f " << a << ' ' << b << ' ' << c << ' ' << d << '\n';
    }
  }
  base += static_cast<long>(pts.size());
}

}  // namespace detail

/// Wavefront OBJ: the absolute, the cell edges as polylines and one object
/// per horoball.
inline void write_obj_scene(std::ostream& os, const PackingConfiguration& c, int phi_steps = 64,
                            int theta_steps = 32) {
  if (phi_steps < 3 || theta_steps < 2) throw InvalidInput("scene: grid too coarse");
  os << "# tiling " << c.tiling.str() << " configuration " << c.label << '\n';
  long base = 1;
  os << "o absolute\n";
  std::vector<Vec3> sphere;
  for (int i = 0; i <= theta_steps; ++i) {
    const double th = std::numbers::pi * i / theta_steps;
    for (int k = 0; k < phi_steps; ++k) {
      const double ph = 2.0 * std::numbers::pi * k / phi_steps;
      sphere.emplace_back(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
    }
  }
  detail::obj_grid(os, sphere, phi_steps, theta_steps, base);

  os << "o cell_edges\n";
  char buf[128];
  for (int v = 0; v < c.cell.size(); ++v) {
    const Vec3 p = c.cell.vertices[v].klein();
    std::snprintf(buf, sizeof buf, "v %.9f %.9f %.9f\n", p.x(), p.y(), p.z());
    os << buf;
  }
  for (const auto& [a, b] : c.cell.edges) os << "l " << base + a << ' ' << base + b << '\n';
  base += c.cell.size();

  for (int v = 0; v < c.cell.size(); ++v) {
    os << "o horoball_" << v << '\n';
    detail::obj_grid(os, tessellate(c.balls[v], phi_steps, theta_steps), phi_steps, theta_steps, base);
  }
}

}  // namespace horopack
