// horopack: optimal horoball packings of the fully asymptotic Coxeter
// tilings from the command line.
//
// exit codes: 0 every check passed, 1 a value missed its tolerance (or the
// computation failed), 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "horopack/horopack.hpp"

using namespace horopack;
using nlohmann::json;

namespace {

struct Options {
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::uint64_t samples = 10'000'000;
  std::string format = "csv";
  std::string out;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// writes to --out or stdout; a manifest goes next to any file written
class Sink {
 public:
  explicit Sink(const Options& o) : path_(o.out) {}
  std::ostream& stream() { return buf_; }
  void flush() {
    if (path_.empty()) {
      std::cout << buf_.str();
      return;
    }
    std::ofstream f(path_, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path_);
    f << buf_.str();
  }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ostringstream buf_;
};

void write_manifest(const Options& o, const std::string& command_line, double wall) {
  if (o.out.empty()) return;
  json m;
  m["schema_version"] = kSchemaVersion;
  m["command"] = command_line;
  m["seed"] = o.seed;
  m["samples"] = o.samples;
  m["tol"] = o.tol ? json(*o.tol) : json(nullptr);
  m["version"] = kVersion;
  m["wall_time_s"] = wall;
  m["output"] = o.out;
  std::ofstream f(o.out + ".manifest.json");
  f << m.dump(2) << '\n';
}

std::string join(const std::vector<std::string>& v, const char* sep) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : sep) + x;
  return s;
}

int cmd_table2(const Options& o) {
  Sink sink(o);
  json doc{{"schema_version", kSchemaVersion}, {"rows", json::array()}};
  if (o.format == "csv") sink.stream() << csv_line({"tiling", "optima", "density", "target", "abs_error", "pass", "bf"});
  bool ok = true;
  const double bf = bf_constant();
  for (const auto& t : reference::optima()) {
    const auto cert = certify_optimum(t.tiling);
    std::vector<std::string> labels;
    for (const auto& r : cert.optima) labels.push_back(r.config.label);
    const double d = cert.optima.front().density;
    const double tol = o.tol.value_or(t.tol);
    const bool pass = std::abs(d - t.density) <= tol;
    const bool star = std::abs(d - bf) <= 1e-6;
    ok = ok && pass;
    std::cerr << t.tiling.str() << "  " << fmt(d) << (star ? "*" : " ") << "  " << join(labels, "/")
              << "  target " << t.density << (pass ? "  ok" : "  MISS") << '\n';
    if (cert.family_max > d + 1e-6) {
      std::cerr << "  family grid exceeds catalog: " << fmt(cert.family_max) << " at " << cert.family_argmax << '\n';
    }
    if (o.format == "csv") {
      sink.stream() << csv_line({t.tiling.tag(), join(labels, "/"), fmt(d), fmt(t.density),
                                 fmt(std::abs(d - t.density)), pass ? "1" : "0", star ? "1" : "0"});
    } else {
      doc["rows"].push_back({{"tiling", t.tiling.str()},
                             {"optima", labels},
                             {"density", d},
                             {"target", t.density},
                             {"abs_error", std::abs(d - t.density)},
                             {"pass", pass},
                             {"bf", star}});
    }
  }
  if (o.format == "json") sink.stream() << doc.dump(2) << '\n';
  sink.flush();
  return ok ? 0 : 1;
}

int cmd_sweep(const Options& o, const std::string& tiling, std::string fam, std::optional<double> lo,
              std::optional<double> hi, int steps) {
  const auto t = SchlafliSymbol::parse(tiling);
  require_fully_asymptotic(t);
  if (fam.empty()) fam = families(t).front().name;
  const Family f = family(t, fam);
  const double a = lo.value_or(f.s_lo), b = hi.value_or(f.s_hi);
  if (steps < 1) throw UsageError("sweep: --steps must be >= 1");
  if (a > b) throw UsageError("sweep: --s-lo must not exceed --s-hi");
  if (!f.contains(a) || !f.contains(b)) {
    throw UsageError("sweep: family " + f.name + " is defined for s in [" + fmt(f.s_lo) + ", " +
                     fmt(f.s_hi) + "]");
  }
  const auto rows = sweep(t, f, linspace(a, b, steps));
  Sink sink(o);
  if (o.format == "csv") {
    write_sweep_csv(sink.stream(), rows);
  } else {
    sink.stream() << sweep_json(t, f.name, rows).dump(2) << '\n';
  }
  sink.flush();
  double best = 0.0;
  for (const auto& r : rows) {
    if (r.valid) best = std::max(best, r.report.density);
  }
  std::cerr << t.str() << " family " << f.name << ": " << rows.size() << " rows, max valid density "
            << fmt(best) << '\n';
  return 0;
}

int cmd_volumes(const Options& o) {
  const double tol = o.tol.value_or(1e-4);
  Sink sink(o);
  json doc{{"schema_version", kSchemaVersion}, {"seed", o.seed}, {"samples", o.samples}, {"rows", json::array()}};
  if (o.format == "csv") {
    sink.stream() << csv_line({"kind", "symbol", "pieces", "closed_form", "quoted", "rel_error", "monte_carlo",
                               "std_error", "z", "pass"});
  }
  bool ok = true;
  for (const auto& vt : reference::cell_volumes()) {
    const Cell& c = standard_cell(vt.tiling);
    const Orthoscheme orth = build_orthoscheme(c.decomposition.orthoscheme);
    struct Item {
      std::string kind;
      SchlafliSymbol sym;
      int pieces;
      double closed;
      std::optional<double> quoted;
      std::vector<Vec3> pts;
    };
    std::vector<Vec3> cell_pts, orth_pts;
    for (const auto& v : c.vertices) cell_pts.push_back(v.klein());
    for (const auto& v : orth.vertices) orth_pts.push_back(v.klein());
    const Item items[] = {
        {"cell", vt.tiling, c.decomposition.pieces, c.volume.value, vt.cell_volume, cell_pts},
        {"orthoscheme", orth.schlafli, 1, orth.volume.value, std::nullopt, orth_pts}};
    for (const auto& it : items) {
      const auto mc = monte_carlo_volume(it.pts, o.samples, o.seed);
      const double z = (mc.value - it.closed) / mc.std_error;
      const double rel = it.quoted ? std::abs(it.closed - *it.quoted) / *it.quoted : 0.0;
      const bool pass = std::abs(z) <= 3.0 && rel <= tol;
      ok = ok && pass;
      std::cerr << it.kind << ' ' << it.sym.str() << "  closed " << fmt(it.closed) << "  mc " << fmt(mc.value)
                << " +- " << fmt(mc.std_error);
      if (it.quoted) std::cerr << "  quoted " << *it.quoted << "  rel " << rel;
      std::cerr << (pass ? "  ok" : "  MISS") << '\n';
      if (o.format == "csv") {
        sink.stream() << csv_line({it.kind, it.sym.tag(), std::to_string(it.pieces), fmt(it.closed),
                                   it.quoted ? fmt(*it.quoted) : "", fmt(rel), fmt(mc.value), fmt(mc.std_error),
                                   fmt(z), pass ? "1" : "0"});
      } else {
        doc["rows"].push_back({{"kind", it.kind},
                               {"symbol", it.sym.str()},
                               {"pieces", it.pieces},
                               {"closed_form", it.closed},
                               {"quoted", it.quoted ? json(*it.quoted) : json(nullptr)},
                               {"rel_error", rel},
                               {"monte_carlo", mc.value},
                               {"std_error", mc.std_error},
                               {"z", z},
                               {"pass", pass}});
      }
    }
  }
  if (o.format == "json") sink.stream() << doc.dump(2) << '\n';
  sink.flush();
  return ok ? 0 : 1;
}

int cmd_scene(const Options& o, const std::string& tiling, const std::string& label, int phi, int theta) {
  const auto t = SchlafliSymbol::parse(tiling);
  require_fully_asymptotic(t);
  std::vector<std::string> known;
  for (const auto& e : catalog_entries(t)) known.push_back(e.label);
  if (label.empty()) throw UsageError("scene: --config is required; catalog for " + t.str() + ": " + join(known, ", "));
  if (o.out.empty()) throw UsageError("scene: --out is required");
  const auto cfg = catalog_configuration(t, label);
  Sink sink(o);
  write_obj_scene(sink.stream(), cfg, phi, theta);
  sink.flush();
  std::cerr << "wrote " << o.out << " (" << cfg.balls.size() << " horoballs)\n";
  return 0;
}

int cmd_bf(const Options& o) {
  const double tol = o.tol.value_or(1e-7);
  const auto bf = bf_series();
  const double d = density(catalog_configuration({3, 3, 6}, "B1")).density;
  const bool pass_value = std::abs(bf.value - reference::kBfQuoted) <= tol;
  const bool pass_density = std::abs(bf.value - d) <= 1e-6;
  const bool bound_ok = bf.truncation_bound < 1e-10;
  Sink sink(o);
  if (o.format == "csv") {
    sink.stream() << csv_line({"value", "series", "truncation_bound", "blocks", "density_336_B1", "abs_diff", "pass"});
    sink.stream() << csv_line({fmt(bf.value), fmt(bf.series), fmt(bf.truncation_bound), std::to_string(bf.blocks),
                               fmt(d), fmt(std::abs(bf.value - d)),
                               pass_value && pass_density && bound_ok ? "1" : "0"});
  } else {
    json j{{"schema_version", kSchemaVersion},
           {"value", bf.value},
           {"series", bf.series},
           {"truncation_bound", bf.truncation_bound},
           {"blocks", bf.blocks},
           {"density_336_B1", d},
           {"abs_diff", std::abs(bf.value - d)},
           {"pass", pass_value && pass_density && bound_ok}};
    sink.stream() << j.dump(2) << '\n';
  }
  sink.flush();
  std::cerr << "bf " << fmt(bf.value) << " (bound " << bf.truncation_bound << "), density(336,B1) " << fmt(d)
            << '\n';
  return pass_value && pass_density && bound_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Horoball packings of the fully asymptotic Coxeter tilings"};
  app.fallthrough();
  app.require_subcommand(1);
  Options o;
  app.add_option("--tol", o.tol, "tolerance override for the checks");
  app.add_option("--seed", o.seed, "Monte Carlo seed")->capture_default_str();
  app.add_option("--samples", o.samples, "Monte Carlo samples")->capture_default_str();
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  app.add_option("--out", o.out, "output file (stdout if omitted)");

  auto* table2 = app.add_subcommand("table2", "optimal densities of the four tilings");
  auto* sweep_cmd = app.add_subcommand("sweep", "density along a one-parameter family");
  std::string tiling, fam, label;
  std::optional<double> s_lo, s_hi;
  int steps = 51, phi = 64, theta = 32;
  sweep_cmd->add_option("--tiling", tiling, "336, 344, 436 or 536")->required();
  sweep_cmd->add_option("--family", fam, "family name (default: first)");
  sweep_cmd->add_option("--s-lo", s_lo, "lower end of the s range");
  sweep_cmd->add_option("--s-hi", s_hi, "upper end of the s range");
  sweep_cmd->add_option("--steps", steps, "grid points")->capture_default_str();
  auto* volumes = app.add_subcommand("volumes", "closed-form and Monte Carlo volumes");
  auto* scene = app.add_subcommand("scene", "OBJ scene of a cataloged configuration");
  scene->add_option("--tiling", tiling, "336, 344, 436 or 536")->required();
  scene->add_option("--config", label, "configuration label, e.g. B2");
  scene->add_option("--phi-steps", phi, "tessellation steps in phi")->capture_default_str();
  scene->add_option("--theta-steps", theta, "tessellation steps in theta")->capture_default_str();
  auto* bf = app.add_subcommand("bf", "Boroczky-Florian constant");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::string command_line;
  for (int i = 0; i < argc; ++i) command_line += (i ? " " : "") + std::string(argv[i]);
  const auto t0 = std::chrono::steady_clock::now();
  int rc = 1;
  try {
    if (*table2) rc = cmd_table2(o);
    else if (*sweep_cmd) rc = cmd_sweep(o, tiling, fam, s_lo, s_hi, steps);
    else if (*volumes) rc = cmd_volumes(o);
    else if (*scene) rc = cmd_scene(o, tiling, label, phi, theta);
    else if (*bf) rc = cmd_bf(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const InvalidInput& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const UnsupportedSymbol& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_manifest(o, command_line, wall);
  return rc;
}
