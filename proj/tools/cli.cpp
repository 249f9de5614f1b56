#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "broadwell/bounds.hpp"
#include "broadwell/data_spec.hpp"
#include "broadwell/errors.hpp"
#include "broadwell/expression.hpp"
#include "broadwell/oracle.hpp"
#include "broadwell/parallel.hpp"
#include "broadwell/reports.hpp"

namespace broadwell::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || item.key() == a;
    if (!ok) throw ConfigError(where + ": unknown key '" + item.key() + "'");
  }
}

const json& section(const json& doc, const char* key) {
  static const json empty = json::object();
  return doc.contains(key) ? doc.at(key) : empty;
}

// Numbers may also be written as constant expressions such as "pi/4".
double number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
  const json& v = obj.at(key);
  double out;
  if (v.is_number()) {
    out = v.get<double>();
  } else if (v.is_string()) {
    out = Expression::parse(v.get<std::string>(), {}).evaluate({});
  } else {
    throw ConfigError(where + "." + key + ": expected a number");
  }
  if (!std::isfinite(out)) throw ConfigError(where + "." + key + ": must be finite");
  return out;
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

int integer(const json& obj, const char* key, int fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

bool boolean(const json& obj, const char* key, bool fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_boolean()) throw ConfigError(where + "." + key + ": expected true/false");
  return obj.at(key).get<bool>();
}

std::string text(const json& obj, const char* key, const std::string& fallback,
                 const std::string& where) {
  if (!obj.contains(key)) return fallback;
  if (!obj.at(key).is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return obj.at(key).get<std::string>();
}

GridSpec parse_grid(const json& g, const SpaceTimeBox& box, const std::string& where) {
  reject_unknown(g, {"nt", "nx", "ny"}, where);
  const int nt = integer(g, "nt", 0, where), nx = integer(g, "nx", 0, where),
            ny = integer(g, "ny", 0, where);
  if (nt < 2 || nx < 2 || ny < 2) throw ConfigError(where + ": nt, nx, ny must all be >= 2");
  return GridSpec(box, nt, nx, ny);
}

template <class F>
auto wrap(const std::string& where, F&& f) {
  try {
    return f();
  } catch (const UsageError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

}  // namespace

RunConfig parse_run_config(const json& doc, const std::filesystem::path& base_dir) {
  reject_unknown(doc, {"schema_version", "model", "box", "grid", "quadrature", "solve", "certify",
                       "compat", "verify", "data", "data_file"},
                 "config");
  if (!doc.contains("schema_version") || !doc.at("schema_version").is_number_integer() ||
      doc.at("schema_version").get<int>() != kSchemaVersion) {
    throw ConfigError("config: schema_version must be " + std::to_string(kSchemaVersion));
  }

  const json& m = section(doc, "model");
  reject_unknown(m, {"c", "S", "theta"}, "model");
  const ModelParams params = wrap("model", [&] {
    return ModelParams(number(m, "c", "model"), number(m, "S", "model"),
                       number(m, "theta", "model"));
  });

  const json& b = section(doc, "box");
  reject_unknown(b, {"a1", "b1", "a2", "b2", "T"}, "box");
  const SpaceTimeBox box = wrap("box", [&] {
    return SpaceTimeBox(number(b, "a1", "box"), number(b, "b1", "box"), number(b, "a2", "box"),
                        number(b, "b2", "box"), number(b, "T", "box"));
  });

  const GridSpec grid = parse_grid(section(doc, "grid"), box, "grid");

  SolveConfig sc;
  const json& q = section(doc, "quadrature");
  reject_unknown(q, {"max_step"}, "quadrature");
  if (q.contains("max_step")) {
    const double step = number(q, "max_step", "quadrature");
    if (!(step > 0.0)) throw ConfigError("quadrature.max_step: must be positive");
    sc.quad = QuadratureSpec{step};
  }

  const json& s = section(doc, "solve");
  reject_unknown(s, {"tol", "max_iter", "mode", "sigma", "unsafe_sigma", "positivity_tol",
                     "initial_guess"},
                 "solve");
  sc.tol = number_or(s, "tol", sc.tol, "solve");
  if (!(sc.tol > 0.0)) throw ConfigError("solve.tol: must be positive");
  sc.max_iter = integer(s, "max_iter", sc.max_iter, "solve");
  if (sc.max_iter < 1) throw ConfigError("solve.max_iter: must be >= 1");
  const std::string mode = text(s, "mode", "plain", "solve");
  if (mode == "plain") {
    sc.mode = SolveMode::Plain;
  } else if (mode == "sigma") {
    sc.mode = SolveMode::Sigma;
  } else {
    throw ConfigError("solve.mode: expected 'plain' or 'sigma'");
  }
  sc.unsafe_sigma = boolean(s, "unsafe_sigma", false, "solve");
  if (s.contains("sigma")) {
    sc.sigma = number(s, "sigma", "solve");
    if (*sc.sigma < 0.0) throw ConfigError("solve.sigma: must be non-negative");
    if (!sc.unsafe_sigma && *sc.sigma < params.collision_rate()) {
      throw ConfigError("solve.sigma: below 2cS = " + format_double(params.collision_rate()) +
                        " (set unsafe_sigma to allow)");
    }
  }
  sc.positivity_tol = number_or(s, "positivity_tol", sc.positivity_tol, "solve");
  const std::string guess = text(s, "initial_guess", "free_streaming", "solve");
  if (guess == "free_streaming") {
    sc.guess = InitialGuess::FreeStreaming;
  } else if (guess == "boundary_only") {
    sc.guess = InitialGuess::BoundaryOnly;
  } else {
    throw ConfigError("solve.initial_guess: expected 'free_streaming' or 'boundary_only'");
  }

  const json& c = section(doc, "certify");
  reject_unknown(c, {"c1_samples"}, "certify");
  const int c1 = integer(c, "c1_samples", 256, "certify");
  if (c1 < 2) throw ConfigError("certify.c1_samples: must be >= 2");
  sc.c1_samples = c1;

  const json& cp = section(doc, "compat");
  reject_unknown(cp, {"samples", "tol"}, "compat");
  const int compat_samples = integer(cp, "samples", 257, "compat");
  const double compat_tol = number_or(cp, "tol", 1e-9, "compat");
  if (compat_samples < 2) throw ConfigError("compat.samples: must be >= 2");
  if (!(compat_tol > 0.0)) throw ConfigError("compat.tol: must be positive");

  VerifyConfig vc;
  const json& v = section(doc, "verify");
  reject_unknown(v, {"oracle", "oracle_grid", "levels", "threshold", "cfl"}, "verify");
  const std::string oracle = text(v, "oracle", "upwind", "verify");
  if (oracle == "upwind") {
    vc.oracle = OracleKind::Upwind;
  } else if (oracle == "picard") {
    vc.oracle = OracleKind::Picard;
  } else if (oracle == "free_streaming") {
    vc.oracle = OracleKind::FreeStreaming;
  } else {
    throw ConfigError("verify.oracle: expected 'upwind', 'picard' or 'free_streaming'");
  }
  if (v.contains("oracle_grid")) vc.oracle_grid = parse_grid(v.at("oracle_grid"), box, "verify.oracle_grid");
  if (v.contains("levels")) {
    const json& lv = v.at("levels");
    if (!lv.is_array()) throw ConfigError("verify.levels: expected an array of grid sizes");
    for (const auto& n : lv) {
      if (!n.is_number_integer() || n.get<int>() < 3) {
        throw ConfigError("verify.levels: entries must be integers >= 3");
      }
      vc.levels.push_back(n.get<int>());
    }
  }
  vc.threshold = number_or(v, "threshold", vc.threshold, "verify");
  if (!(vc.threshold >= 0.0)) throw ConfigError("verify.threshold: must be non-negative");
  vc.cfl = number_or(v, "cfl", vc.cfl, "verify");
  if (!(vc.cfl > 0.0 && vc.cfl <= 1.0)) throw ConfigError("verify.cfl: must lie in (0, 1]");

  json data_doc;
  std::filesystem::path data_dir = base_dir;
  if (doc.contains("data") == doc.contains("data_file")) {
    throw ConfigError("config: give exactly one of 'data' and 'data_file'");
  }
  if (doc.contains("data")) {
    data_doc = doc.at("data");
  } else {
    if (!doc.at("data_file").is_string()) throw ConfigError("data_file: expected a path");
    const std::filesystem::path p = base_dir / doc.at("data_file").get<std::string>();
    std::ifstream in(p);
    if (!in) throw ConfigError("data_file: cannot open " + p.string());
    try {
      data_doc = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError("data_file: " + std::string(e.what()));
    }
    data_dir = p.parent_path();
  }
  BoundaryData data =
      wrap("data", [&] { return parse_data_spec(data_doc, box, params, data_dir); });

  return RunConfig{params, box, grid, sc, c1, compat_samples, compat_tol, vc, std::move(data)};
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError("config " + path.string() + ": " + e.what());
  }
  return parse_run_config(doc, path.parent_path());
}

namespace {

struct Options {
  std::string config;
  std::string out = ".";
  bool force = false;
  unsigned threads = 0;
  std::vector<int> snapshots;
};

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

void print_compat_table(std::ostream& os, const CompatibilityReport& rep) {
  for (const auto& r : rep.residuals) {
    os << "  " << r.identity << "  residual " << format_double(r.residual)
       << (r.residual <= rep.tol ? "" : "  FAIL") << '\n';
  }
  os << "  min value " << format_double(rep.min_value) << " (" << rep.min_function << ")"
     << (rep.nonnegative() ? "" : "  FAIL") << '\n';
}

// Runs the compatibility check; returns false (after reporting) on failure.
bool compat_gate(const RunConfig& rc, const Options& opt, std::ostream& err, json* summary) {
  const CompatibilityReport rep = check_compatibility(rc.data, rc.compat_samples, rc.compat_tol);
  if (summary) (*summary)["compatibility"] = to_json(rep);
  if (rep.passed()) return true;
  err << "incompatible data (tol " << format_double(rep.tol) << "):\n";
  print_compat_table(err, rep);
  if (summary) write_json(std::filesystem::path(opt.out) / "summary.json", *summary);
  return false;
}

int cmd_certify(const RunConfig& rc, const Options& opt, std::ostream& out) {
  const BoundCertificate cert = certify(rc.params, rc.data, rc.c1_samples);
  write_json(std::filesystem::path(opt.out) / "certificate.json", to_json(cert));
  out << "p " << format_double(cert.p) << "  q " << format_double(cert.q) << "  pq "
      << format_double(cert.pq) << (cert.admissible ? "  admissible" : "  not admissible")
      << '\n';
  if (cert.admissible) {
    out << "window [" << format_double(cert.r_min) << ", " << format_double(cert.r_max) << "]\n";
  }
  return cert.admissible ? kOk : kInadmissible;
}

int cmd_compat(const RunConfig& rc, const Options& opt, std::ostream& out, std::ostream& err) {
  const CompatibilityReport rep = check_compatibility(rc.data, rc.compat_samples, rc.compat_tol);
  write_json(std::filesystem::path(opt.out) / "compat.json", to_json(rep));
  print_compat_table(rep.passed() ? out : err, rep);
  return rep.passed() ? kOk : kIncompatible;
}

SolveConfig solve_config(const RunConfig& rc, const Options& opt) {
  SolveConfig sc = rc.solve;
  sc.force = sc.force || opt.force;
  return sc;
}

int cmd_solve(const RunConfig& rc, const Options& opt, std::ostream& out, std::ostream& err) {
  const std::filesystem::path dir(opt.out);
  json summary;
  if (!compat_gate(rc, opt, err, &summary)) {
    summary["status"] = "incompatible";
    write_json(dir / "summary.json", summary);
    return kIncompatible;
  }
  const SolveConfig sc = solve_config(rc, opt);
  std::ofstream log(dir / "iterations.log");
  if (!log) throw Error("cannot write " + (dir / "iterations.log").string());
  auto on_iter = [&](const IterationRecord& r) {
    log << r.iteration << ' ' << format_double(r.residual) << ' ' << format_double(r.v) << ' '
        << format_double(r.min_value) << '\n';
  };

  std::optional<SolveResult> result;
  try {
    result.emplace(solve(rc.data, rc.params, rc.grid, sc, std::nullopt, on_iter));
  } catch (const GateError& e) {
    summary["status"] = "inadmissible";
    summary["certificate"] = to_json(e.certificate);
    write_json(dir / "summary.json", summary);
    err << e.what() << '\n';
    return kInadmissible;
  } catch (const ConvergenceError& e) {
    summary["status"] = "not_converged";
    summary["report"] = to_json(e.report);
    write_json(dir / "summary.json", summary);
    err << e.what() << '\n';
    return kNotConverged;
  }

  std::vector<int> snaps = opt.snapshots;
  if (snaps.empty()) snaps.push_back(rc.grid.nt() - 1);
  for (int k : snaps) {
    if (k < 0 || k >= rc.grid.nt()) {
      throw ConfigError("--snapshots: index " + std::to_string(k) + " outside [0, " +
                        std::to_string(rc.grid.nt() - 1) + "]");
    }
    std::ofstream f(dir / ("snapshot_" + std::to_string(k) + ".csv"));
    if (!f) throw Error("cannot write snapshot " + std::to_string(k));
    write_csv_slice(f, result->field, k);
  }
  summary["status"] = "converged";
  summary["grid"] = rc.grid.label();
  summary["report"] = to_json(result->report);
  write_json(dir / "summary.json", summary);
  const auto& last = result->report.records.back();
  out << "converged in " << result->report.iterations << " iterations, residual "
      << format_double(last.residual) << ", min " << format_double(last.min_value) << '\n';
  return kOk;
}

Field4 run_oracle(const RunConfig& rc, const GridSpec& grid, const SolveConfig& sc) {
  switch (rc.verify.oracle) {
    case OracleKind::Upwind:
      return upwind_solve(rc.data, rc.params, UpwindConfig{grid, rc.verify.cfl});
    case OracleKind::FreeStreaming:
      return free_streaming_exact(rc.data, rc.params, grid);
    default:
      return solve(rc.data, rc.params, grid, sc).field;
  }
}

int cmd_verify(const RunConfig& rc, const Options& opt, std::ostream& out, std::ostream& err) {
  const std::filesystem::path dir(opt.out);
  json report;
  if (!compat_gate(rc, opt, err, nullptr)) return kIncompatible;
  const SolveConfig sc = solve_config(rc, opt);

  std::vector<std::pair<GridSpec, GridSpec>> pairs;
  if (rc.verify.levels.empty()) {
    pairs.emplace_back(rc.grid, rc.verify.oracle_grid.value_or(rc.grid));
  } else {
    for (int n : rc.verify.levels) {
      const GridSpec g(rc.box, n, n, n);
      pairs.emplace_back(g, g);
    }
  }

  try {
    json levels = json::array();
    double prev = -1.0, last = 0.0;
    for (const auto& [pg, og] : pairs) {
      const SolveResult sol = solve(rc.data, rc.params, pg, sc);
      const Field4 ref = run_oracle(rc, og, sc);
      const ComparisonReport cmp = compare(sol.field, ref);
      json entry = to_json(cmp);
      entry["iterations"] = sol.report.iterations;
      if (prev > 0.0) entry["ratio"] = json_number(prev / cmp.sup);
      levels.push_back(entry);
      out << "picard " << cmp.grid_a << " vs oracle " << cmp.grid_b << ": sup "
          << format_double(cmp.sup) << ", rms " << format_double(cmp.rms) << '\n';
      prev = cmp.sup;
      last = cmp.sup;
    }
    report["comparisons"] = levels;
    report["threshold"] = json_number(rc.verify.threshold);
    report["passed"] = last <= rc.verify.threshold;
    write_json(dir / "comparison.json", report);
    if (last > rc.verify.threshold) {
      err << "sup-difference " << format_double(last) << " exceeds threshold "
          << format_double(rc.verify.threshold) << '\n';
      return kThreshold;
    }
    return kOk;
  } catch (const GateError& e) {
    err << e.what() << '\n';
    return kInadmissible;
  } catch (const ConvergenceError& e) {
    err << e.what() << '\n';
    return kNotConverged;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Broadwell model solver"};
  app.require_subcommand(1);
  Options opt;
  std::string snapshots;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "configuration JSON")->required();
    sub->add_option("--out", opt.out, "output directory");
    sub->add_flag("--force", opt.force, "run even when the certificate is inadmissible");
    sub->add_option("--threads", opt.threads, "worker thread cap (0 = all cores)");
    sub->add_option("--snapshots", snapshots, "comma-separated time indices to export");
  };
  CLI::App* certify_cmd = app.add_subcommand("certify", "evaluate the existence bounds");
  CLI::App* solve_cmd = app.add_subcommand("solve", "run the Picard iteration");
  CLI::App* verify_cmd = app.add_subcommand("verify", "compare against an oracle solver");
  CLI::App* compat_cmd = app.add_subcommand("compat", "check data compatibility");
  for (CLI::App* sub : {certify_cmd, solve_cmd, verify_cmd, compat_cmd}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kMalformed;
  }

  try {
    if (!snapshots.empty()) {
      std::stringstream ss(snapshots);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          std::size_t used = 0;
          opt.snapshots.push_back(std::stoi(item, &used));
          if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
          throw ConfigError("--snapshots: malformed index '" + item + "'");
        }
      }
    }
    set_worker_threads(opt.threads);
    std::filesystem::create_directories(opt.out);
    const RunConfig rc = load_run_config(opt.config);
    if (certify_cmd->parsed()) return cmd_certify(rc, opt, out);
    if (compat_cmd->parsed()) return cmd_compat(rc, opt, out, err);
    if (solve_cmd->parsed()) return cmd_solve(rc, opt, out, err);
    return cmd_verify(rc, opt, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kMalformed;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kIncompatible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInternal;
  }
}

}  // namespace broadwell::cli
