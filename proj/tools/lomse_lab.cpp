// lomse_lab: batch front end for the Lawson-Osserman numerical lab.

#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "lomse/barriers.hpp"
#include "lomse/dirichlet.hpp"
#include "lomse/dynamics.hpp"
#include "lomse/error.hpp"
#include "lomse/geometry.hpp"
#include "lomse/hopf.hpp"
#include "lomse/params.hpp"
#include "lomse/report.hpp"

namespace fs = std::filesystem;
using lomse::Json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvariant = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::optional<int> n, p, k;
  double t_max = 200.0;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  double event_tol = 1e-12;
  bool tolerances_given = false;
  double seed_epsilon = 1e-8;
  std::string phi_boundary;
  std::string out;
  std::string format = "json";
  int jobs = 1;
  bool relaxed = false;
  bool no_timestamp = false;
  std::string list_file;
  int samples = 1000;
  std::uint64_t seed = 7;
};

lomse::LomseParams params_of(const RunConfig& cfg) {
  if (!cfg.n || !cfg.p || !cfg.k) throw ConfigError("--n, --p and --k are required");
  return lomse::validate_params(*cfg.n, *cfg.p, *cfg.k,
                                cfg.relaxed ? lomse::Validation::Relaxed : lomse::Validation::Strict);
}

// Spiral orbits default to the tighter preset unless tolerances were given explicitly.
lomse::IntegrationOptions options_for(const RunConfig& cfg, const lomse::LomseParams& params) {
  lomse::IntegrationOptions o;
  if (!cfg.tolerances_given && params.stability == lomse::Stability::TypeII) o = lomse::high_resolution_options();
  if (cfg.tolerances_given) {
    o.abs_tol = cfg.abs_tol;
    o.rel_tol = cfg.rel_tol;
    o.event_tol = cfg.event_tol;
  }
  return o;
}

lomse::Orbit run_orbit(const RunConfig& cfg, const lomse::LomseParams& params) {
  return lomse::integrate_from_origin(params, cfg.t_max, cfg.seed_epsilon, options_for(cfg, params));
}

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

void write_file(const RunConfig& cfg, const std::string& name, const std::string& content) {
  if (cfg.out.empty()) return;
  fs::create_directories(cfg.out);
  std::ofstream os(fs::path(cfg.out) / name);
  if (!os) throw ConfigError("cannot write to " + (fs::path(cfg.out) / name).string());
  os << content;
}

int emit(const RunConfig& cfg, const std::string& command, Json body, const std::string& file, bool ok) {
  Json doc;
  doc["command"] = command;
  if (!cfg.no_timestamp) doc["generated_at"] = timestamp();
  for (auto& [key, value] : body.items()) doc[key] = value;
  doc["ok"] = ok;
  const std::string text = doc.dump(2) + "\n";
  write_file(cfg, file, text);
  std::cout << text;
  return ok ? kExitOk : kExitInvariant;
}

void require_json(const RunConfig& cfg, const std::string& command) {
  if (cfg.format != "json") throw ConfigError(command + " only supports --format json");
}

// ---------------------------------------------------------------------------

int cmd_classify(const RunConfig& cfg) {
  require_json(cfg, "classify");
  const auto params = params_of(cfg);
  const auto spec = lomse::spectra(params);
  const auto geo = lomse::geometry_report(params);

  Json checks = Json::array();
  auto check = [&](const std::string& name, double dev, double tol) {
    checks.push_back({{"name", name}, {"deviation", dev}, {"tolerance", tol}, {"pass", dev < tol}});
    return dev < tol;
  };
  bool ok = true;
  ok &= check("tan(theta) - phi0", std::abs(std::tan(params.theta) - params.phi0), 1e-12);
  ok &= check("A V1 - mu1 V1", (spec.A * spec.V1 - spec.mu1 * spec.V1).norm(), 1e-12);
  ok &= check("A V2 - mu2 V2", (spec.A * spec.V2 - spec.mu2 * spec.V2).norm(), 1e-12);
  ok &= check("W cos(alpha) - 1", std::abs(geo.slope_W * geo.cos_alpha - 1.0), 1e-12);
  ok &= check("trace(B) + n + 1", std::abs(spec.B.trace() + params.n + 1.0), 1e-12);

  Json body{{"params", lomse::to_json(params)},
            {"spectra", lomse::to_json(spec)},
            {"geometry", lomse::to_json(geo)},
            {"checks", checks}};
  return emit(cfg, "classify", body, "classify.json", ok);
}

int cmd_portrait(const RunConfig& cfg) {
  const auto params = params_of(cfg);
  const auto orbit = run_orbit(cfg, params);
  std::ostringstream csv;
  lomse::write_orbit_csv(csv, orbit);
  write_file(cfg, "orbit.csv", csv.str());

  const bool ok = orbit.terminal == lomse::Terminal::ConvergedToP1;
  if (cfg.format == "csv") {
    std::cout << csv.str();
    Json doc = lomse::orbit_summary(orbit);
    write_file(cfg, "orbit_events.json", doc.dump(2) + "\n");
    return ok ? kExitOk : kExitInvariant;
  }
  Json body{{"params", lomse::to_json(params)}, {"orbit", lomse::orbit_summary(orbit)}};
  return emit(cfg, "portrait", body, "orbit_events.json", ok);
}

int cmd_profile(const RunConfig& cfg) {
  const auto params = params_of(cfg);
  const auto orbit = run_orbit(cfg, params);
  const auto profile = lomse::extract_profile(orbit, params);
  std::ostringstream csv;
  lomse::write_profile_csv(csv, profile);
  write_file(cfg, "profile.csv", csv.str());

  const double residual = profile.max_abs_residual();
  const bool ok = residual < 1e-8 && std::abs(profile.small_r_slope / params.k - 1.0) < 0.05;
  if (cfg.format == "csv") {
    std::cout << csv.str();
    return ok ? kExitOk : kExitInvariant;
  }
  Json body{{"params", lomse::to_json(params)},
            {"samples", profile.r.size()},
            {"r_max", profile.r_max},
            {"max_abs_residual", residual},
            {"small_r_slope", profile.small_r_slope},
            {"rho_over_r_at_r_max", profile.rho.back() / profile.r.back()}};
  return emit(cfg, "profile", body, "profile.json", ok);
}

int cmd_dirichlet(const RunConfig& cfg) {
  require_json(cfg, "dirichlet");
  const auto params = params_of(cfg);
  if (cfg.phi_boundary.empty()) throw ConfigError("--phi-boundary is required (a number or at-phi0)");
  double pb = 0.0;
  if (cfg.phi_boundary == "at-phi0") {
    pb = params.phi0;
  } else {
    try {
      std::size_t used = 0;
      pb = std::stod(cfg.phi_boundary, &used);
      if (used != cfg.phi_boundary.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      throw ConfigError("--phi-boundary must be a number or at-phi0");
    }
  }
  if (!(pb >= 0.0)) throw ConfigError("--phi-boundary must be >= 0");

  const auto orbit = run_orbit(cfg, params);
  const auto rep = lomse::dirichlet_multiplicity(orbit, params, pb, options_for(cfg, params).event_tol);
  // Each reported rescaling must reproduce the boundary value at r = 1.
  double worst = 0.0;
  for (double t : rep.crossing_ts) worst = std::max(worst, std::abs(orbit.at(t).phi - pb));
  const bool ok = worst < 1e-9;
  Json body{{"params", lomse::to_json(params)}, {"report", lomse::to_json(rep)}, {"max_boundary_error", worst}};
  return emit(cfg, "dirichlet", body, "dirichlet.json", ok);
}

int cmd_barriers(const RunConfig& cfg) {
  require_json(cfg, "barriers");
  const auto params = params_of(cfg);
  const auto cert = params.stability == lomse::Stability::TypeII ? lomse::barrier_certificate_A4(params)
                                                                  : lomse::barrier_certificate_A3(params);
  Json body{{"params", lomse::to_json(params)}, {"certificate", lomse::to_json(cert)}};
  return emit(cfg, "barriers", body, "barriers.json", cert.pass);
}

int cmd_verify_hopf(const RunConfig& cfg) {
  require_json(cfg, "verify-hopf");
  const auto rep = lomse::hopf_verification_report(cfg.samples, cfg.seed);
  Json body{{"samples", cfg.samples}, {"seed", cfg.seed}, {"report", lomse::to_json(rep)}};
  return emit(cfg, "verify-hopf", body, "verify_hopf.json", rep.pass);
}

// ---------------------------------------------------------------------------

struct SweepRow {
  int n = 0, p = 0, k = 0;
  std::string type, verdict, error;
  double phi0 = 0, cos_alpha = 0, volume_ratio = 0, W = 0;
};

std::vector<std::array<long long, 3>> read_triples(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read list file " + path);
  std::vector<std::array<long long, 3>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& ch : line) {
      if (ch == ',' || ch == '(' || ch == ')' || ch == '\t') ch = ' ';
    }
    std::istringstream ls(line);
    std::array<long long, 3> t{};
    if (!(ls >> t[0])) continue;
    std::string rest;
    if (!(ls >> t[1] >> t[2]) || (ls >> rest)) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected three integers n p k");
    }
    out.push_back(t);
  }
  return out;
}

SweepRow sweep_one(const RunConfig& cfg, const lomse::LomseParams& params) {
  SweepRow row;
  row.n = params.n;
  row.p = params.p;
  row.k = params.k;
  row.type = lomse::to_string(params.stability);
  row.phi0 = params.phi0;
  const auto geo = lomse::geometry_report(params);
  row.cos_alpha = geo.cos_alpha;
  row.volume_ratio = geo.volume_ratio;
  row.W = geo.slope_W;
  try {
    const auto orbit = run_orbit(cfg, params);
    const auto profile = lomse::extract_profile(orbit, params);
    if (orbit.events_of(lomse::EventKind::PhiEqualsPhi0).empty()) {
      row.verdict = lomse::to_string(lomse::DensityVerdict::Inconclusive);
    } else {
      row.verdict = lomse::to_string(lomse::nonminimizing_verdict(profile, orbit, params).verdict);
    }
  } catch (const lomse::Error& e) {
    row.verdict = "Error";
    row.error = e.what();
  }
  return row;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.list_file.empty()) throw ConfigError("sweep needs --list <file> with one n p k triple per line");
  if (cfg.format != "json" && cfg.format != "csv") throw ConfigError("--format must be json or csv");
  std::vector<lomse::LomseParams> all;
  for (const auto& t : read_triples(cfg.list_file)) {
    all.push_back(lomse::validate_params(t[0], t[1], t[2],
                                         cfg.relaxed ? lomse::Validation::Relaxed : lomse::Validation::Strict));
  }

  std::vector<SweepRow> rows(all.size());
  std::atomic<std::size_t> next{0};
  const int workers = std::max(1, std::min<int>(cfg.jobs, int(all.size())));
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < all.size(); i = next++) rows[i] = sweep_one(cfg, all[i]);
    });
  }
  for (auto& th : pool) th.join();

  bool ok = true;
  for (const auto& r : rows) ok &= r.verdict != "Error";
  // Type II triples must come out non-minimizing.
  for (const auto& r : rows) ok &= r.type != "TypeII" || r.verdict == "NonMinimizing";

  if (cfg.format == "csv") {
    std::ostringstream csv;
    csv << "n,p,k,type,phi0,cos_alpha,volume_ratio,W,verdict\n";
    csv.precision(17);
    for (const auto& r : rows) {
      csv << r.n << ',' << r.p << ',' << r.k << ',' << r.type << ',' << r.phi0 << ',' << r.cos_alpha << ','
          << r.volume_ratio << ',' << r.W << ',' << r.verdict << '\n';
    }
    write_file(cfg, "sweep.csv", csv.str());
    std::cout << csv.str();
    return ok ? kExitOk : kExitInvariant;
  }
  Json table = Json::array();
  for (const auto& r : rows) {
    Json e{{"n", r.n},         {"p", r.p},
           {"k", r.k},         {"type", r.type},
           {"phi0", r.phi0},   {"cos_alpha", r.cos_alpha},
           {"volume_ratio", r.volume_ratio}, {"W", r.W},
           {"verdict", r.verdict}};
    if (!r.error.empty()) e["error"] = r.error;
    table.push_back(e);
  }
  return emit(cfg, "sweep", Json{{"rows", table}}, "sweep.json", ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lawson-Osserman numerical lab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file with any of the flags below; flags given on the command line win");

  RunConfig cfg;
  int n = 0, p = 0, k = 0;
  auto* on = app.add_option("--n", n, "sphere dimension of the domain");
  auto* op = app.add_option("--p", p, "rank of the map");
  auto* ok_ = app.add_option("--k", k, "degree of the spherical harmonics");
  app.add_option("--t-max", cfg.t_max, "end of the integration in t = log r")->check(CLI::PositiveNumber);
  auto* oa = app.add_option("--abs-tol", cfg.abs_tol, "absolute tolerance")->check(CLI::PositiveNumber);
  auto* orl = app.add_option("--rel-tol", cfg.rel_tol, "relative tolerance")->check(CLI::PositiveNumber);
  auto* oe = app.add_option("--event-tol", cfg.event_tol, "event location tolerance in t")->check(CLI::PositiveNumber);
  app.add_option("--seed-epsilon", cfg.seed_epsilon, "offset of the seed along the unstable direction")
      ->check(CLI::PositiveNumber);
  app.add_option("--phi-boundary", cfg.phi_boundary, "boundary amplitude, a number or at-phi0");
  app.add_option("--out", cfg.out, "directory for output files");
  app.add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", cfg.jobs, "worker threads for sweep")->check(CLI::Range(1, 1024));
  app.add_flag("--relaxed", cfg.relaxed, "accept any 1 <= p < n, k >= 1 with k(k+n-1) > n");
  app.add_flag("--no-timestamp", cfg.no_timestamp, "omit generated_at from JSON output");
  app.add_option("--list", cfg.list_file, "sweep input: one n p k triple per line");
  app.add_option("--samples", cfg.samples, "sphere samples for verify-hopf")->check(CLI::Range(1, 10000000));
  app.add_option("--seed", cfg.seed, "random seed for verify-hopf");

  const std::vector<std::pair<std::string, std::string>> commands{
      {"classify", "parameters, spectra and closed-form geometry"},
      {"portrait", "phase-plane orbit as orbit.csv with an events sidecar"},
      {"profile", "radial profile with equation residuals"},
      {"dirichlet", "solution count for a boundary amplitude"},
      {"barriers", "invariant-region certificate"},
      {"verify-hopf", "checks on the Hopf fibration S^3 -> S^2"},
      {"sweep", "summary table over a list of triples"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (on->count()) cfg.n = n;
  if (op->count()) cfg.p = p;
  if (ok_->count()) cfg.k = k;
  cfg.tolerances_given = oa->count() || orl->count() || oe->count();

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (command == "classify") return cmd_classify(cfg);
    if (command == "portrait") return cmd_portrait(cfg);
    if (command == "profile") return cmd_profile(cfg);
    if (command == "dirichlet") return cmd_dirichlet(cfg);
    if (command == "barriers") return cmd_barriers(cfg);
    if (command == "verify-hopf") return cmd_verify_hopf(cfg);
    if (command == "sweep") return cmd_sweep(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const lomse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case lomse::ErrorCode::InvalidFamily:
      case lomse::ErrorCode::InvalidDegree:
      case lomse::ErrorCode::InvalidRange:
      case lomse::ErrorCode::WrongCase:
      case lomse::ErrorCode::WrongType: return kExitConfig;
      default: return kExitInvariant;
    }
  }
  return kExitConfig;
}
