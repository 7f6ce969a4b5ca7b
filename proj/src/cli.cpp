#include "cstar/cli.hpp"

#include <unistd.h>

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cstar/dynamics.hpp"
#include "cstar/errors.hpp"
#include "cstar/pathspec.hpp"
#include "cstar/sweep.hpp"
#include "cstar/verify.hpp"

namespace cstar {

const std::vector<std::string> kSpectrumColumns{"t", "B1", "B2", "B3", "alpha", "B", "B0",
                                                "lambda1", "lambda2", "lambda3", "lambda4"};
const std::vector<std::string> kHolonomyColumns{"loop_id",          "theta",   "steps",
                                                "arg_berry_holonomy", "solid_angle_over_2",
                                                "instanton_factor", "abs_error"};
const std::vector<std::string> kEvolveColumns{"t",
                                              "re_c_exact",
                                              "im_c_exact",
                                              "abs_c_exact",
                                              "abs_c_adiabatic",
                                              "instanton_factor_to_t",
                                              "trace_distance_exact_vs_adiabatic"};

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

void write_atomically(const std::string& filename, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(filename);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream o(tmp, std::ios::binary | std::ios::trunc);
    if (!o) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    o << content;
    o.flush();
    if (!o) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("cannot rename onto '" + filename + "': " + ec.message());
  }
}

namespace {

// Input problems (missing file, bad path text, bad flags) map to exit 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string header(const std::vector<std::string>& cols) {
  std::string s;
  for (std::size_t i = 0; i < cols.size(); ++i) s += (i ? "," : "") + cols[i];
  return s + "\n";
}

void row(std::string& s, std::initializer_list<double> vals) {
  bool first = true;
  for (double v : vals) {
    if (!first) s += ',';
    s += csv_number(v);
    first = false;
  }
  s += '\n';
}

void emit(const RunConfig& cfg, const std::string& csv, std::ostream& out) {
  if (cfg.out_file.empty())
    out << csv;
  else
    write_atomically(cfg.out_file, csv);
}

std::vector<ParamPath> load_paths(const RunConfig& cfg) {
  if (cfg.path_file.empty()) throw UsageError("--path is required");
  std::string text;
  try {
    text = read_text_file(cfg.path_file);
  } catch (const std::runtime_error& e) {
    throw UsageError(e.what());
  }
  auto parsed = parse_descriptors(text);
  if (!parsed.ok()) throw PathSpecError(parsed.errors);
  if (parsed.descriptors.empty()) throw UsageError("path file '" + cfg.path_file + "' contains no paths");
  std::vector<ParamPath> paths;
  for (auto d : parsed.descriptors) {
    if (cfg.steps) d.steps = *cfg.steps;
    try {
      paths.push_back(sample(d));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return paths;
}

SuperpositionSpec amplitudes(const RunConfig& cfg, std::ostream& err) {
  double am, bm;
  if (!cfg.a_mod && !cfg.b_mod) {
    if (cfg.level == Level::L1) {
      am = 1.0;
      bm = 0.0;
    } else if (cfg.level == Level::L3) {
      am = 0.0;
      bm = 1.0;
    } else {
      am = bm = std::sqrt(0.5);
    }
  } else {
    am = cfg.a_mod.value_or(std::sqrt(std::max(0.0, 1.0 - cfg.b_mod.value_or(0.0) * cfg.b_mod.value_or(0.0))));
    bm = cfg.b_mod.value_or(std::sqrt(std::max(0.0, 1.0 - am * am)));
  }
  if (am < 0.0 || bm < 0.0) throw UsageError("amplitude moduli must be >= 0");
  const double n = am * am + bm * bm;
  if (!(n > 0.0)) throw UsageError("amplitudes vanish");
  if (std::abs(n - 1.0) > 1e-9) err << "warning: |a|^2 + |b|^2 = " << n << ", renormalizing\n";
  const double s = 1.0 / std::sqrt(n);
  return SuperpositionSpec::from_polar(am * s, cfg.a_phase.value_or(0.0), bm * s, cfg.b_phase.value_or(0.0));
}

double polar_angle(const ParamPoint& p) {
  const double b = p.B();
  return b > 0.0 ? std::acos(std::clamp(p.B3 / b, -1.0, 1.0)) : 0.0;
}

}  // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  std::string csv = header(kSpectrumColumns);
  for (const auto& path : load_paths(cfg)) {
    const auto table = sweep::omp::spectrum_table(path, cfg.hbar);
    for (std::size_t k = 0; k < path.size(); ++k) {
      const auto& p = path.point(k);
      const auto& l = table[k];
      row(csv, {path.time(k), p.B1, p.B2, p.B3, p.alpha, p.B(), p.B0(), l[0], l[1], l[2], l[3]});
    }
  }
  emit(cfg, csv, out);
  return kExitOk;
}

int cmd_holonomy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto loops = load_paths(cfg);
  for (std::size_t i = 0; i < loops.size(); ++i)
    if (!loops[i].closed())
      throw UsageError("path " + std::to_string(i) + " (" + loops[i].descriptor() + ") is not closed");
  const auto hol = sweep::omp::berry_holonomies(loops);
  std::string csv = header(kHolonomyColumns);
  for (std::size_t i = 0; i < loops.size(); ++i) {
    const double arg = std::arg(hol[i]);
    const double half = 0.5 * solid_angle(loops[i]);
    const double error = std::abs(std::remainder(arg + half, 2.0 * std::numbers::pi));
    const double factor = instanton_factor_numeric(loops[i]);
    row(csv, {static_cast<double>(i), polar_angle(loops[i].front()), static_cast<double>(loops[i].segments()), arg,
              half, factor, error});
    err << "loop " << i << ": arg = " << arg << ", -Omega/2 = " << -half << ", |error| = " << error
        << ", instanton factor = " << factor << "\n";
  }
  emit(cfg, csv, out);
  return kExitOk;
}

int cmd_evolve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.level && *cfg.level != Level::L1 && *cfg.level != Level::L3)
    throw UsageError("evolve supports --level L1 or L3");
  const auto paths = load_paths(cfg);
  if (paths.size() > 1) err << "warning: " << paths.size() << " paths in file, evolving the first\n";
  const ParamPath& path = paths.front();
  const SuperpositionSpec spec = amplitudes(cfg, err);

  const auto exact = propagate_exact(path, superposition_state(path.front(), spec), cfg.hbar);
  const auto adiabatic = evolve_superposition(path, spec, cfg.hbar);
  const auto factor = instanton_factor_profile(path);
  const auto report = compare_exact_adiabatic(exact, adiabatic);

  std::string csv = header(kEvolveColumns);
  for (std::size_t k = 0; k < path.size(); ++k) {
    const cplx c = exact.coherence[k];
    row(csv, {path.time(k), c.real(), c.imag(), std::abs(c), std::abs(adiabatic.coherence[k]), factor[k],
              trace_distance(exact.rho[k], adiabatic.rho[k])});
  }
  emit(cfg, csv, out);

  err << "samples: " << path.size() << ", endpoint trace distance " << report.endpoint_trace_distance
      << ", max trace distance " << report.max_trace_distance << ", coherence rms " << report.coherence_rms
      << "\n";
  const double c0 = std::abs(exact.coherence.front());
  if (c0 > 0.0 && std::isfinite(c0))
    err << "|c(T)|/|c(0)| = " << std::abs(exact.coherence.back()) / c0 << ", instanton factor to T = "
        << factor.back() << "\n";
  if (report.max_trace_distance > 0.2)
    err << "FLAG: non-adiabatic regime, exact and adiabatic states differ by trace distance "
        << report.max_trace_distance << " > 0.2\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  VerifyOptions o;
  o.seed = cfg.seed;
  o.tol_scale = cfg.tol_scale;
  o.guard_point = cfg.guard_point;
  if (cfg.level) o.guard_level = *cfg.level;
  out << "seed " << o.seed << " tol-scale " << csv_number(o.tol_scale) << " threads " << sweep::omp::max_threads()
      << "\n";
  bool all = true;
  for (const auto& c : run_verify(o)) {
    out << format_check(c) << "\n";
    all = all && c.pass;
  }
  out << (all ? "verify: all checks passed" : "verify: failures present") << "\n";
  return all ? kExitOk : kExitSuiteFailure;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"C*-geometric phases of a driven spin entangled with a second spin"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string level;
  std::string guard;

  auto common = [&](CLI::App* s) {
    s->add_option("--path", cfg.path_file, "path specification file");
    s->add_option("--hbar", cfg.hbar, "reduced Planck constant")->check(CLI::PositiveNumber);
    s->add_option("--steps", cfg.steps, "override the step count of every path")->check(CLI::Range(2, 100000000));
    s->add_option("--out", cfg.out_file, "CSV output file (default: standard output)");
  };
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues along a path");
  auto* holonomy = app.add_subcommand("holonomy", "monopole holonomy and instanton factor per loop");
  auto* evolve = app.add_subcommand("evolve", "exact vs adiabatic coherence dynamics");
  auto* verify = app.add_subcommand("verify", "run the verification suites");
  for (auto* s : {spectrum, holonomy, evolve}) common(s);
  evolve->add_option("--level", level, "L1 or L3 (pure initial level)");
  evolve->add_option("--a-mod", cfg.a_mod, "|a|");
  evolve->add_option("--a-phase", cfg.a_phase, "arg a (rad)");
  evolve->add_option("--b-mod", cfg.b_mod, "|b|");
  evolve->add_option("--b-phase", cfg.b_phase, "arg b (rad)");
  verify->add_option("--seed", cfg.seed, "seed for random probes");
  verify->add_option("--tol-scale", cfg.tol_scale, "multiplier on every tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--level", level, "level checked at --guard-point");
  verify->add_option("--guard-point", guard, "B1,B2,B3,alpha checked by the degeneracy guard");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!level.empty()) cfg.level = parse_level(level);
    if (!guard.empty()) {
      std::array<double, 4> v{};
      std::istringstream ss(guard);
      std::string part;
      std::size_t i = 0;
      while (std::getline(ss, part, ',')) {
        if (i >= 4) throw UsageError("--guard-point takes four numbers");
        v[i++] = std::stod(part);
      }
      if (i != 4) throw UsageError("--guard-point takes four numbers");
      cfg.guard_point = ParamPoint{v[0], v[1], v[2], v[3]};
    }
    if (spectrum->parsed()) return cmd_spectrum(cfg, out, err);
    if (holonomy->parsed()) return cmd_holonomy(cfg, out, err);
    if (evolve->parsed()) return cmd_evolve(cfg, out, err);
    return cmd_verify(cfg, out, err);
  } catch (const PathSpecError& e) {
    err << cfg.path_file << ":\n" << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitSuiteFailure;
  }
}

}  // namespace cstar
