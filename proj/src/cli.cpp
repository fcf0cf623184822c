#include "adhyp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"

namespace adhyp {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

double to_double(const std::string& key, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("invalid number for '" + key + "': '" + s + "'");
  }
}

int to_int(const std::string& key, const std::string& s) {
  const double v = to_double(key, s);
  if (v != std::floor(v)) throw UsageError("expected an integer for '" + key + "'");
  return static_cast<int>(v);
}

bool to_bool(const std::string& key, const std::string& s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw UsageError("expected true/false for '" + key + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove(tok.begin(), tok.end(), ' '), tok.end());
    if (!tok.empty()) out.push_back(to_double(key, tok));
  }
  return out;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(v[i]);
  return s;
}

double default_C(const ProblemSpec& spec, const std::string& scheme) {
  return scheme == "old" ? spec.c_old : spec.c_new;
}

std::string snapshot_name(double t) { return "field_t" + short_fmt(t) + ".csv"; }

void set_threads_from_env() {
  if (const char* s = std::getenv("ADHYP_THREADS")) {
    const int n = std::atoi(s);
    if (n > 0) omp_set_num_threads(n);
  }
}

}  // namespace

void apply_key_values(RunConfig& cfg, const KeyValues& kv) {
  for (const auto& [k, v] : kv) {
    if (k == "problem") cfg.problem = v;
    else if (k == "nx") cfg.nx = to_int(k, v);
    else if (k == "ny") cfg.ny = to_int(k, v);
    else if (k == "scheme") cfg.scheme = v;
    else if (k == "C") cfg.C = to_double(k, v);
    else if (k == "epsilon") cfg.epsilon = to_double(k, v);
    else if (k == "theta") cfg.theta = to_double(k, v);
    else if (k == "cfl") cfg.cfl = to_double(k, v);
    else if (k == "flux") cfg.flux = v;
    else if (k == "tau_refresh") cfg.tau_refresh = v;
    else if (k == "init") cfg.init = v;
    else if (k == "t_end") cfg.t_end = to_double(k, v);
    else if (k == "snapshots") cfg.snapshots = to_list(k, v);
    else if (k == "output") cfg.output = v;
    else if (k == "dump_indicator") cfg.dump_indicator = to_bool(k, v);
    else if (k == "first_order") cfg.first_order = to_bool(k, v);
  }
}

IndicatorConfig parse_scheme(const std::string& scheme, double C, double epsilon) {
  IndicatorConfig ic;
  ic.C = C;
  ic.epsilon = epsilon;
  if (scheme == "new") {
    ic.strategy = TauStrategy::New;
  } else if (scheme == "old") {
    ic.strategy = TauStrategy::Old;
  } else if (scheme == "fixed") {
    ic.strategy = TauStrategy::Fixed;
    ic.fixed_tau = 0.5;
  } else if (scheme.rfind("fixed:", 0) == 0) {
    ic.strategy = TauStrategy::Fixed;
    ic.fixed_tau = to_double("scheme", scheme.substr(6));
  } else {
    throw UsageError("unknown scheme '" + scheme + "' (expected new, old or fixed:<tau>)");
  }
  ic.validate();
  return ic;
}

ResolvedRun resolve(const RunConfig& cfg) {
  ResolvedRun r;
  r.spec = &find_problem(cfg.problem);
  const ProblemSpec& spec = *r.spec;
  if (cfg.nx < 0 || cfg.ny < 0) throw UsageError("mesh sizes must be positive");
  r.grid = spec.grid(cfg.nx, cfg.ny);

  const double C = cfg.C.value_or(default_C(spec, cfg.scheme));
  r.scheme.indicator = parse_scheme(cfg.scheme, C, cfg.epsilon);
  r.scheme.theta = cfg.theta;
  r.scheme.cfl = cfg.cfl;
  r.scheme.gamma = spec.gamma;
  r.scheme.flux = cfg.flux;
  r.scheme.first_order = cfg.first_order;
  if (cfg.tau_refresh == "per-step") r.scheme.tau_refresh = TauRefresh::PerStep;
  else if (cfg.tau_refresh == "per-stage") r.scheme.tau_refresh = TauRefresh::PerStage;
  else throw UsageError("tau_refresh must be per-step or per-stage");
  r.scheme.validate();

  if (cfg.init == "midpoint") r.init = InitMode::Midpoint;
  else if (cfg.init == "gauss4") r.init = InitMode::Gauss4;
  else throw UsageError("init must be midpoint or gauss4");

  r.t_end = cfg.t_end.value_or(spec.t_end);
  if (!(r.t_end > 0.0)) throw UsageError("t_end must be > 0");
  if (cfg.snapshots.empty()) {
    for (double s : spec.snapshots)
      if (s < r.t_end) r.snapshots.push_back(s);
  } else {
    for (double s : cfg.snapshots)
      if (s > 0.0 && s < r.t_end) r.snapshots.push_back(s);
  }
  r.snapshots.push_back(r.t_end);
  std::sort(r.snapshots.begin(), r.snapshots.end());
  r.snapshots.erase(std::unique(r.snapshots.begin(), r.snapshots.end()), r.snapshots.end());
  return r;
}

KeyValues effective_config(const RunConfig& cfg) {
  const ResolvedRun r = resolve(cfg);
  KeyValues kv;
  kv["problem"] = r.spec->id;
  kv["dims"] = std::to_string(r.grid.dims);
  kv["nx"] = std::to_string(r.grid.nx);
  kv["ny"] = std::to_string(r.grid.ny);
  kv["scheme"] = cfg.scheme;
  kv["C"] = fmt(r.scheme.indicator.C);
  kv["epsilon"] = fmt(cfg.epsilon);
  kv["theta"] = fmt(cfg.theta);
  kv["cfl"] = fmt(cfg.cfl);
  kv["gamma"] = fmt(r.scheme.gamma);
  kv["flux"] = cfg.flux;
  kv["tau_refresh"] = cfg.tau_refresh;
  kv["init"] = cfg.init;
  kv["t_end"] = fmt(r.t_end);
  kv["snapshots"] = join(r.snapshots);
  kv["output"] = cfg.output;
  kv["dump_indicator"] = cfg.dump_indicator ? "true" : "false";
  kv["first_order"] = cfg.first_order ? "true" : "false";
  kv["version"] = kVersion;
  return kv;
}

RunResult simulate(const ResolvedRun& run, const RunOptions& extra) {
  const Scheme scheme(run.scheme, run.spec->bc, run.spec->source);
  Field U0 = initialize(*run.spec, run.grid, run.init);
  RunOptions opts = extra;
  opts.snapshot_times = run.snapshots;
  return run_to(std::move(U0), run.t_end, scheme, opts);
}

int cmd_run(const RunConfig& cfg, std::ostream& log) {
  const ResolvedRun run = resolve(cfg);
  KeyValues meta = effective_config(cfg);
  const std::filesystem::path dir(cfg.output);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + cfg.output + "': " + ec.message());

  meta["status"] = "RUNNING";
  write_key_values((dir / "metadata.txt").string(), meta);

  std::ofstream steps((dir / "steps.log").string());
  if (!steps) throw IoError("cannot open steps.log in '" + cfg.output + "'");

  const GasModel gas(run.scheme.gamma);
  KeyValues header{{"problem", run.spec->id},
                   {"mesh", std::to_string(run.grid.nx) +
                                (run.grid.is_2d() ? "x" + std::to_string(run.grid.ny) : "")},
                   {"scheme", cfg.scheme},
                   {"C", fmt(run.scheme.indicator.C)},
                   {"gamma", fmt(run.scheme.gamma)},
                   {"flux", cfg.flux},
                   {"version", kVersion}};
  std::vector<std::string> written;

  RunOptions opts;
  opts.on_step = [&](const StepStats& s) {
    char line[160];
    std::snprintf(line, sizeof line, "step=%ld t=%.17g dt=%.17g fallbacks=%ld", s.step, s.t, s.dt,
                  s.fallbacks);
    steps << line << '\n';
    if (cfg.log_every > 0 && s.step % cfg.log_every == 0) log << line << '\n';
  };
  opts.on_snapshot = [&](double t, const Field& U) {
    Field filled = U;
    fill_ghosts(filled, run.spec->bc);
    IndicatorField ind = compute_indicator(filled, run.scheme.indicator);
    ind.tau = compute_tau_field(filled, run.scheme.indicator).tau;
    KeyValues h = header;
    h["t"] = fmt(t);
    const std::string name = snapshot_name(t);
    write_field_file((dir / name).string(), U, ind, gas, h);
    written.push_back(name);
    if (cfg.dump_indicator && t == run.t_end) {
      write_indicator_file((dir / "indicator_lnEbar.csv").string(), ind, h);
      written.push_back("indicator_lnEbar.csv");
    }
  };

  const auto t0 = std::chrono::steady_clock::now();
  const RunResult res = simulate(run, opts);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  meta["status"] = res.aborted ? "ABORTED" : "COMPLETED";
  meta["t_final"] = fmt(res.t);
  meta["steps"] = std::to_string(res.history.size());
  meta["fallbacks"] = std::to_string(res.total_fallbacks);
  meta["wall_seconds"] = fmt(wall);
  meta["files"] = [&] {
    std::string s;
    for (std::size_t i = 0; i < written.size(); ++i) s += (i ? "," : "") + written[i];
    return s;
  }();
  if (res.aborted) meta["abort_message"] = res.abort_message;
  write_key_values((dir / "metadata.txt").string(), meta);

  log << run.spec->id << ": " << meta["status"] << " t=" << short_fmt(res.t)
      << " steps=" << res.history.size() << " fallbacks=" << res.total_fallbacks << " -> "
      << cfg.output << '\n';
  if (res.aborted) {
    log << "solver abort: " << res.abort_message << '\n';
    return kExitAbort;
  }
  return kExitOk;
}

RunConfig reference_config(const RunConfig& cfg, int factor) {
  const ProblemSpec& spec = find_problem(cfg.problem);
  const int f = factor > 0 ? factor : spec.reference_factor;
  RunConfig ref = cfg;
  ref.nx = (cfg.nx > 0 ? cfg.nx : spec.nx) * f;
  if (spec.dims == 2) ref.ny = (cfg.ny > 0 ? cfg.ny : spec.ny) * f;
  ref.scheme = "fixed:0.5";
  return ref;
}

int cmd_reference(const RunConfig& cfg, int factor, std::ostream& log) {
  return cmd_run(reference_config(cfg, factor), log);
}

double cmd_error(const std::string& a, const std::string& b, Norm norm, const std::optional<Window>& window) {
  return density_error(read_field_file(a), read_field_file(b), norm, window);
}

std::vector<ConvergenceRow> convergence_study(const RunConfig& base, std::vector<int> meshes, Norm norm) {
  if (meshes.size() < 3) throw UsageError("convergence needs at least 3 meshes");
  for (std::size_t i = 1; i < meshes.size(); ++i)
    if (meshes[i] <= meshes[i - 1]) throw UsageError("meshes must be strictly increasing");

  const ProblemSpec& spec = find_problem(base.problem);
  if (spec.dims != 1) throw UsageError("convergence studies are 1-D only");

  std::vector<std::vector<double>> rho;
  double t_end = 0.0;
  for (int n : meshes) {
    RunConfig cfg = base;
    cfg.nx = n;
    const ResolvedRun run = resolve(cfg);
    t_end = run.t_end;
    const RunResult res = simulate(run);
    if (res.aborted) throw SolverAbort("convergence run aborted: " + res.abort_message, res.t, -1, {});
    std::vector<double> r;
    for (int i = 0; i < n; ++i) r.push_back(res.U(i).rho());
    rho.push_back(std::move(r));
  }

  std::vector<ConvergenceRow> rows;
  const std::size_t count = spec.exact ? meshes.size() : meshes.size() - 1;
  for (std::size_t m = 0; m < count; ++m) {
    ConvergenceRow row;
    row.n = meshes[m];
    if (spec.exact) {
      const Grid g = spec.grid(meshes[m]);
      const auto exact_at = [&](double x, double y) { return spec.exact(x, y, t_end); };
      const Field ex = sample(exact_at, g, GasModel(spec.gamma), InitMode::Gauss4);
      std::vector<double> ref;
      for (int i = 0; i < g.nx; ++i) ref.push_back(ex(i).rho());
      row.error = density_error_1d(rho[m], ref, spec.x_min, spec.x_max, norm);
    } else {
      row.error = density_error_1d(rho[m], rho.back(), spec.x_min, spec.x_max, norm);
    }
    if (!rows.empty() && row.error > 0.0 && rows.back().error > 0.0)
      row.order = std::log(rows.back().error / row.error) /
                  std::log(static_cast<double>(row.n) / rows.back().n);
    rows.push_back(row);
  }
  return rows;
}

namespace {

struct CliRunOptions {
  std::string config_file;
  std::optional<std::string> problem, scheme, flux, tau_refresh, init, output, snapshots;
  std::optional<int> nx, ny;
  std::optional<double> C, epsilon, theta, cfl, t_end;
  bool dump_indicator = false;
  bool first_order = false;
  int log_every = 0;
};

void add_run_options(CLI::App* app, CliRunOptions& o) {
  app->add_option("--config", o.config_file, "key = value config file (e.g. a metadata.txt)");
  app->add_option("--problem", o.problem, "problem id (ex1..ex7, smooth1d)");
  app->add_option("--nx", o.nx, "cells in x");
  app->add_option("--ny", o.ny, "cells in y (2-D)");
  app->add_option("--scheme", o.scheme, "new | old | fixed:<tau>");
  app->add_option("--C", o.C, "adaption constant");
  app->add_option("--epsilon", o.epsilon, "indicator noise filter");
  app->add_option("--theta", o.theta, "limiter theta in [1,2]");
  app->add_option("--cfl", o.cfl, "CFL number");
  app->add_option("--flux", o.flux, "cu | ldcu");
  app->add_option("--tau-refresh", o.tau_refresh, "per-step | per-stage");
  app->add_option("--init", o.init, "midpoint | gauss4");
  app->add_option("--t-end", o.t_end, "final time");
  app->add_option("--snapshots", o.snapshots, "comma-separated output times");
  app->add_option("--output,-o", o.output, "output directory");
  app->add_flag("--dump-indicator", o.dump_indicator, "write ln(Ebar) at the final time");
  app->add_flag("--first-order", o.first_order, "debug: zero slopes");
  app->add_option("--log-every", o.log_every, "echo every n-th step line");
}

RunConfig build_config(const CliRunOptions& o) {
  RunConfig cfg;
  if (!o.config_file.empty()) apply_key_values(cfg, read_key_values(o.config_file));
  if (o.problem) cfg.problem = *o.problem;
  if (o.nx) cfg.nx = *o.nx;
  if (o.ny) cfg.ny = *o.ny;
  if (o.scheme) cfg.scheme = *o.scheme;
  if (o.C) cfg.C = *o.C;
  if (o.epsilon) cfg.epsilon = *o.epsilon;
  if (o.theta) cfg.theta = *o.theta;
  if (o.cfl) cfg.cfl = *o.cfl;
  if (o.flux) cfg.flux = *o.flux;
  if (o.tau_refresh) cfg.tau_refresh = *o.tau_refresh;
  if (o.init) cfg.init = *o.init;
  if (o.t_end) cfg.t_end = *o.t_end;
  if (o.snapshots) cfg.snapshots = to_list("snapshots", *o.snapshots);
  if (o.output) cfg.output = *o.output;
  if (o.dump_indicator) cfg.dump_indicator = true;
  if (o.first_order) cfg.first_order = true;
  cfg.log_every = o.log_every;
  return cfg;
}

std::optional<Window> parse_window(const std::string& s) {
  if (s.empty()) return std::nullopt;
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw UsageError("window must be lo:hi");
  Window w{to_double("window", s.substr(0, colon)), to_double("window", s.substr(colon + 1))};
  if (!(w.hi > w.lo)) throw UsageError("window must satisfy lo < hi");
  return w;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  set_threads_from_env();

  CLI::App app{"Adaptive-limiter finite-volume solver for the Euler equations"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  CliRunOptions run_opts;
  auto* run = app.add_subcommand("run", "run a problem and write snapshots");
  add_run_options(run, run_opts);

  CliRunOptions ref_opts;
  int ref_factor = 0;
  auto* ref = app.add_subcommand("reference", "refined run with the dissipative limiter");
  add_run_options(ref, ref_opts);
  ref->add_option("--factor", ref_factor, "mesh refinement factor (default: per problem)");

  std::string file_a, file_b, norm_name = "L1", window;
  auto* error = app.add_subcommand("error", "density error norm between two field files");
  error->add_option("file_a", file_a)->required();
  error->add_option("file_b", file_b)->required();
  error->add_option("--norm", norm_name, "L1 | L2 | Linf");
  error->add_option("--window", window, "x-range lo:hi");

  CliRunOptions conv_opts;
  std::string meshes_arg, conv_norm = "L1";
  auto* conv = app.add_subcommand("convergence", "observed order of accuracy over a mesh sequence");
  add_run_options(conv, conv_opts);
  conv->add_option("--meshes", meshes_arg, "comma-separated cell counts")->required();
  conv->add_option("--norm", conv_norm, "L1 | L2 | Linf");

  auto* list = app.add_subcommand("list-problems", "print the problem catalog");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return kExitOk;
    }
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(build_config(run_opts), out);
    if (*ref) {
      RunConfig cfg = build_config(ref_opts);
      if (!ref_opts.output && ref_opts.config_file.empty()) cfg.output = "reference_" + cfg.problem;
      return cmd_reference(cfg, ref_factor, out);
    }
    if (*error) {
      const double e = cmd_error(file_a, file_b, parse_norm(norm_name), parse_window(window));
      out << fmt(e) << '\n';
      return kExitOk;
    }
    if (*conv) {
      std::vector<int> meshes;
      for (double m : to_list("meshes", meshes_arg)) meshes.push_back(static_cast<int>(m));
      const auto rows = convergence_study(build_config(conv_opts), meshes, parse_norm(conv_norm));
      out << "n,error,order\n";
      for (const auto& r : rows)
        out << r.n << ',' << fmt(r.error) << ',' << (r.order ? fmt(*r.order) : std::string("-")) << '\n';
      return kExitOk;
    }
    if (*list) {
      for (const auto& id : problem_ids()) {
        const ProblemSpec& p = find_problem(id);
        char line[256];
        std::snprintf(line, sizeof line, "%-9s %dD  [%g,%g]%s  mesh=%d%s  t_end=%g  gamma=%g  C_old=%g  C_new=%g  %s",
                      p.id.c_str(), p.dims, p.x_min, p.x_max,
                      p.dims == 2 ? ("x[" + short_fmt(p.y_min) + "," + short_fmt(p.y_max) + "]").c_str() : "",
                      p.nx, p.dims == 2 ? ("x" + std::to_string(p.ny)).c_str() : "", p.t_end, p.gamma,
                      p.c_old, p.c_new, p.title.c_str());
        out << line << '\n';
      }
      return kExitOk;
    }
  } catch (const IoError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const FormatError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kExitIo;
  } catch (const SolverAbort& e) {
    err << "solver abort: " << e.what() << '\n';
    return kExitAbort;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitAbort;
  }
  return kExitUsage;
}

}  // namespace adhyp
