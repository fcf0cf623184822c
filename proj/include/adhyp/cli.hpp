#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "adhyp/field_io.hpp"
#include "adhyp/integrate.hpp"
#include "adhyp/problems.hpp"

namespace adhyp {

inline constexpr const char* kVersion = "1.0.0";

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitAbort = 2, kExitIo = 3 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Options of a single run. Unset optionals resolve to catalog defaults.
struct RunConfig {
  std::string problem = "ex1";
  int nx = 0;  // 0: catalog mesh
  int ny = 0;
  std::string scheme = "new";  // new | old | fixed:<tau>
  std::optional<double> C;     // default: catalog constant of the strategy
  double epsilon = 0.2;
  double theta = 2.0;
  double cfl = 0.4;
  std::string flux = "cu";
  std::string tau_refresh = "per-step";  // per-step | per-stage
  std::string init = "midpoint";         // midpoint | gauss4
  std::optional<double> t_end;
  std::vector<double> snapshots;  // empty: catalog snapshot times
  std::string output = "out";
  bool dump_indicator = false;
  bool first_order = false;
  int log_every = 0;  // echo every n-th step line to the log stream (0: never)
};

/// Applies "key = value" entries (as written to metadata files) on top of
/// `cfg`. Unknown keys are ignored so metadata files double as config files.
void apply_key_values(RunConfig& cfg, const KeyValues& kv);

/// Fully resolved configuration as key/value pairs.
KeyValues effective_config(const RunConfig& cfg);

/// Scheme string parsing: "new", "old", "fixed:<tau>" ("fixed" means 0.5).
IndicatorConfig parse_scheme(const std::string& scheme, double C, double epsilon);

struct ResolvedRun {
  const ProblemSpec* spec = nullptr;
  Grid grid;
  SchemeConfig scheme;
  double t_end = 0.0;
  std::vector<double> snapshots;
  InitMode init = InitMode::Midpoint;
};

/// Throws UsageError / CatalogError / std::invalid_argument on bad input.
ResolvedRun resolve(const RunConfig& cfg);

/// Runs in memory without writing files.
RunResult simulate(const ResolvedRun& run, const RunOptions& extra = {});

/// `run`: writes snapshot field files, metadata.txt and steps.log into
/// cfg.output. Returns an ExitCode.
int cmd_run(const RunConfig& cfg, std::ostream& log);

/// `reference`: cfg refined by `factor` (0: catalog factor) with fixed
/// tau = 0.5.
RunConfig reference_config(const RunConfig& cfg, int factor);
int cmd_reference(const RunConfig& cfg, int factor, std::ostream& log);

/// `error`: density difference norm between two field files.
double cmd_error(const std::string& file_a, const std::string& file_b, Norm norm,
                 const std::optional<Window>& window);

struct ConvergenceRow {
  int n = 0;
  double error = 0.0;
  std::optional<double> order;  // log2(e_{2h}/e_h) w.r.t. the previous row
};

/// Runs the mesh sequence and measures the density error of each run against
/// the exact solution when the problem has one, otherwise against the finest
/// mesh (which then gets no row). Throws UsageError for fewer than 3 meshes or
/// repeated/unsorted meshes.
std::vector<ConvergenceRow> convergence_study(const RunConfig& base, std::vector<int> meshes, Norm norm);

/// Entry point of the command-line tool.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace adhyp
