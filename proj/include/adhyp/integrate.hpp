#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "adhyp/boundary.hpp"
#include "adhyp/flux.hpp"
#include "adhyp/grid.hpp"
#include "adhyp/indicator.hpp"
#include "adhyp/reconstruct.hpp"

namespace adhyp {

enum class SourceKind { None, RtGravity };

/// How often the limiter parameter field is refreshed.
enum class TauRefresh { PerStep, PerStage };

struct SchemeConfig {
  IndicatorConfig indicator;
  double theta = 2.0;
  double cfl = 0.4;
  double gamma = 1.4;
  std::string flux = "cu";
  TauRefresh tau_refresh = TauRefresh::PerStep;
  bool first_order = false;  // debug: zero slopes

  /// Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

/// Everything a right-hand-side evaluation needs besides the state.
class Scheme {
 public:
  Scheme(SchemeConfig config, BoundarySet bc, SourceKind source = SourceKind::None);

  const SchemeConfig& config() const { return config_; }
  const BoundarySet& boundaries() const { return bc_; }
  SourceKind source() const { return source_; }
  const GasModel& gas() const { return gas_; }
  const NumericalFlux& flux() const { return *flux_; }
  ReconstructionOptions reconstruction() const { return {config_.theta, config_.first_order}; }

 private:
  SchemeConfig config_;
  BoundarySet bc_;
  SourceKind source_;
  GasModel gas_;
  std::shared_ptr<const NumericalFlux> flux_;
};

/// Diagnostics gathered while evaluating a right-hand side.
struct RhsStats {
  long fallbacks = 0;  // interface sides that needed the positivity fallback
};

/// Per-cell flags; a flagged cell's two faces (per direction) are rebuilt
/// with zero slopes on both sides.
using CellMask = GridArray<unsigned char>;

/// Semi-discrete operator dU/dt = -(F_{j+1/2} - F_{j-1/2})/dx (+ source).
/// U must have ghosts filled; tau must cover cells [-1, nx]. Writes the
/// physical cells of dudt (which must share U's grid). When `first_order`
/// is given its ghost flags must be filled (see fill_mask_ghosts). When
/// `fallback_cells` is given, physical cells with a face that needed the
/// positivity fallback are flagged in it (existing flags are kept).
RhsStats rhs_1d(const Field& U, const ScalarField& tau, const Scheme& scheme, Field& dudt,
                const CellMask* first_order = nullptr, CellMask* fallback_cells = nullptr);

/// 2-D counterpart with x- and y-flux differences.
RhsStats rhs_2d(const Field& U, const ScalarField& tau, const Scheme& scheme, Field& dudt,
                const CellMask* first_order = nullptr, CellMask* fallback_cells = nullptr);

/// Dispatches on the grid dimensionality.
RhsStats rhs(const Field& U, const ScalarField& tau, const Scheme& scheme, Field& dudt,
             const CellMask* first_order = nullptr, CellMask* fallback_cells = nullptr);

/// Copies flags across periodic sides into the first ghost layer; other
/// ghosts are cleared.
void fill_mask_ghosts(CellMask& mask, const BoundarySet& bc);

/// Pointwise gravity source (0, 0, rho, rho v) for a conserved state.
StateVector rt_gravity_source(const ConservedState& U);

/// Largest signal speeds over x- and y-interfaces (U's ghosts filled).
struct SignalSpeeds {
  double sx = 0.0;
  double sy = 0.0;
};
SignalSpeeds max_signal_speeds(const Field& U, const GasModel& gas);

/// CFL step: cfl*dx/sx in 1-D, cfl/(sx/dx + sy/dy) in 2-D. A static state
/// (zero speeds) gets cfl*dx (1-D) or cfl*min(dx, dy) (2-D).
double compute_dt(const Field& U, const GasModel& gas, double cfl);

/// Raised when a stage produces a non-physical or non-finite state.
class SolverAbort : public std::runtime_error {
 public:
  SolverAbort(const std::string& what, double time, long cell, ConservedState state)
      : std::runtime_error(what), time_(time), cell_(cell), state_(state) {}
  double time() const { return time_; }
  long cell() const { return cell_; }
  const ConservedState& state() const { return state_; }

 private:
  double time_;
  long cell_;
  ConservedState state_;
};

/// Operator interface used by ssprk3_step: evaluate dU/dt of a stage state.
/// The stage state is passed mutably so its ghosts may be (re)filled.
using StageOperator = std::function<void(Field& stage, Field& dudt)>;

/// Three-stage SSP Runge-Kutta step:
///   U1 = U + dt L(U)
///   U2 = 3/4 U + 1/4 (U1 + dt L(U1))
///   U  = 1/3 U + 2/3 (U2 + dt L(U2))
/// Only physical cells are updated.
void ssprk3_step(Field& U, double dt, const StageOperator& L);

/// As ssprk3_step, additionally validating every stage against `gas` (when
/// non-null) and throwing SolverAbort with time `t` and the offending cell.
void ssprk3_step_checked(Field& U, double dt, const StageOperator& L, const GasModel* gas, double t);

struct StepStats {
  long step = 0;
  double t = 0.0;   // time after the step
  double dt = 0.0;
  double max_rate = 0.0;  // max signal speed / cell width
  long fallbacks = 0;  // cells that used a positivity fallback during the step
  double wall_seconds = 0.0;
};

struct RunOptions {
  std::vector<double> snapshot_times;  // t_end is always included
  std::function<void(double t, const Field& U)> on_snapshot;
  std::function<void(const StepStats&)> on_step;
  long max_steps = -1;  // negative: unlimited
  /// Time step override; the CFL step is used when <= 0.
  double fixed_dt = 0.0;
};

struct RunResult {
  Field U;
  double t = 0.0;
  std::vector<StepStats> history;
  bool aborted = false;
  std::string abort_message;
  long total_fallbacks = 0;
};

/// Advances U0 to t_end with SSP-RK3, clipping steps so every snapshot time
/// and t_end are hit exactly. Aborts (without throwing) on invalid states,
/// non-finite data or a CFL step below 1e-13 * t_end; the returned field is
/// then the last valid state.
RunResult run_to(Field U0, double t_end, const Scheme& scheme, const RunOptions& options = {});

/// Evaluates L(U) for a stage: fills ghosts, optionally refreshes tau, calls rhs.
class SemiDiscrete {
 public:
  explicit SemiDiscrete(const Scheme& scheme) : scheme_(scheme) {}
  const Scheme& scheme() const { return scheme_; }

  /// Recompute tau from U (ghosts filled here).
  void refresh_tau(Field& U);
  const IndicatorField& indicator() const { return indicator_; }

  void operator()(Field& stage, Field& dudt);
  /// Distinct cells that used a positivity fallback since the last reset.
  long fallbacks() const;
  void reset_fallbacks();
  void mark_fallback(int i, int k);

  /// Cells whose faces are forced to first order; cleared by clear_mask.
  CellMask& mask() { return mask_; }
  void clear_mask(const Grid& g);
  void set_mask_active(bool active) { mask_active_ = active; }

 private:
  const Scheme& scheme_;
  IndicatorField indicator_;
  CellMask fallback_cells_;
  CellMask mask_;
  bool mask_active_ = false;
};

/// SSP-RK3 step with a cell-local repair: when a stage leaves a cell with
/// rho <= 0 or p <= 0, that cell's faces are rebuilt at first order and the
/// stage is recomputed. Flags persist for the rest of the step and count as
/// fallbacks. Returns the number of flagged cells; throws SolverAbort when a
/// flagged cell is still invalid, leaving the physical cells of U unchanged.
/// Ghost cells of U are not preserved.
long ssprk3_step_guarded(Field& U, double dt, SemiDiscrete& L, double t);

}  // namespace adhyp
