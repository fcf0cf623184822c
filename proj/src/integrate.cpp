#include "adhyp/integrate.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "adhyp/limiter.hpp"

namespace adhyp {

namespace {

// First exception (lowest loop index) raised inside a parallel loop.
class LoopErrors {
 public:
  void capture(long index) {
#pragma omp critical(adhyp_loop_errors)
    {
      if (!error_ || index < index_) {
        error_ = std::current_exception();
        index_ = index;
      }
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
  long index_ = std::numeric_limits<long>::max();
};

void add_source(const Scheme& scheme, const Field& U, Field& dudt) {
  if (scheme.source() != SourceKind::RtGravity) return;
  const Grid& g = U.grid();
  for_each_cell(g, [&](int i, int k) { dudt(i, k) += rt_gravity_source(U(i, k)); });
}

}  // namespace

void SchemeConfig::validate() const {
  indicator.validate();
  LimiterParams::checked(theta, 0.5);
  if (!(cfl > 0.0 && cfl <= 1.0)) throw std::invalid_argument("scheme: cfl must lie in (0, 1]");
  GasModel{gamma};
  make_flux(flux);
}

Scheme::Scheme(SchemeConfig config, BoundarySet bc, SourceKind source)
    : config_(std::move(config)), bc_(bc), source_(source), gas_(config_.gamma) {
  config_.validate();
  bc_.validate();
  flux_ = make_flux(config_.flux);
}

StateVector rt_gravity_source(const ConservedState& U) {
  return make_conserved(0.0, 0.0, U.rho(), U.mom_y());
}

namespace {

using PrimitiveField = GridArray<PrimitiveState>;

// Primitive states of the cells adjacent to any interface: physical cells
// plus one ghost layer along each swept direction (corners are not needed).
void to_primitive_field(const Field& U, const GasModel& gas, PrimitiveField& W) {
  const Grid& g = U.grid();
  if (!(W.grid() == g) || W.storage().empty()) W = PrimitiveField(g);
  const int lo_k = g.is_2d() ? -1 : 0;
  const int hi_k = g.is_2d() ? g.ny + 1 : 1;
  LoopErrors errors;
#pragma omp parallel for schedule(static)
  for (int k = lo_k; k < hi_k; ++k) {
    const bool ghost_row = k < 0 || k >= g.ny;
    for (int i = ghost_row ? 0 : -1; i < (ghost_row ? g.nx : g.nx + 1); ++i) {
      if (!try_cons_to_prim(U(i, k), gas, W(i, k))) {
        try {
          throw StateError("reconstruction: invalid cell state " + describe(U(i, k)),
                           static_cast<long>(k) * g.nx + i);
        } catch (...) {
          errors.capture(static_cast<long>(k + 1) * (g.nx + 2) + i + 1);
        }
      }
    }
  }
  errors.rethrow();
}

PrimitiveState swap_uv(const PrimitiveState& w) { return {w.rho, w.v, w.u, w.p}; }

// Per-thread scratch reused across calls. Large arrays allocated and freed
// every stage make the allocator return pages to the system each time.
struct RhsScratch {
  PrimitiveField W;
  std::vector<FluxVector> fx;
  std::vector<FluxVector> gy;
  std::vector<unsigned char> fx_sides;
  std::vector<unsigned char> gy_sides;
};

RhsScratch& rhs_scratch() {
  thread_local RhsScratch scratch;
  return scratch;
}

}  // namespace

RhsStats rhs_1d(const Field& U, const ScalarField& tau, const Scheme& scheme, Field& dudt,
                const CellMask* first_order, CellMask* fallback_cells) {
  const Grid& g = U.grid();
  const GasModel& gas = scheme.gas();
  const NumericalFlux& flux = scheme.flux();
  const ReconstructionOptions opt = scheme.reconstruction();
  RhsScratch& scratch = rhs_scratch();
  to_primitive_field(U, gas, scratch.W);
  const PrimitiveField& W = scratch.W;
  std::vector<FluxVector>& F = scratch.fx;
  F.resize(static_cast<std::size_t>(g.nx) + 1);
  std::vector<unsigned char>& sides = scratch.fx_sides;
  sides.assign(F.size(), 0);
  long fallbacks = 0;
  LoopErrors errors;
#pragma omp parallel for schedule(static) reduction(+ : fallbacks)
  for (int j = -1; j < g.nx; ++j) {
    try {
      ReconstructionOptions o = opt;
      if (first_order && ((*first_order)(j) || (*first_order)(j + 1))) o.first_order = true;
      const InterfaceValues r = reconstruct_interface(U(j - 1), U(j), U(j + 1), U(j + 2), W(j), W(j + 1),
                                                      tau(j), tau(j + 1), gas, o);
      fallbacks += r.fallbacks;
      sides[static_cast<std::size_t>(j + 1)] = r.sides;
      F[static_cast<std::size_t>(j + 1)] = flux.evaluate_primitive(r.left, r.w_left, r.right, r.w_right, gas);
    } catch (...) {
      errors.capture(j);
    }
  }
  errors.rethrow();

  for (int i = 0; i < g.nx; ++i) {
    const FluxVector& fl = F[static_cast<std::size_t>(i)];
    const FluxVector& fr = F[static_cast<std::size_t>(i) + 1];
    ConservedState& out = dudt(i);
    for (int m = 0; m < kNumVars; ++m) out[m] = -(fr[m] - fl[m]) / g.dx;
    if (fallback_cells && ((sides[static_cast<std::size_t>(i)] & 2) || (sides[static_cast<std::size_t>(i) + 1] & 1)))
      (*fallback_cells)(i) = 1;
  }
  add_source(scheme, U, dudt);
  return {fallbacks};
}

RhsStats rhs_2d(const Field& U, const ScalarField& tau, const Scheme& scheme, Field& dudt,
                const CellMask* first_order, CellMask* fallback_cells) {
  const Grid& g = U.grid();
  const GasModel& gas = scheme.gas();
  const NumericalFlux& flux = scheme.flux();
  const ReconstructionOptions opt = scheme.reconstruction();
  RhsScratch& scratch = rhs_scratch();
  to_primitive_field(U, gas, scratch.W);
  const PrimitiveField& W = scratch.W;

  const std::size_t fx_stride = static_cast<std::size_t>(g.nx) + 1;
  const std::size_t gy_stride = static_cast<std::size_t>(g.ny) + 1;
  // Fx[k*(nx+1) + j+1] is the flux through (j+1/2, k); Gy[i*(ny+1) + k+1] through (i, k+1/2).
  std::vector<FluxVector>& Fx = scratch.fx;
  std::vector<FluxVector>& Gy = scratch.gy;
  Fx.resize(fx_stride * static_cast<std::size_t>(g.ny));
  Gy.resize(gy_stride * static_cast<std::size_t>(g.nx));
  std::vector<unsigned char>& fx_sides = scratch.fx_sides;
  std::vector<unsigned char>& gy_sides = scratch.gy_sides;
  fx_sides.assign(Fx.size(), 0);
  gy_sides.assign(Gy.size(), 0);
  long fallbacks = 0;
  LoopErrors errors;

#pragma omp parallel for schedule(static) reduction(+ : fallbacks)
  for (int k = 0; k < g.ny; ++k) {
    for (int j = -1; j < g.nx; ++j) {
      try {
        ReconstructionOptions o = opt;
        if (first_order && ((*first_order)(j, k) || (*first_order)(j + 1, k))) o.first_order = true;
        const InterfaceValues r =
            reconstruct_interface(U(j - 1, k), U(j, k), U(j + 1, k), U(j + 2, k), W(j, k), W(j + 1, k),
                                  tau(j, k), tau(j + 1, k), gas, o);
        fallbacks += r.fallbacks;
        fx_sides[static_cast<std::size_t>(k) * fx_stride + static_cast<std::size_t>(j + 1)] = r.sides;
        Fx[static_cast<std::size_t>(k) * fx_stride + static_cast<std::size_t>(j + 1)] =
            flux.evaluate_primitive(r.left, r.w_left, r.right, r.w_right, gas);
      } catch (...) {
        errors.capture(static_cast<long>(k) * (g.nx + 1) + j + 1);
      }
    }
  }
  // y-sweep in the rotated frame: momentum slots and velocities exchanged.
#pragma omp parallel for schedule(static) reduction(+ : fallbacks)
  for (int i = 0; i < g.nx; ++i) {
    for (int k = -1; k < g.ny; ++k) {
      try {
        ReconstructionOptions o = opt;
        if (first_order && ((*first_order)(i, k) || (*first_order)(i, k + 1))) o.first_order = true;
        const InterfaceValues r = reconstruct_interface(
            swap_xy(U(i, k - 1)), swap_xy(U(i, k)), swap_xy(U(i, k + 1)), swap_xy(U(i, k + 2)),
            swap_uv(W(i, k)), swap_uv(W(i, k + 1)), tau(i, k), tau(i, k + 1), gas, o);
        fallbacks += r.fallbacks;
        gy_sides[static_cast<std::size_t>(i) * gy_stride + static_cast<std::size_t>(k + 1)] = r.sides;
        Gy[static_cast<std::size_t>(i) * gy_stride + static_cast<std::size_t>(k + 1)] =
            swap_xy(flux.evaluate_primitive(r.left, r.w_left, r.right, r.w_right, gas));
      } catch (...) {
        errors.capture(g.cell_count() + static_cast<long>(i) * (g.ny + 1) + k + 1);
      }
    }
  }
  errors.rethrow();

#pragma omp parallel for schedule(static)
  for (int k = 0; k < g.ny; ++k)
    for (int i = 0; i < g.nx; ++i) {
      const FluxVector& fl = Fx[static_cast<std::size_t>(k) * fx_stride + static_cast<std::size_t>(i)];
      const FluxVector& fr = Fx[static_cast<std::size_t>(k) * fx_stride + static_cast<std::size_t>(i) + 1];
      const FluxVector& gl = Gy[static_cast<std::size_t>(i) * gy_stride + static_cast<std::size_t>(k)];
      const FluxVector& gr = Gy[static_cast<std::size_t>(i) * gy_stride + static_cast<std::size_t>(k) + 1];
      ConservedState& out = dudt(i, k);
      for (int m = 0; m < kNumVars; ++m)
        out[m] = -(fr[m] - fl[m]) / g.dx - (gr[m] - gl[m]) / g.dy;
      if (fallback_cells) {
        const std::size_t fi = static_cast<std::size_t>(k) * fx_stride + static_cast<std::size_t>(i);
        const std::size_t gi = static_cast<std::size_t>(i) * gy_stride + static_cast<std::size_t>(k);
        if ((fx_sides[fi] & 2) || (fx_sides[fi + 1] & 1) || (gy_sides[gi] & 2) || (gy_sides[gi + 1] & 1))
          (*fallback_cells)(i, k) = 1;
      }
    }
  add_source(scheme, U, dudt);
  return {fallbacks};
}

RhsStats rhs(const Field& U, const ScalarField& tau, const Scheme& scheme, Field& dudt,
             const CellMask* first_order, CellMask* fallback_cells) {
  return U.grid().is_2d() ? rhs_2d(U, tau, scheme, dudt, first_order, fallback_cells)
                          : rhs_1d(U, tau, scheme, dudt, first_order, fallback_cells);
}

void fill_mask_ghosts(CellMask& mask, const BoundarySet& bc) {
  const Grid& g = mask.grid();
  const bool px = bc.x_lo.kind == BoundaryKind::Periodic;
  const bool py = g.is_2d() && bc.y_lo.kind == BoundaryKind::Periodic;
  for (int k = 0; k < g.ny; ++k) {
    mask(-1, k) = px ? mask(g.nx - 1, k) : 0;
    mask(g.nx, k) = px ? mask(0, k) : 0;
  }
  if (!g.is_2d()) return;
  for (int i = 0; i < g.nx; ++i) {
    mask(i, -1) = py ? mask(i, g.ny - 1) : 0;
    mask(i, g.ny) = py ? mask(i, 0) : 0;
  }
}

SignalSpeeds max_signal_speeds(const Field& U, const GasModel& gas) {
  // max(a+, -a-) over an interface equals the larger |u| + c of its two cells,
  // so a sweep over the cells adjacent to interfaces is sufficient.
  const Grid& g = U.grid();
  auto speed = [&](const ConservedState& s, int normal) {
    PrimitiveState w;
    if (!try_cons_to_prim(s, gas, w)) throw StateError("signal speed: invalid state " + describe(s));
    return std::abs(normal == kMomX ? w.u : w.v) + sound_speed(w, gas);
  };
  SignalSpeeds s;
  for (int k = 0; k < g.ny; ++k)
    for (int i = -1; i <= g.nx; ++i) s.sx = std::max(s.sx, speed(U(i, k), kMomX));
  if (g.is_2d())
    for (int k = -1; k <= g.ny; ++k)
      for (int i = 0; i < g.nx; ++i) s.sy = std::max(s.sy, speed(U(i, k), kMomY));
  return s;
}

namespace {

double dt_from_speeds(const Grid& g, const SignalSpeeds& s, double cfl) {
  if (!g.is_2d()) return s.sx > 0.0 ? cfl * g.dx / s.sx : cfl * g.dx;
  const double rate = s.sx / g.dx + s.sy / g.dy;
  return rate > 0.0 ? cfl / rate : cfl * std::min(g.dx, g.dy);
}

}  // namespace

double compute_dt(const Field& U, const GasModel& gas, double cfl) {
  return dt_from_speeds(U.grid(), max_signal_speeds(U, gas), cfl);
}

namespace {

void check_stage(const Field& S, const GasModel* gas, double t, int stage) {
  if (!gas) return;
  const Grid& g = S.grid();
  for (int k = 0; k < g.ny; ++k)
    for (int i = 0; i < g.nx; ++i)
      if (!is_valid(S(i, k), *gas)) {
        const long cell = static_cast<long>(k) * g.nx + i;
        throw SolverAbort("stage " + std::to_string(stage) + " produced invalid state " +
                              describe(S(i, k)) + " in cell (" + std::to_string(i) + ", " +
                              std::to_string(k) + ") near t=" + std::to_string(t),
                          t, cell, S(i, k));
      }
}

}  // namespace

void ssprk3_step(Field& U, double dt, const StageOperator& L) {
  ssprk3_step_checked(U, dt, L, nullptr, 0.0);
}

void ssprk3_step_checked(Field& U, double dt, const StageOperator& L, const GasModel* gas, double t) {
  const Grid& g = U.grid();
  // Stage buffers are reused between steps; a nested call (an operator that
  // itself steps) falls back to fresh buffers.
  thread_local Field shared_dudt, shared_stage;
  thread_local bool in_use = false;
  Field local_dudt, local_stage;
  const bool nested = in_use;
  Field& dudt = nested ? local_dudt : shared_dudt;
  Field& stage = nested ? local_stage : shared_stage;
  struct Release {
    bool active;
    ~Release() {
      if (active) in_use = false;
    }
  } release{!nested};
  in_use = true;
  if (!(dudt.grid() == g) || dudt.storage().empty()) dudt = Field(g);
  stage = U;

  L(stage, dudt);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < g.ny; ++k)
    for (int i = 0; i < g.nx; ++i) stage(i, k) = U(i, k) + dt * dudt(i, k);
  check_stage(stage, gas, t, 1);

  L(stage, dudt);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < g.ny; ++k)
    for (int i = 0; i < g.nx; ++i)
      stage(i, k) = 0.75 * U(i, k) + 0.25 * (stage(i, k) + dt * dudt(i, k));
  check_stage(stage, gas, t, 2);

  L(stage, dudt);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < g.ny; ++k)
    for (int i = 0; i < g.nx; ++i)
      stage(i, k) = (1.0 / 3.0) * U(i, k) + (2.0 / 3.0) * (stage(i, k) + dt * dudt(i, k));
  check_stage(stage, gas, t, 3);

  for (int k = 0; k < g.ny; ++k)
    for (int i = 0; i < g.nx; ++i) U(i, k) = stage(i, k);
}

void SemiDiscrete::refresh_tau(Field& U) {
  fill_ghosts(U, scheme_.boundaries());
  indicator_ = compute_tau_field(U, scheme_.config().indicator);
}

void SemiDiscrete::operator()(Field& stage, Field& dudt) {
  if (scheme_.config().tau_refresh == TauRefresh::PerStage || indicator_.tau.storage().empty())
    refresh_tau(stage);
  else
    fill_ghosts(stage, scheme_.boundaries());
  const Grid& g = stage.grid();
  if (!(fallback_cells_.grid() == g) || fallback_cells_.storage().empty()) fallback_cells_ = CellMask(g);
  rhs(stage, indicator_.tau, scheme_, dudt, mask_active_ ? &mask_ : nullptr, &fallback_cells_);
}

long SemiDiscrete::fallbacks() const {
  long n = 0;
  if (fallback_cells_.storage().empty()) return n;
  for_each_cell(fallback_cells_.grid(), [&](int i, int k) { n += fallback_cells_(i, k) != 0; });
  return n;
}

void SemiDiscrete::reset_fallbacks() {
  std::fill(fallback_cells_.storage().begin(), fallback_cells_.storage().end(), 0);
}

void SemiDiscrete::mark_fallback(int i, int k) {
  if (fallback_cells_.storage().empty()) fallback_cells_ = CellMask(mask_.grid());
  fallback_cells_(i, k) = 1;
}

void SemiDiscrete::clear_mask(const Grid& g) {
  if (!(mask_.grid() == g) || mask_.storage().empty())
    mask_ = CellMask(g);
  else
    std::fill(mask_.storage().begin(), mask_.storage().end(), 0);
  mask_active_ = false;
}

long ssprk3_step_guarded(Field& U, double dt, SemiDiscrete& L, double t) {
  const Grid& g = U.grid();
  const GasModel& gas = L.scheme().gas();
  // Plain references: worker threads must not resolve their own thread_local copies.
  thread_local Field shared_dudt, shared_a, shared_b;
  Field& dudt = shared_dudt;
  Field& a = shared_a;
  Field& b = shared_b;
  for (Field* f : {&dudt, &a, &b})
    if (!(f->grid() == g) || f->storage().empty()) *f = Field(g);
  L.clear_mask(g);
  long flagged = 0;

  // out = wu * U + ws * (in + dt L(in)) on physical cells.
  auto stage = [&](Field& in, Field& out, double wu, double ws, int number) {
    for (;;) {
      L(in, dudt);
      int bad = 0;
#pragma omp parallel for schedule(static) reduction(| : bad)
      for (int k = 0; k < g.ny; ++k)
        for (int i = 0; i < g.nx; ++i) {
          out(i, k) = wu * U(i, k) + ws * (in(i, k) + dt * dudt(i, k));
          bad |= !is_valid(out(i, k), gas);
        }
      if (!bad) return;
      for (int k = 0; k < g.ny; ++k)
        for (int i = 0; i < g.nx; ++i) {
          if (is_valid(out(i, k), gas)) continue;
          if (L.mask()(i, k)) check_stage(out, &gas, t, number);
          L.mask()(i, k) = 1;
          L.mark_fallback(i, k);
          ++flagged;
        }
      fill_mask_ghosts(L.mask(), L.scheme().boundaries());
      L.set_mask_active(true);
    }
  };

  // The first stage reads U directly; only its ghosts are rewritten.
  stage(U, b, 0.0, 1.0, 1);
  stage(b, a, 0.75, 0.25, 2);
  stage(a, b, 1.0 / 3.0, 2.0 / 3.0, 3);
  std::swap(U, b);
  return flagged;
}

RunResult run_to(Field U0, double t_end, const Scheme& scheme, const RunOptions& options) {
  if (!(t_end > 0.0)) throw std::invalid_argument("run_to: t_end must be > 0");

  std::vector<double> targets;
  for (double s : options.snapshot_times)
    if (s > 0.0 && s < t_end) targets.push_back(s);
  targets.push_back(t_end);
  std::sort(targets.begin(), targets.end());
  targets.erase(std::unique(targets.begin(), targets.end()), targets.end());

  RunResult res;
  res.U = std::move(U0);
  SemiDiscrete L(scheme);
  const GasModel& gas = scheme.gas();
  const Grid& g = res.U.grid();
  std::size_t next_target = 0;

  try {
    check_stage(res.U, &gas, 0.0, 0);
  } catch (const SolverAbort& e) {
    res.aborted = true;
    res.abort_message = std::string("initial data: ") + e.what();
    return res;
  }

  while (next_target < targets.size()) {
    if (options.max_steps >= 0 && static_cast<long>(res.history.size()) >= options.max_steps) break;
    const auto wall0 = std::chrono::steady_clock::now();
    try {
      L.refresh_tau(res.U);
      L.reset_fallbacks();

      const SignalSpeeds speeds = max_signal_speeds(res.U, gas);
      double dt = options.fixed_dt > 0.0 ? options.fixed_dt : dt_from_speeds(g, speeds, scheme.config().cfl);
      if (!std::isfinite(dt) || dt < 1e-13 * t_end)
        throw SolverAbort("time step underflow (dt=" + std::to_string(dt) + ")", res.t, -1, {});

      const double target = targets[next_target];
      bool landing = false;
      if (res.t + dt >= target || target - (res.t + dt) <= 1e-9 * dt) {
        dt = target - res.t;
        landing = true;
      }

      ssprk3_step_guarded(res.U, dt, L, res.t);
      res.t = landing ? target : res.t + dt;

      StepStats st;
      st.step = static_cast<long>(res.history.size()) + 1;
      st.t = res.t;
      st.dt = dt;
      st.max_rate = g.is_2d() ? std::max(speeds.sx / g.dx, speeds.sy / g.dy) : speeds.sx / g.dx;
      st.fallbacks = L.fallbacks();
      st.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
      res.total_fallbacks += st.fallbacks;
      res.history.push_back(st);
      if (options.on_step) options.on_step(st);

      if (landing) {
        ++next_target;
        if (options.on_snapshot) {
          fill_ghosts(res.U, scheme.boundaries());
          options.on_snapshot(res.t, res.U);
        }
      }
    } catch (const std::exception& e) {
      res.aborted = true;
      res.abort_message = e.what();
      break;
    }
  }
  fill_ghosts(res.U, scheme.boundaries());
  return res;
}

}  // namespace adhyp
