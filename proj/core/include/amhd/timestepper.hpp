#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "amhd/diagnostics.hpp"
#include "amhd/dynamics.hpp"

namespace amhd {

struct StepConfig {
    double dt = 5e-4;
    double t_end = 1.0;
    double cfl_safety = 0.5;
    bool adaptive = false;

    void validate() const {
        if (!(dt > 0.0)) throw std::invalid_argument("StepConfig: requires dt > 0");
        if (t_end < 0.0) throw std::invalid_argument("StepConfig: requires t_end >= 0");
        if (!(cfl_safety > 0.0 && cfl_safety <= 1.0))
            throw std::invalid_argument("StepConfig: requires 0 < cfl_safety <= 1");
    }
};

/// exp(-dt * diffusion_symbol) for one magnetic component; identity at dt = 0
MultiplierSpec semigroup_factor(const PhysParams& params, BComponent component, double dt);

struct NanAbort : std::runtime_error {
    explicit NanAbort(double t)
        : std::runtime_error("non-finite state at t = " + std::to_string(t)), time(t) {}
    double time;
};

/** One integrating-factor RK4 step of size dt.
 *
 * The stiff diffusion enters only through its exact semigroup, so a state
 * with vanishing nonlinearity decays by the closed-form exponential to
 * round-off; the nonlinear terms see classical RK4 (order 4). Negative dt is
 * accepted for reverse integration of the diffusion-free subsystem.
 * opts.diffusion = false drops the semigroup (eta treated as 0);
 * opts.nonlinear = false gives the pure linear flow.
 */
MHDState step(const MHDState& state, const PhysParams& params, double dt,
              const RhsOptions& opts = {});

/// spec-level step: honors cfg.dt and, when cfg.adaptive, shrinks it to the CFL bound
MHDState step(const MHDState& state, const PhysParams& params, const StepConfig& cfg,
              const RhsOptions& opts = {});

/** Fixed scan order over the 2/3-retained modes of a grid; used to pack
 * dealiased fields into dense history buffers.
 */
class ModeWindow {
public:
    explicit ModeWindow(const Grid& grid);
    const Grid& grid() const { return grid_; }
    std::size_t count() const { return k1_.size(); }
    int k1(std::size_t slot) const { return k1_[slot]; }
    int k2(std::size_t slot) const { return k2_[slot]; }

    std::vector<std::complex<double>> pack(const SpectralField& f) const;
    SpectralField unpack(std::span<const std::complex<double>> packed) const;

private:
    Grid grid_;
    std::vector<int> k1_, k2_;
    std::vector<std::size_t> flat_;
};

/** Dense per-mode record of the magnetic nonlinearities along a primitive
 * run, at uniform cadence: the b1/b2 source terms and the product
 * b2 u1 - u2 b1 whose derivative they collapse to. Feeds the mild-solution
 * reconstruction checks.
 */
struct NonlinearHistory {
    Grid grid;
    PhysParams params;
    double cadence = 0.0;
    std::shared_ptr<ModeWindow> window;
    std::vector<double> times;
    std::vector<std::vector<std::complex<double>>> nb1, nb2, cross12;
    std::vector<std::complex<double>> b1_initial, b2_initial, b1_final, b2_final;
};

struct HistoryOptions {
    bool enabled = false;
    double cadence = 1e-3;
};

struct IntegrateOptions {
    double diag_cadence = 0.0;  // 0: record only the initial and final states
    DiagConfig diag;
    HistoryOptions history;
    std::function<void(const DiagRecord&)> on_record;
};

struct IntegrateResult {
    MHDState state;
    std::vector<DiagRecord> records;
    std::shared_ptr<NonlinearHistory> history;
    int cfl_violations = 0;
};

/** Repeated steps to cfg.t_end with observers sampled at the configured
 * cadence. Deterministic for a fixed input and single thread. Throws NanAbort
 * (with the partial series preserved in the exception-free path by the
 * caller's on_record) if the state leaves the finite range.
 */
IntegrateResult integrate(const MHDState& state0, const PhysParams& params, const StepConfig& cfg,
                          const IntegrateOptions& opts = {}, const RhsOptions& rhs_opts = {});

}  // namespace amhd
