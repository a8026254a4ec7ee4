#include "amhd/timestepper.hpp"

#include <cmath>

namespace amhd {

MultiplierSpec semigroup_factor(const PhysParams& params, BComponent component, double dt) {
    if (dt < 0.0) throw std::invalid_argument("semigroup_factor: requires dt >= 0");
    MultiplierSpec inner = diffusion_symbol(params, component);
    return MultiplierSpec::custom_symbol([inner, dt](int k1, int k2) {
        return std::exp(-dt * inner.eval(k1, k2));
    });
}

namespace {

using Factors = std::vector<std::vector<double>>;  // per field, per flat index

// exp(-dt/2 sym) and exp(-dt sym) tables for every state field
struct DecayTables {
    Factors half, full;
};

DecayTables make_tables(const MHDState& proto, const PhysParams& params, double dt,
                        bool with_diffusion) {
    const Grid& g = proto.grid();
    const auto syms = state_linear_symbols(proto.formulation(), params);
    DecayTables t;
    t.half.resize(syms.size());
    t.full.resize(syms.size());
    for (std::size_t f = 0; f < syms.size(); ++f) {
        t.half[f].assign(g.size(), 1.0);
        t.full[f].assign(g.size(), 1.0);
        if (!with_diffusion) continue;
        std::size_t idx = 0;
        for (int i1 = 0; i1 < g.n1; ++i1) {
            const int k1 = g.wave1(i1);
            for (int i2 = 0; i2 < g.n2; ++i2, ++idx) {
                const double s = syms[f].eval(k1, g.wave2(i2)).real();
                if (s != 0.0) {
                    t.half[f][idx] = std::exp(-0.5 * dt * s);
                    t.full[f][idx] = std::exp(-dt * s);
                }
            }
        }
    }
    return t;
}

std::vector<SpectralField> clone_fields(const MHDState& s) {
    return {s.fields().begin(), s.fields().end()};
}

// y[i] = table[i] .* (a[i] + c * b[i])
void combine(std::vector<SpectralField>& y, const Factors& table,
             std::span<const SpectralField> a, double c, const Increment& b) {
    for (std::size_t f = 0; f < y.size(); ++f)
        for (std::size_t i = 0; i < y[f].size(); ++i)
            y[f][i] = table[f][i] * (a[f][i] + c * b[f][i]);
}

MHDState step_with_tables(const MHDState& state, const PhysParams& params, double dt,
                          const RhsOptions& opts, const DecayTables& tables) {
    const RhsOptions stage_opts{opts.nonlinear, false};  // diffusion lives in the semigroup
    auto N = [&](const MHDState& s) { return rhs(s, params, stage_opts); };

    const double t0 = state.time();
    const Increment n1 = N(state);

    std::vector<SpectralField> stage = clone_fields(state);
    combine(stage, tables.half, state.fields(), 0.5 * dt, n1);
    const Increment n2 = N(MHDState::with_fields(state, std::move(stage), t0 + 0.5 * dt));

    stage = clone_fields(state);
    for (std::size_t f = 0; f < stage.size(); ++f)
        for (std::size_t i = 0; i < stage[f].size(); ++i)
            stage[f][i] = tables.half[f][i] * state.fields()[f][i] + 0.5 * dt * n2[f][i];
    const Increment n3 = N(MHDState::with_fields(state, std::move(stage), t0 + 0.5 * dt));

    stage = clone_fields(state);
    for (std::size_t f = 0; f < stage.size(); ++f)
        for (std::size_t i = 0; i < stage[f].size(); ++i)
            stage[f][i] = tables.full[f][i] * state.fields()[f][i] +
                          dt * tables.half[f][i] * n3[f][i];
    const Increment n4 = N(MHDState::with_fields(state, std::move(stage), t0 + dt));

    std::vector<SpectralField> out = clone_fields(state);
    const double w = dt / 6.0;
    for (std::size_t f = 0; f < out.size(); ++f) {
        for (std::size_t i = 0; i < out[f].size(); ++i) {
            const double e = tables.half[f][i];
            const double e2 = tables.full[f][i];
            out[f][i] = e2 * state.fields()[f][i] +
                        w * (e2 * n1[f][i] + 2.0 * e * (n2[f][i] + n3[f][i]) + n4[f][i]);
        }
    }
    MHDState next = MHDState::with_fields(state, std::move(out), t0 + dt);
    if (!state_all_finite(next)) throw NanAbort(next.time());
    return next;
}

double cfl_limit(const MHDState& state, double safety) {
    const Grid& g = state.grid();
    const double dx = 2.0 * std::numbers::pi / std::max(g.n1, g.n2);
    const double speed = max_advection_speed(state);
    return speed > 0.0 ? safety * dx / speed : std::numeric_limits<double>::infinity();
}

}  // namespace

MHDState step(const MHDState& state, const PhysParams& params, double dt, const RhsOptions& opts) {
    if (!state_all_finite(state)) throw NanAbort(state.time());
    const DecayTables tables = make_tables(state, params, dt, opts.diffusion);
    return step_with_tables(state, params, dt, opts, tables);
}

MHDState step(const MHDState& state, const PhysParams& params, const StepConfig& cfg,
              const RhsOptions& opts) {
    cfg.validate();
    double dt = cfg.dt;
    if (cfg.adaptive) dt = std::min(dt, cfl_limit(state, cfg.cfl_safety));
    return step(state, params, dt, opts);
}

ModeWindow::ModeWindow(const Grid& grid) : grid_(grid) {
    std::size_t idx = 0;
    for (int i1 = 0; i1 < grid.n1; ++i1) {
        const int k1 = grid.wave1(i1);
        for (int i2 = 0; i2 < grid.n2; ++i2, ++idx) {
            const int k2 = grid.wave2(i2);
            if (grid.retained(k1, k2)) {
                k1_.push_back(k1);
                k2_.push_back(k2);
                flat_.push_back(idx);
            }
        }
    }
}

std::vector<std::complex<double>> ModeWindow::pack(const SpectralField& f) const {
    if (!(f.grid() == grid_)) throw std::invalid_argument("ModeWindow::pack: grid mismatch");
    std::vector<std::complex<double>> out(count());
    for (std::size_t s = 0; s < count(); ++s) out[s] = f[flat_[s]];
    return out;
}

SpectralField ModeWindow::unpack(std::span<const std::complex<double>> packed) const {
    if (packed.size() != count())
        throw std::invalid_argument("ModeWindow::unpack: size mismatch");
    SpectralField f(grid_);
    for (std::size_t s = 0; s < count(); ++s) f[flat_[s]] = packed[s];
    return f;
}

IntegrateResult integrate(const MHDState& state0, const PhysParams& params, const StepConfig& cfg,
                          const IntegrateOptions& opts, const RhsOptions& rhs_opts) {
    cfg.validate();
    params.validate();
    if (!state_all_finite(state0)) throw NanAbort(state0.time());

    auto cadence_steps = [&](double cadence, const char* what) -> long {
        if (cadence <= 0.0) return 0;
        const double ratio = cadence / cfg.dt;
        const long m = std::lround(ratio);
        if (m < 1 || std::abs(ratio - m) > 1e-9 * std::max(1.0, ratio))
            throw std::invalid_argument(std::string(what) +
                                        " cadence must be a positive multiple of dt");
        return m;
    };
    const long diag_every = cadence_steps(opts.diag_cadence, "diagnostic");
    const long hist_every = cadence_steps(opts.history.cadence, "history");

    const double ratio = cfg.t_end / cfg.dt;
    long n_steps = std::lround(ratio);
    if (std::abs(ratio - n_steps) > 1e-9 * std::max(1.0, ratio) || n_steps < 0)
        throw std::invalid_argument("integrate: t_end must be a multiple of dt");

    IntegrateResult result{state0, {}, nullptr, 0};

    if (opts.history.enabled) {
        if (state0.formulation() != Formulation::primitive)
            throw std::invalid_argument("history recording requires the primitive formulation");
        result.history = std::make_shared<NonlinearHistory>();
        result.history->grid = state0.grid();
        result.history->params = params;
        result.history->cadence = opts.history.cadence;
        result.history->window = std::make_shared<ModeWindow>(state0.grid());
        result.history->b1_initial = result.history->window->pack(state0.b1());
        result.history->b2_initial = result.history->window->pack(state0.b2());
    }

    const double dx = 2.0 * std::numbers::pi / std::max(state0.grid().n1, state0.grid().n2);
    auto observe = [&](const MHDState& s) {
        DiagRecord r = record(s, params, opts.diag);
        // fixed-dt mode reports CFL trouble at sample times (max|u|+max|b|
        // bounds the advection speed from above)
        if (!cfg.adaptive && (r.max_u + r.max_b) * cfg.dt > cfg.cfl_safety * dx)
            ++result.cfl_violations;
        result.records.push_back(r);
        if (opts.on_record) opts.on_record(result.records.back());
    };
    auto snapshot_history = [&](const MHDState& s) {
        if (!result.history) return;
        PrimitiveNonlinearTerms nl = primitive_nonlinear_terms(s, params, /*with_cross=*/true);
        result.history->times.push_back(s.time());
        result.history->nb1.push_back(result.history->window->pack(nl.nb1));
        result.history->nb2.push_back(result.history->window->pack(nl.nb2));
        result.history->cross12.push_back(result.history->window->pack(nl.cross12));
    };

    observe(result.state);
    snapshot_history(result.state);

    const DecayTables tables = make_tables(state0, params, cfg.dt, rhs_opts.diffusion);

    for (long i = 1; i <= n_steps; ++i) {
        if (cfg.adaptive) {
            // shrink-only adaptivity keeping the sample grid: subdivide the
            // step into equal CFL-safe pieces
            const double limit = cfl_limit(result.state, cfg.cfl_safety);
            if (cfg.dt > limit) {
                const int pieces = static_cast<int>(std::ceil(cfg.dt / limit));
                const double sub = cfg.dt / pieces;
                const DecayTables sub_tables =
                    make_tables(result.state, params, sub, rhs_opts.diffusion);
                for (int p = 0; p < pieces; ++p)
                    result.state =
                        step_with_tables(result.state, params, sub, rhs_opts, sub_tables);
            } else {
                result.state = step_with_tables(result.state, params, cfg.dt, rhs_opts, tables);
            }
        } else {
            result.state = step_with_tables(result.state, params, cfg.dt, rhs_opts, tables);
        }
        result.state.time() = i * cfg.dt;  // avoid accumulation drift

        if (diag_every > 0 ? (i % diag_every == 0) : (i == n_steps)) observe(result.state);
        if (result.history && hist_every > 0 && i % hist_every == 0)
            snapshot_history(result.state);
    }
    if (result.history) {
        result.history->b1_final = result.history->window->pack(result.state.b1());
        result.history->b2_final = result.history->window->pack(result.state.b2());
    }
    fill_energy_residuals(result.records, params.eta);
    return result;
}

}  // namespace amhd
