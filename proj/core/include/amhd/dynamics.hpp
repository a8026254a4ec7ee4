#pragma once

#include <span>
#include <string>
#include <vector>

#include "amhd/operators.hpp"
#include "amhd/transforms.hpp"

namespace amhd {

enum class DiffusionMode {
    partial_directional,  // b1 diffused by eta |k2|^(2 beta), b2 by eta |k1|^(2 beta)
    full_fractional,      // both components by eta |k|^(2 beta)
    classical_laplacian,  // both components by eta |k|^2
};

enum class Formulation { primitive, vorticity_current };

std::string to_string(DiffusionMode m);
std::string to_string(Formulation f);

struct PhysParams {
    double eta = 0.1;
    double beta = 1.5;
    DiffusionMode diffusion = DiffusionMode::partial_directional;
    Formulation formulation = Formulation::vorticity_current;
    double epsilon = 0.0;  // mollification radius; 0 = none

    void validate() const {
        if (!(eta > 0.0)) throw std::invalid_argument("PhysParams: requires eta > 0");
        if (!(beta > 0.0)) throw std::invalid_argument("PhysParams: requires beta > 0");
        if (epsilon < 0.0) throw std::invalid_argument("PhysParams: requires epsilon >= 0");
    }
    /// beta > 1 is the regime with a global classical solution; runs outside
    /// it are allowed but labeled
    bool theorem_regime() const { return beta > 1.0; }
};

/** Evolved unknowns in either primitive (u1,u2,b1,b2) or vorticity-current
 * (omega, j) form, plus time. Fields are spectral and kept dealiased.
 */
class MHDState {
public:
    static MHDState primitive(SpectralField u1, SpectralField u2, SpectralField b1,
                              SpectralField b2, double t = 0.0);
    static MHDState vorticity_current(SpectralField omega, SpectralField j, double t = 0.0);
    /// same formulation as proto, new field values
    static MHDState with_fields(const MHDState& proto, std::vector<SpectralField> fields,
                                double t);

    Formulation formulation() const { return form_; }
    double time() const { return time_; }
    double& time() { return time_; }
    const Grid& grid() const { return f_[0].grid(); }

    std::span<SpectralField> fields() { return f_; }
    std::span<const SpectralField> fields() const { return f_; }
    std::size_t num_fields() const { return f_.size(); }

    // primitive accessors
    SpectralField& u1() { return prim(0); }
    SpectralField& u2() { return prim(1); }
    SpectralField& b1() { return prim(2); }
    SpectralField& b2() { return prim(3); }
    const SpectralField& u1() const { return prim(0); }
    const SpectralField& u2() const { return prim(1); }
    const SpectralField& b1() const { return prim(2); }
    const SpectralField& b2() const { return prim(3); }

    // vorticity-current accessors
    SpectralField& omega() { return vc(0); }
    SpectralField& current() { return vc(1); }
    const SpectralField& omega() const { return vc(0); }
    const SpectralField& current() const { return vc(1); }

private:
    MHDState(Formulation f, std::vector<SpectralField> fields, double t)
        : form_(f), time_(t), f_(std::move(fields)) {}
    SpectralField& prim(std::size_t i) {
        if (form_ != Formulation::primitive)
            throw std::logic_error("MHDState: not in primitive form");
        return f_[i];
    }
    const SpectralField& prim(std::size_t i) const {
        return const_cast<MHDState*>(this)->prim(i);
    }
    SpectralField& vc(std::size_t i) {
        if (form_ != Formulation::vorticity_current)
            throw std::logic_error("MHDState: not in vorticity-current form");
        return f_[i];
    }
    const SpectralField& vc(std::size_t i) const { return const_cast<MHDState*>(this)->vc(i); }

    Formulation form_;
    double time_;
    std::vector<SpectralField> f_;
};

/// per-field time increments, aligned with MHDState::fields()
using Increment = std::vector<SpectralField>;

enum class BComponent { b1, b2, b_iso };

/// Linear diffusion symbol acting on the given magnetic component.
/// b_iso is only meaningful for the isotropic modes.
MultiplierSpec diffusion_symbol(const PhysParams& params, BComponent component);

/// Diffusion symbol acting on the current density j = curl b, i.e. the curl of
/// the componentwise diffusion pushed through the stream-function inversion:
/// for the partial mode eta (k1^2 |k1|^(2 beta) + k2^2 |k2|^(2 beta))/|k|^2.
MultiplierSpec current_diffusion_symbol(const PhysParams& params);

/// Stiff linear symbol per state field (zero for u and omega), with the J^2
/// mollifier factor folded in when params.epsilon > 0. The timestepper
/// integrates exactly against these.
std::vector<MultiplierSpec> state_linear_symbols(Formulation form, const PhysParams& params);

/// Smoothing by the radial symbol exp(-eps^2 |k|^2); identity at eps = 0,
/// norm non-increasing, commutes with every other multiplier here.
SpectralField mollify(const SpectralField& f, double epsilon);

struct RhsOptions {
    bool nonlinear = true;
    bool diffusion = true;
};

/// Nonlinear terms of the primitive system, assembled pseudo-spectrally with
/// dealiasing (and the mollifier wrap when params.epsilon > 0).
struct PrimitiveNonlinearTerms {
    SpectralField nu1, nu2;  // -u.grad u_i + b.grad b_i, before projection
    SpectralField nb1, nb2;  // b.grad u_i - u.grad b_i
    SpectralField cross12;   // b2 u1 - u2 b1 (only when with_cross)
    SpectralField cross21;   // b1 u2 - u1 b2 (only when with_cross)
};
PrimitiveNonlinearTerms primitive_nonlinear_terms(const MHDState& state, const PhysParams& params,
                                                  bool with_cross = false);

Increment rhs_primitive(const MHDState& state, const PhysParams& params,
                        const RhsOptions& opts = {});
Increment rhs_vorticity_current(const MHDState& state, const PhysParams& params,
                                const RhsOptions& opts = {});
Increment rhs(const MHDState& state, const PhysParams& params, const RhsOptions& opts = {});

/** Max-norm residual of the divergence-free product identity for the b1
 * equation, b.grad u1 - u.grad b1 = d2(b2 u1 - u2 b1), with both sides
 * assembled independently; component = 2 checks the mirror identity
 * b.grad u2 - u.grad b2 = d1(b1 u2 - u1 b2).
 */
double structure_identity_residual(const SpectralField& u1, const SpectralField& u2,
                                   const SpectralField& b1, const SpectralField& b2,
                                   int component = 1);

/// The divergence source injected by componentwise diffusion,
/// -(S_b1 d1 b1 + S_b2 d2 b2); identically zero for the isotropic modes on
/// divergence-free b, generically nonzero for the partial mode.
SpectralField divergence_production(const SpectralField& b1, const SpectralField& b2,
                                    const PhysParams& params);

// (u1,u2) regardless of formulation (reconstructs from omega when needed)
std::pair<SpectralField, SpectralField> velocity_of(const MHDState& state);
std::pair<SpectralField, SpectralField> magnetic_of(const MHDState& state);

/// max over collocation points of |u| + |b| (CFL speed)
double max_advection_speed(const MHDState& state);

bool state_all_finite(const MHDState& state);

}  // namespace amhd
