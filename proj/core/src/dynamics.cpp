#include "amhd/dynamics.hpp"

#include <cmath>

namespace amhd {

std::string to_string(DiffusionMode m) {
    switch (m) {
        case DiffusionMode::partial_directional: return "partial-directional";
        case DiffusionMode::full_fractional: return "full-fractional";
        case DiffusionMode::classical_laplacian: return "classical-laplacian";
    }
    return "?";
}

std::string to_string(Formulation f) {
    return f == Formulation::primitive ? "primitive" : "vorticity-current";
}

MHDState MHDState::primitive(SpectralField u1, SpectralField u2, SpectralField b1,
                             SpectralField b2, double t) {
    u1.require_same_grid(u2);
    u1.require_same_grid(b1);
    u1.require_same_grid(b2);
    std::vector<SpectralField> f;
    f.push_back(std::move(u1));
    f.push_back(std::move(u2));
    f.push_back(std::move(b1));
    f.push_back(std::move(b2));
    return MHDState(Formulation::primitive, std::move(f), t);
}

MHDState MHDState::vorticity_current(SpectralField omega, SpectralField j, double t) {
    omega.require_same_grid(j);
    std::vector<SpectralField> f;
    f.push_back(std::move(omega));
    f.push_back(std::move(j));
    return MHDState(Formulation::vorticity_current, std::move(f), t);
}

MHDState MHDState::with_fields(const MHDState& proto, std::vector<SpectralField> fields,
                               double t) {
    if (fields.size() != proto.num_fields())
        throw std::invalid_argument("MHDState::with_fields: wrong field count");
    return MHDState(proto.form_, std::move(fields), t);
}

MultiplierSpec diffusion_symbol(const PhysParams& params, BComponent component) {
    params.validate();
    const double eta = params.eta;
    const double p = 2.0 * params.beta;
    switch (params.diffusion) {
        case DiffusionMode::partial_directional:
            if (component == BComponent::b_iso)
                throw std::invalid_argument(
                    "diffusion_symbol: b_iso undefined for the partial-directional mode");
            if (component == BComponent::b1)
                return MultiplierSpec::custom_symbol([eta, p](int, int k2) {
                    return std::complex<double>(
                        k2 == 0 ? 0.0 : eta * std::pow(std::abs(static_cast<double>(k2)), p));
                });
            return MultiplierSpec::custom_symbol([eta, p](int k1, int) {
                return std::complex<double>(
                    k1 == 0 ? 0.0 : eta * std::pow(std::abs(static_cast<double>(k1)), p));
            });
        case DiffusionMode::full_fractional:
            return MultiplierSpec::custom_symbol([eta, p](int k1, int k2) {
                const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
                return std::complex<double>(ksq == 0.0 ? 0.0 : eta * std::pow(ksq, 0.5 * p));
            });
        case DiffusionMode::classical_laplacian:
            return MultiplierSpec::custom_symbol([eta](int k1, int k2) {
                return std::complex<double>(
                    eta * (static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2));
            });
    }
    throw std::logic_error("diffusion_symbol: unreachable");
}

MultiplierSpec current_diffusion_symbol(const PhysParams& params) {
    params.validate();
    const double eta = params.eta;
    const double p = 2.0 * params.beta;
    switch (params.diffusion) {
        case DiffusionMode::partial_directional:
            return MultiplierSpec::custom_symbol([eta, p](int k1, int k2) {
                const double a1 = std::abs(static_cast<double>(k1));
                const double a2 = std::abs(static_cast<double>(k2));
                const double ksq = a1 * a1 + a2 * a2;
                if (ksq == 0.0) return std::complex<double>(0.0);
                const double s1 = a1 == 0.0 ? 0.0 : a1 * a1 * std::pow(a1, p);
                const double s2 = a2 == 0.0 ? 0.0 : a2 * a2 * std::pow(a2, p);
                return std::complex<double>(eta * (s1 + s2) / ksq);
            });
        default:
            // isotropic diffusion commutes with curl
            return diffusion_symbol(params, BComponent::b_iso);
    }
}

SpectralField mollify(const SpectralField& f, double epsilon) {
    if (epsilon < 0.0) throw std::invalid_argument("mollify: requires epsilon >= 0");
    if (epsilon == 0.0) return f;
    SpectralField out(f.grid());
    const Grid& g = f.grid();
    const double e2 = epsilon * epsilon;
    std::size_t idx = 0;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        const double k1 = g.wave1(i1);
        for (int i2 = 0; i2 < g.n2; ++i2, ++idx) {
            const double k2 = g.wave2(i2);
            out[idx] = std::exp(-e2 * (k1 * k1 + k2 * k2)) * f[idx];
        }
    }
    return out;
}

namespace {

using Phys = std::vector<double>;

SpectralField spec_of(const Phys& p, const Grid& g) {
    SpectralField f = forward_transform(p, g);
    dealias_in_place(f);
    return f;
}

void pin_mean(Increment& inc) {
    for (auto& f : inc) f.at(0, 0) = 0.0;
}

}  // namespace

std::vector<MultiplierSpec> state_linear_symbols(Formulation form, const PhysParams& params) {
    auto zero = MultiplierSpec::custom_symbol([](int, int) { return std::complex<double>(0.0); });
    std::vector<MultiplierSpec> syms;
    if (form == Formulation::primitive) {
        syms = {zero, zero, diffusion_symbol(params, BComponent::b1),
                diffusion_symbol(params, BComponent::b2)};
    } else {
        syms = {zero, current_diffusion_symbol(params)};
    }
    if (params.epsilon > 0.0) {
        // the mollified system applies J^2 around the diffusion operator
        const double e2 = params.epsilon * params.epsilon;
        for (auto& s : syms) {
            auto inner = s;
            s = MultiplierSpec::custom_symbol([inner, e2](int k1, int k2) {
                const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
                return std::exp(-2.0 * e2 * ksq) * inner.eval(k1, k2);
            });
        }
    }
    return syms;
}

PrimitiveNonlinearTerms primitive_nonlinear_terms(const MHDState& state, const PhysParams& params,
                                                  bool with_cross) {
    if (state.formulation() != Formulation::primitive)
        throw std::logic_error("primitive_nonlinear_terms: state not in primitive form");
    const Grid& g = state.grid();
    const double eps = params.epsilon;
    auto J = [eps](const SpectralField& f) { return mollify(f, eps); };

    const SpectralField su1 = J(state.u1());
    const SpectralField su2 = J(state.u2());
    const SpectralField sb1 = J(state.b1());
    const SpectralField sb2 = J(state.b2());

    const Phys U1 = inverse_transform(su1), U2 = inverse_transform(su2);
    const Phys B1 = inverse_transform(sb1), B2 = inverse_transform(sb2);
    const Phys d1u1 = inverse_transform(dx1(su1)), d2u1 = inverse_transform(dx2(su1));
    const Phys d1u2 = inverse_transform(dx1(su2)), d2u2 = inverse_transform(dx2(su2));
    const Phys d1b1 = inverse_transform(dx1(sb1)), d2b1 = inverse_transform(dx2(sb1));
    const Phys d1b2 = inverse_transform(dx1(sb2)), d2b2 = inverse_transform(dx2(sb2));

    const std::size_t n = g.size();
    Phys pnu1(n), pnu2(n), pnb1(n), pnb2(n);
    for (std::size_t i = 0; i < n; ++i) {
        pnu1[i] = -(U1[i] * d1u1[i] + U2[i] * d2u1[i]) + (B1[i] * d1b1[i] + B2[i] * d2b1[i]);
        pnu2[i] = -(U1[i] * d1u2[i] + U2[i] * d2u2[i]) + (B1[i] * d1b2[i] + B2[i] * d2b2[i]);
        pnb1[i] = (B1[i] * d1u1[i] + B2[i] * d2u1[i]) - (U1[i] * d1b1[i] + U2[i] * d2b1[i]);
        pnb2[i] = (B1[i] * d1u2[i] + B2[i] * d2u2[i]) - (U1[i] * d1b2[i] + U2[i] * d2b2[i]);
    }

    PrimitiveNonlinearTerms out;
    out.nu1 = J(spec_of(pnu1, g));
    out.nu2 = J(spec_of(pnu2, g));
    out.nb1 = J(spec_of(pnb1, g));
    out.nb2 = J(spec_of(pnb2, g));
    if (with_cross) {
        Phys c12(n), c21(n);
        for (std::size_t i = 0; i < n; ++i) {
            c12[i] = B2[i] * U1[i] - U2[i] * B1[i];
            c21[i] = B1[i] * U2[i] - U1[i] * B2[i];
        }
        out.cross12 = J(spec_of(c12, g));
        out.cross21 = J(spec_of(c21, g));
    }
    return out;
}

Increment rhs_primitive(const MHDState& state, const PhysParams& params, const RhsOptions& opts) {
    const Grid& g = state.grid();
    Increment out(4, SpectralField(g));
    if (opts.nonlinear) {
        PrimitiveNonlinearTerms nl = primitive_nonlinear_terms(state, params);
        auto [pu1, pu2] = leray_project(nl.nu1, nl.nu2);
        out[0] = std::move(pu1);
        out[1] = std::move(pu2);
        out[2] = std::move(nl.nb1);
        out[3] = std::move(nl.nb2);
    }
    if (opts.diffusion) {
        const auto syms = state_linear_symbols(Formulation::primitive, params);
        for (std::size_t i = 0; i < 4; ++i)
            out[i] -= apply_multiplier(syms[i], state.fields()[i]);
    }
    pin_mean(out);
    return out;
}

Increment rhs_vorticity_current(const MHDState& state, const PhysParams& params,
                                const RhsOptions& opts) {
    if (state.formulation() != Formulation::vorticity_current)
        throw std::logic_error("rhs_vorticity_current: state not in vorticity-current form");
    const Grid& g = state.grid();
    Increment out(2, SpectralField(g));

    if (opts.nonlinear) {
        const double eps = params.epsilon;
        auto J = [eps](const SpectralField& f) { return mollify(f, eps); };

        auto [u1s, u2s] = biot_savart(state.omega());
        auto [b1s, b2s] = biot_savart(state.current());
        u1s = J(u1s); u2s = J(u2s); b1s = J(b1s); b2s = J(b2s);
        const SpectralField sw = J(state.omega());
        const SpectralField sj = J(state.current());

        const Phys U1 = inverse_transform(u1s), U2 = inverse_transform(u2s);
        const Phys B1 = inverse_transform(b1s), B2 = inverse_transform(b2s);
        const Phys W1 = inverse_transform(dx1(sw)), W2 = inverse_transform(dx2(sw));
        const Phys G1 = inverse_transform(dx1(sj)), G2 = inverse_transform(dx2(sj));
        // Q(u,b) = 2 d1b1 (d2u1 + d1u2) - 2 d1u1 (d2b1 + d1b2)
        const Phys d1b1 = inverse_transform(dx1(b1s));
        const Phys d1u1 = inverse_transform(dx1(u1s));
        const Phys shear_u = inverse_transform(dx2(u1s) + dx1(u2s));
        const Phys shear_b = inverse_transform(dx2(b1s) + dx1(b2s));

        const std::size_t n = g.size();
        Phys pdw(n), pdj(n);
        for (std::size_t i = 0; i < n; ++i) {
            pdw[i] = -(U1[i] * W1[i] + U2[i] * W2[i]) + (B1[i] * G1[i] + B2[i] * G2[i]);
            const double q = 2.0 * d1b1[i] * shear_u[i] - 2.0 * d1u1[i] * shear_b[i];
            pdj[i] = -(U1[i] * G1[i] + U2[i] * G2[i]) + (B1[i] * W1[i] + B2[i] * W2[i]) + q;
        }
        out[0] = J(spec_of(pdw, g));
        out[1] = J(spec_of(pdj, g));
    }
    if (opts.diffusion) {
        const auto syms = state_linear_symbols(Formulation::vorticity_current, params);
        out[1] -= apply_multiplier(syms[1], state.current());
    }
    pin_mean(out);
    return out;
}

Increment rhs(const MHDState& state, const PhysParams& params, const RhsOptions& opts) {
    return state.formulation() == Formulation::primitive
               ? rhs_primitive(state, params, opts)
               : rhs_vorticity_current(state, params, opts);
}

double structure_identity_residual(const SpectralField& u1, const SpectralField& u2,
                                   const SpectralField& b1, const SpectralField& b2,
                                   int component) {
    if (component != 1 && component != 2)
        throw std::invalid_argument("structure_identity_residual: component must be 1 or 2");
    const SpectralField& uc = component == 1 ? u1 : u2;
    const SpectralField& bc = component == 1 ? b1 : b2;
    // convective assembly of b.grad u_c - u.grad b_c
    SpectralField lhs = pointwise_product(b1, dx1(uc)) + pointwise_product(b2, dx2(uc)) -
                        pointwise_product(u1, dx1(bc)) - pointwise_product(u2, dx2(bc));
    // divergence-form assembly of the collapsed right-hand side
    SpectralField rhs_field =
        component == 1
            ? dx2(pointwise_product(b2, u1) - pointwise_product(u2, b1))
            : dx1(pointwise_product(b1, u2) - pointwise_product(u1, b2));
    const Phys diff = inverse_transform(lhs - rhs_field);
    double m = 0.0;
    for (double v : diff) m = std::max(m, std::abs(v));
    return m;
}

SpectralField divergence_production(const SpectralField& b1, const SpectralField& b2,
                                    const PhysParams& params) {
    b1.require_same_grid(b2);
    const BComponent c1 =
        params.diffusion == DiffusionMode::partial_directional ? BComponent::b1 : BComponent::b_iso;
    const BComponent c2 =
        params.diffusion == DiffusionMode::partial_directional ? BComponent::b2 : BComponent::b_iso;
    SpectralField out = apply_multiplier(diffusion_symbol(params, c1), dx1(b1)) +
                        apply_multiplier(diffusion_symbol(params, c2), dx2(b2));
    out *= -1.0;
    return out;
}

std::pair<SpectralField, SpectralField> velocity_of(const MHDState& state) {
    if (state.formulation() == Formulation::primitive) return {state.u1(), state.u2()};
    return biot_savart(state.omega());
}

std::pair<SpectralField, SpectralField> magnetic_of(const MHDState& state) {
    if (state.formulation() == Formulation::primitive) return {state.b1(), state.b2()};
    return biot_savart(state.current());
}

double max_advection_speed(const MHDState& state) {
    auto [u1, u2] = velocity_of(state);
    auto [b1, b2] = magnetic_of(state);
    const Phys U1 = inverse_transform(u1), U2 = inverse_transform(u2);
    const Phys B1 = inverse_transform(b1), B2 = inverse_transform(b2);
    double m = 0.0;
    for (std::size_t i = 0; i < U1.size(); ++i) {
        const double s = std::hypot(U1[i], U2[i]) + std::hypot(B1[i], B2[i]);
        m = std::max(m, s);
    }
    return m;
}

bool state_all_finite(const MHDState& state) {
    for (const auto& f : state.fields())
        if (!all_finite(f)) return false;
    return true;
}

}  // namespace amhd
