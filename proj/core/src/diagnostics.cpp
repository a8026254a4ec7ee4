#include "amhd/diagnostics.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace amhd {

namespace {

constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;

double weighted_sum_sq(const SpectralField& f, auto&& weight) {
    double s = 0.0;
    f.for_each_mode([&](int k1, int k2, const std::complex<double>& c) {
        if (c != 0.0) s += weight(k1, k2) * std::norm(c);
    });
    return four_pi_sq * s;
}

double lq_norm(std::span<const double> magnitude, double q, double cell) {
    double s = 0.0;
    for (double v : magnitude) s += std::pow(std::abs(v), q);
    return std::pow(s * cell, 1.0 / q);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

DiagRecord record(const MHDState& state, const PhysParams& params, const DiagConfig& cfg) {
    DiagRecord r;
    r.t = state.time();
    r.finite = state_all_finite(state);
    if (!r.finite) return r;

    const Grid& g = state.grid();
    const double cell = g.cell_area();
    const double beta = params.beta;

    auto [u1, u2] = velocity_of(state);
    auto [b1, b2] = magnetic_of(state);
    SpectralField omega = state.formulation() == Formulation::vorticity_current
                              ? state.omega()
                              : curl2d(u1, u2);
    SpectralField j = state.formulation() == Formulation::vorticity_current
                          ? state.current()
                          : curl2d(b1, b2);

    r.e_u = 0.5 * (l2_norm_sq(u1) + l2_norm_sq(u2));
    r.e_b = 0.5 * (l2_norm_sq(b1) + l2_norm_sq(b2));
    r.enstrophy = 0.5 * l2_norm_sq(omega);
    r.current = 0.5 * l2_norm_sq(j);

    auto pow_abs = [](int k, double p) {
        return k == 0 ? 0.0 : std::pow(std::abs(static_cast<double>(k)), p);
    };
    r.h_b = weighted_sum_sq(b1, [&](int, int k2) { return pow_abs(k2, 2.0 * beta); }) +
            weighted_sum_sq(b2, [&](int k1, int) { return pow_abs(k1, 2.0 * beta); });
    r.hgrad_b = weighted_sum_sq(b1,
                                [&](int k1, int k2) {
                                    const double ksq =
                                        static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
                                    return ksq * pow_abs(k2, 2.0 * beta);
                                }) +
                weighted_sum_sq(b2, [&](int k1, int k2) {
                    const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
                    return ksq * pow_abs(k1, 2.0 * beta);
                });
    r.grad_j_l2 = std::sqrt(weighted_sum_sq(j, [](int k1, int k2) {
        return static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
    }));

    for (double s : cfg.sobolev_s) {
        auto w = [s](int k1, int k2) {
            return std::pow(1.0 + static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2, s);
        };
        r.sobolev.push_back(std::sqrt(weighted_sum_sq(u1, w) + weighted_sum_sq(u2, w) +
                                      weighted_sum_sq(b1, w) + weighted_sum_sq(b2, w)));
    }

    const auto U1 = inverse_transform(u1), U2 = inverse_transform(u2);
    const auto B1 = inverse_transform(b1), B2 = inverse_transform(b2);
    const auto W = inverse_transform(omega), J = inverse_transform(j);
    const auto D1B1 = inverse_transform(dx1(b1)), D2B1 = inverse_transform(dx2(b1));
    const auto D1B2 = inverse_transform(dx1(b2)), D2B2 = inverse_transform(dx2(b2));
    const auto DIV = inverse_transform(dx1(b1) + dx2(b2));

    const std::size_t n = g.size();
    std::vector<double> grad_b_mag(n), j_mag(n), w_mag(n);
    for (std::size_t i = 0; i < n; ++i) {
        grad_b_mag[i] = std::sqrt(D1B1[i] * D1B1[i] + D2B1[i] * D2B1[i] + D1B2[i] * D1B2[i] +
                                  D2B2[i] * D2B2[i]);
        j_mag[i] = std::abs(J[i]);
        w_mag[i] = std::abs(W[i]);
        r.max_u = std::max(r.max_u, std::hypot(U1[i], U2[i]));
        r.max_b = std::max(r.max_b, std::hypot(B1[i], B2[i]));
        r.max_omega = std::max(r.max_omega, w_mag[i]);
        r.div_b = std::max(r.div_b, std::abs(DIV[i]));
    }
    for (double q : cfg.lq) {
        r.grad_b_lq.push_back(lq_norm(grad_b_mag, q, cell));
        r.j_lq.push_back(lq_norm(j_mag, q, cell));
        r.omega_lq.push_back(lq_norm(w_mag, q, cell));
    }

    // I = int Q(u,b) j dx with Q = 2 d1b1 (d2u1 + d1u2) - 2 d1u1 (d2b1 + d1b2)
    const auto D1U1 = inverse_transform(dx1(u1));
    const auto SHU = inverse_transform(dx2(u1) + dx1(u2));
    double iqj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double q = 2.0 * D1B1[i] * SHU[i] - 2.0 * D1U1[i] * (D2B1[i] + D1B2[i]);
        iqj += q * J[i];
    }
    r.i_qj = iqj * cell;

    return r;
}

double energy_law_residual(std::span<const DiagRecord> series, double eta) {
    if (series.size() < 3)
        throw std::invalid_argument("energy_law_residual: needs at least 3 records");
    const double e0 = 2.0 * (series[0].e_u + series[0].e_b);
    if (e0 <= 0.0) throw std::invalid_argument("energy_law_residual: zero initial energy");
    double integral = 0.0, worst = 0.0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double dt = series[i].t - series[i - 1].t;
        integral += 0.5 * dt * (series[i].h_b + series[i - 1].h_b);
        const double e = 2.0 * (series[i].e_u + series[i].e_b);
        worst = std::max(worst, std::abs(e + 2.0 * eta * integral - e0) / e0);
    }
    return worst;
}

void fill_energy_residuals(std::span<DiagRecord> series, double eta) {
    if (series.size() < 2) return;
    const double e0 = 2.0 * (series[0].e_u + series[0].e_b);
    if (e0 <= 0.0) return;
    double integral = 0.0;
    series[0].energy_residual = 0.0;
    for (std::size_t i = 1; i < series.size(); ++i) {
        const double dt = series[i].t - series[i - 1].t;
        integral += 0.5 * dt * (series[i].h_b + series[i - 1].h_b);
        const double e = 2.0 * (series[i].e_u + series[i].e_b);
        series[i].energy_residual = std::abs(e + 2.0 * eta * integral - e0) / e0;
    }
}

double h1_law_residual(std::span<const DiagRecord> series, double eta) {
    if (series.size() < 5)
        throw std::invalid_argument("h1_law_residual: needs at least 5 records");
    const double h = series[1].t - series[0].t;
    for (std::size_t i = 1; i < series.size(); ++i)
        if (std::abs((series[i].t - series[i - 1].t) - h) > 1e-9 * std::max(h, 1.0))
            throw std::invalid_argument("h1_law_residual: non-uniform cadence");

    double scale = 1.0;
    for (const auto& r : series)
        scale = std::max(scale, eta * r.hgrad_b + std::abs(r.i_qj));

    double worst = 0.0;
    for (std::size_t i = 2; i + 2 < series.size(); ++i) {
        auto f = [&](std::size_t k) { return series[k].enstrophy + series[k].current; };
        const double dfdt =
            (-f(i + 2) + 8.0 * f(i + 1) - 8.0 * f(i - 1) + f(i - 2)) / (12.0 * h);
        worst = std::max(worst, std::abs(dfdt + eta * series[i].hgrad_b - series[i].i_qj));
    }
    return worst / scale;
}

std::vector<std::string> diag_csv_columns(const DiagConfig& cfg) {
    std::vector<std::string> cols = {"t",    "E_u",       "E_b",    "H_b",
                                     "Hgrad_b", "enstrophy", "current"};
    for (double s : cfg.sobolev_s) cols.push_back("H" + fmt(s) + "_ub");
    for (double q : cfg.lq) cols.push_back("grad_b_L" + fmt(q));
    for (double q : cfg.lq) cols.push_back("j_L" + fmt(q));
    for (double q : cfg.lq) cols.push_back("omega_L" + fmt(q));
    cols.insert(cols.end(), {"max_u", "max_b", "div_b", "energy_residual", "max_omega",
                             "grad_j_L2", "I_Qj"});
    return cols;
}

void write_diag_csv(std::ostream& os, const PhysParams& params, const Grid& grid, double dt,
                    std::span<const DiagRecord> series, const DiagConfig& cfg) {
    os << "# eta=" << fmt(params.eta) << " beta=" << fmt(params.beta)
       << " mode=" << to_string(params.diffusion)
       << " formulation=" << to_string(params.formulation) << " N=" << grid.n1
       << " dt=" << fmt(dt) << "\n";
    const auto cols = diag_csv_columns(cfg);
    for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
    os << "\n";
    for (const auto& r : series) {
        std::vector<double> row = {r.t, r.e_u, r.e_b, r.h_b, r.hgrad_b, r.enstrophy, r.current};
        row.insert(row.end(), r.sobolev.begin(), r.sobolev.end());
        row.insert(row.end(), r.grad_b_lq.begin(), r.grad_b_lq.end());
        row.insert(row.end(), r.j_lq.begin(), r.j_lq.end());
        row.insert(row.end(), r.omega_lq.begin(), r.omega_lq.end());
        row.insert(row.end(), {r.max_u, r.max_b, r.div_b, r.energy_residual, r.max_omega,
                               r.grad_j_l2, r.i_qj});
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt(row[i]);
        os << "\n";
    }
}

}  // namespace amhd
