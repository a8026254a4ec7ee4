#include "amhd/multiplier_lab.hpp"

#include <cmath>
#include <random>

#include "amhd/operators.hpp"
#include "amhd/transforms.hpp"

namespace amhd {

double symbol_young_check(double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("symbol_young_check: requires sigma > 0");
    const double wa = 2.0 / (2.0 + sigma);
    const double wb = sigma / (2.0 + sigma);
    double worst = 0.0;
    for (int ir = 0; ir <= 60; ++ir) {
        const double rho = std::pow(10.0, -3.0 + 0.1 * ir);
        for (int deg = 0; deg < 360; ++deg) {
            const double th = deg * std::numbers::pi / 180.0;
            const double xi1 = rho * std::cos(th), xi2 = rho * std::sin(th);
            const double lhs = std::pow(std::abs(xi1), sigma) * xi2 * xi2;
            const double rhs = wa * std::pow(xi2 * xi2, 1.0 + 0.5 * sigma) +
                               wb * std::pow(xi1 * xi1, 1.0 + 0.5 * sigma);
            if (rhs > 0.0) worst = std::max(worst, (lhs - rhs) / rhs);
        }
    }
    return std::max(worst, 0.0);
}

std::vector<ShellSup> hm_condition_check(const HMSymbol& sym) {
    std::vector<ShellSup> out;
    for (int e = -5; e <= 10; ++e) {
        const double rho = std::ldexp(1.0, e);
        const double h = 1e-4 * rho;
        ShellSup shell;
        shell.radius = rho;
        for (int deg = 0; deg < 360; ++deg) {
            const double th = deg * std::numbers::pi / 180.0;
            const double x = rho * std::cos(th), y = rho * std::sin(th);
            const double m0 = sym.eval(x, y);
            const double d1 = (sym.eval(x + h, y) - sym.eval(x - h, y)) / (2.0 * h);
            const double d2 = (sym.eval(x, y + h) - sym.eval(x, y - h)) / (2.0 * h);
            const double d11 = (sym.eval(x + h, y) - 2.0 * m0 + sym.eval(x - h, y)) / (h * h);
            const double d22 = (sym.eval(x, y + h) - 2.0 * m0 + sym.eval(x, y - h)) / (h * h);
            const double d12 = (sym.eval(x + h, y + h) - sym.eval(x + h, y - h) -
                                sym.eval(x - h, y + h) + sym.eval(x - h, y - h)) /
                               (4.0 * h * h);
            const double g1 = std::hypot(d1, d2);
            const double g2 = std::sqrt(d11 * d11 + 2.0 * d12 * d12 + d22 * d22);
            if (!std::isfinite(g1) || !std::isfinite(g2))
                throw std::runtime_error("hm_condition_check: finite differences broke down");
            shell.sup[0] = std::max(shell.sup[0], std::abs(m0));
            shell.sup[1] = std::max(shell.sup[1], rho * g1);
            shell.sup[2] = std::max(shell.sup[2], rho * rho * g2);
        }
        out.push_back(shell);
    }
    return out;
}

SpectralField apply_hm(const HMSymbol& sym, const SpectralField& f) {
    SpectralField out(f.grid());
    const Grid& g = f.grid();
    std::size_t idx = 0;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        const double k1 = g.wave1(i1);
        for (int i2 = 0; i2 < g.n2; ++i2, ++idx) out[idx] = sym.eval(k1, g.wave2(i2)) * f[idx];
    }
    return out;
}

MixedReconstruction mixed_derivative_reconstruct(const SpectralField& b1, const SpectralField& b2,
                                                 double sigma) {
    b1.require_same_grid(b2);
    const double scale = std::max({max_abs_coeff(b1), max_abs_coeff(b2), 1e-300});
    if (max_divergence_coeff(b1, b2) > 1e-12 * scale)
        throw std::invalid_argument("mixed_derivative_reconstruct: input is not divergence-free");

    const Grid& g = b1.grid();
    const HMSymbol sym{sigma};
    SpectralField direct(g), combo(g), route_a(g), route_b(g);
    std::size_t idx = 0;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        const double k1 = g.wave1(i1);
        for (int i2 = 0; i2 < g.n2; ++i2, ++idx) {
            const double k2 = g.wave2(i2);
            const double a1 = std::abs(k1), a2 = std::abs(k2);
            const double l1 = a1 == 0.0 ? 0.0 : std::pow(a1, sigma);
            const double l2 = a2 == 0.0 ? 0.0 : std::pow(a2, sigma);
            direct[idx] = -l1 * k2 * k2 * b1[idx];
            route_a[idx] = -l2 * k2 * k2 * b1[idx];       // L2^s d2 d2 b1
            route_b[idx] = -l1 * k1 * k2 * b2[idx];       // L1^s d1 d2 b2
            combo[idx] = route_a[idx] - route_b[idx];
        }
    }
    const SpectralField recon = apply_hm(sym, combo);

    const auto d_phys = inverse_transform(direct);
    const auto r_phys = inverse_transform(recon);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < d_phys.size(); ++i) {
        num = std::max(num, std::abs(d_phys[i] - r_phys[i]));
        den = std::max(den, std::abs(d_phys[i]));
    }
    MixedReconstruction res;
    res.residual = num / std::max(den, 1e-300);
    res.constant = l2_norm(direct) / std::max(l2_norm(route_a) + l2_norm(route_b), 1e-300);
    return res;
}

namespace {

// deterministic standard normals (Box-Muller over the raw engine)
double gauss(std::mt19937_64& rng) {
    const double u1 = (rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    const double u2 = (rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SpectralField random_dealiased_field(const Grid& g, std::mt19937_64& rng) {
    SpectralField f(g);
    for (int k1 = -g.n1 / 2 + 1; k1 < g.n1 / 2; ++k1) {
        for (int k2 = -g.n2 / 2 + 1; k2 < g.n2 / 2; ++k2) {
            if (!g.retained(k1, k2) || (k1 == 0 && k2 == 0)) continue;
            const double ksq = static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2;
            const double amp = std::pow(ksq, -1.0);
            f.at(k1, k2) = amp * std::complex<double>(gauss(rng), gauss(rng));
        }
    }
    // symmetrize so the physical field is real
    SpectralField s(g);
    f.for_each_mode([&](int k1, int k2, std::complex<double>& c) {
        if (k1 == -g.n1 / 2 || k2 == -g.n2 / 2) return;
        s.at(k1, k2) = 0.5 * (c + std::conj(f.at(-k1, -k2)));
    });
    return s;
}

double lq_norm_phys(const SpectralField& f, double q) {
    const auto p = inverse_transform(f);
    double s = 0.0;
    for (double v : p) s += std::pow(std::abs(v), q);
    return std::pow(s * f.grid().cell_area(), 1.0 / q);
}

}  // namespace

std::vector<LqRatio> lq_boundedness_study(double sigma, std::span<const double> qs, int n_fields,
                                          const Grid& grid, std::uint64_t seed) {
    const HMSymbol sym{sigma};
    std::vector<LqRatio> out;
    for (double q : qs) out.push_back({q, 0.0});
    std::mt19937_64 rng(seed);
    for (int i = 0; i < n_fields; ++i) {
        const SpectralField f = random_dealiased_field(grid, rng);
        const SpectralField tf = apply_hm(sym, f);
        for (std::size_t k = 0; k < out.size(); ++k) {
            const double nf = lq_norm_phys(f, out[k].q);
            const double ntf = lq_norm_phys(tf, out[k].q);
            if (nf > 0.0) out[k].max_ratio = std::max(out[k].max_ratio, ntf / nf);
        }
    }
    return out;
}

}  // namespace amhd
