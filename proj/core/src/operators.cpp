#include "amhd/operators.hpp"

#include <cmath>

namespace amhd {

MultiplierSpec MultiplierSpec::directional1(double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("multiplier exponent must be >= 0");
    return {MultiplierKind::directional1, gamma, {}};
}
MultiplierSpec MultiplierSpec::directional2(double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("multiplier exponent must be >= 0");
    return {MultiplierKind::directional2, gamma, {}};
}
MultiplierSpec MultiplierSpec::isotropic(double gamma) {
    if (gamma < 0.0) throw std::invalid_argument("multiplier exponent must be >= 0");
    return {MultiplierKind::isotropic, gamma, {}};
}
MultiplierSpec MultiplierSpec::derivative1() { return {MultiplierKind::derivative1, 0.0, {}}; }
MultiplierSpec MultiplierSpec::derivative2() { return {MultiplierKind::derivative2, 0.0, {}}; }
MultiplierSpec MultiplierSpec::custom_symbol(std::function<std::complex<double>(int, int)> s) {
    return {MultiplierKind::custom, 0.0, std::move(s)};
}

namespace {
// |base|^gamma with the 0^0 convention pinned to 0 (the gamma -> 0+ limit)
inline double frac_pow(double base, double gamma) {
    return base == 0.0 ? 0.0 : std::pow(base, gamma);
}
}  // namespace

std::complex<double> MultiplierSpec::eval(int k1, int k2) const {
    switch (kind) {
        case MultiplierKind::directional1:
            return frac_pow(std::abs(static_cast<double>(k1)), exponent);
        case MultiplierKind::directional2:
            return frac_pow(std::abs(static_cast<double>(k2)), exponent);
        case MultiplierKind::isotropic:
            return frac_pow(std::sqrt(static_cast<double>(k1) * k1 + static_cast<double>(k2) * k2),
                            exponent);
        case MultiplierKind::derivative1:
            return {0.0, static_cast<double>(k1)};
        case MultiplierKind::derivative2:
            return {0.0, static_cast<double>(k2)};
        case MultiplierKind::custom:
            return symbol(k1, k2);
    }
    return 0.0;
}

SpectralField apply_multiplier(const MultiplierSpec& spec, const SpectralField& f) {
    SpectralField out(f.grid());
    std::size_t idx = 0;
    const Grid& g = f.grid();
    for (int i1 = 0; i1 < g.n1; ++i1) {
        const int k1 = g.wave1(i1);
        for (int i2 = 0; i2 < g.n2; ++i2, ++idx) {
            const std::complex<double>& c = f[idx];
            if (c == 0.0) continue;
            const std::complex<double> s = spec.eval(k1, g.wave2(i2));
            if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
                throw MultiplierError("apply_multiplier: non-finite symbol on an occupied mode");
            out[idx] = s * c;
        }
    }
    return out;
}

SpectralField dx1(const SpectralField& f) {
    SpectralField out(f.grid());
    std::size_t idx = 0;
    const Grid& g = f.grid();
    for (int i1 = 0; i1 < g.n1; ++i1) {
        const double k1 = g.wave1(i1);
        for (int i2 = 0; i2 < g.n2; ++i2, ++idx) out[idx] = std::complex<double>(0.0, k1) * f[idx];
    }
    return out;
}

SpectralField dx2(const SpectralField& f) {
    SpectralField out(f.grid());
    std::size_t idx = 0;
    const Grid& g = f.grid();
    for (int i1 = 0; i1 < g.n1; ++i1) {
        for (int i2 = 0; i2 < g.n2; ++i2, ++idx)
            out[idx] = std::complex<double>(0.0, g.wave2(i2)) * f[idx];
    }
    return out;
}

std::pair<SpectralField, SpectralField> leray_project(const SpectralField& v1,
                                                      const SpectralField& v2) {
    v1.require_same_grid(v2);
    const Grid& g = v1.grid();
    SpectralField p1(g), p2(g);
    std::size_t idx = 0;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        const double k1 = g.wave1(i1);
        for (int i2 = 0; i2 < g.n2; ++i2, ++idx) {
            const double k2 = g.wave2(i2);
            const double ksq = k1 * k1 + k2 * k2;
            if (ksq == 0.0) {
                p1[idx] = v1[idx];
                p2[idx] = v2[idx];
                continue;
            }
            const std::complex<double> kdotv = (k1 * v1[idx] + k2 * v2[idx]) / ksq;
            p1[idx] = v1[idx] - k1 * kdotv;
            p2[idx] = v2[idx] - k2 * kdotv;
        }
    }
    return {std::move(p1), std::move(p2)};
}

SpectralField curl2d(const SpectralField& v1, const SpectralField& v2) {
    v1.require_same_grid(v2);
    const Grid& g = v1.grid();
    SpectralField w(g);
    std::size_t idx = 0;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        const double k1 = g.wave1(i1);
        for (int i2 = 0; i2 < g.n2; ++i2, ++idx) {
            const double k2 = g.wave2(i2);
            w[idx] = std::complex<double>(0.0, 1.0) * (k1 * v2[idx] - k2 * v1[idx]);
        }
    }
    return w;
}

std::pair<SpectralField, SpectralField> biot_savart(const SpectralField& w) {
    const Grid& g = w.grid();
    if (std::abs(w.at(0, 0)) > 1e-13 * std::max(max_abs_coeff(w), 1e-300))
        throw std::invalid_argument("biot_savart: source has a nonzero mean mode");
    SpectralField v1(g), v2(g);
    std::size_t idx = 0;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        const double k1 = g.wave1(i1);
        for (int i2 = 0; i2 < g.n2; ++i2, ++idx) {
            const double k2 = g.wave2(i2);
            const double ksq = k1 * k1 + k2 * k2;
            if (ksq == 0.0) continue;
            // shared q keeps the reconstructed divergence at exact zero up to
            // one rounding of k1*k2*q
            const std::complex<double> q = w[idx] / ksq;
            v1[idx] = std::complex<double>(0.0, k2) * q;
            v2[idx] = std::complex<double>(0.0, -k1) * q;
        }
    }
    return {std::move(v1), std::move(v2)};
}

double max_divergence_coeff(const SpectralField& v1, const SpectralField& v2) {
    v1.require_same_grid(v2);
    const Grid& g = v1.grid();
    double m = 0.0;
    std::size_t idx = 0;
    for (int i1 = 0; i1 < g.n1; ++i1) {
        const double k1 = g.wave1(i1);
        for (int i2 = 0; i2 < g.n2; ++i2, ++idx) {
            const double k2 = g.wave2(i2);
            m = std::max(m, std::abs(k1 * v1[idx] + k2 * v2[idx]));
        }
    }
    return m;
}

}  // namespace amhd
