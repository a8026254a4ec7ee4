#pragma once

#include <functional>
#include <utility>

#include "amhd/spectral_field.hpp"

namespace amhd {

enum class MultiplierKind {
    directional1,  // |k1|^gamma
    directional2,  // |k2|^gamma
    isotropic,     // |k|^gamma
    derivative1,   // i k1
    derivative2,   // i k2
    custom,
};

/** A diagonal Fourier operator, either one of the named fractional /
 * derivative kinds or an arbitrary symbol of (k1,k2).
 *
 * Fractional symbols take the value 0 where their base vanishes (the
 * gamma -> 0+ limit), so gamma = 0 acts as the identity off that set.
 */
struct MultiplierSpec {
    MultiplierKind kind = MultiplierKind::custom;
    double exponent = 0.0;
    std::function<std::complex<double>(int, int)> symbol;

    static MultiplierSpec directional1(double gamma);
    static MultiplierSpec directional2(double gamma);
    static MultiplierSpec isotropic(double gamma);
    static MultiplierSpec derivative1();
    static MultiplierSpec derivative2();
    static MultiplierSpec custom_symbol(std::function<std::complex<double>(int, int)> s);

    std::complex<double> eval(int k1, int k2) const;
};

struct MultiplierError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// coeff'(k) = symbol(k) * coeff(k). Throws MultiplierError if the symbol is
/// non-finite on a mode carrying a nonzero coefficient.
SpectralField apply_multiplier(const MultiplierSpec& spec, const SpectralField& f);

// partial derivatives as multipliers
SpectralField dx1(const SpectralField& f);
SpectralField dx2(const SpectralField& f);

/// Projection onto divergence-free vector fields: per mode k != 0,
/// v -> v - k (k.v)/|k|^2; the k = 0 mode passes through.
std::pair<SpectralField, SpectralField> leray_project(const SpectralField& v1,
                                                      const SpectralField& v2);

/// scalar curl d1 v2 - d2 v1
SpectralField curl2d(const SpectralField& v1, const SpectralField& v2);

/// Divergence-free velocity with the given scalar curl, via the stream
/// function: v1 = i k2 w/|k|^2, v2 = -i k1 w/|k|^2, so curl2d(v) = w and the
/// k = 0 mode stays zero. Requires w to have (numerically) zero mean.
std::pair<SpectralField, SpectralField> biot_savart(const SpectralField& w);

/// max over modes of |k . v(k)|
double max_divergence_coeff(const SpectralField& v1, const SpectralField& v2);

}  // namespace amhd
