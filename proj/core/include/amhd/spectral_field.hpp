#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "amhd/grid.hpp"

namespace amhd {

/** One real scalar field stored as full-complex Fourier coefficients.
 *
 * Coefficients follow the convention f(x) = sum_k c(k) exp(i k.x), so a
 * field that is 1 everywhere has c(0,0) = 1. Conjugate symmetry
 * c(-k) = conj(c(k)) keeps the physical samples real; it is preserved by
 * every operation in this library and checked on inverse transform.
 */
class SpectralField {
public:
    SpectralField() = default;
    explicit SpectralField(const Grid& grid) : grid_(grid), c_(grid.size(), 0.0) {}

    const Grid& grid() const { return grid_; }
    std::size_t size() const { return c_.size(); }

    std::complex<double>* data() { return c_.data(); }
    const std::complex<double>* data() const { return c_.data(); }

    std::complex<double>& operator[](std::size_t i) { return c_[i]; }
    const std::complex<double>& operator[](std::size_t i) const { return c_[i]; }

    /// coefficient addressed by integer wavenumber
    std::complex<double>& at(int k1, int k2) {
        return c_[flat(k1, k2)];
    }
    const std::complex<double>& at(int k1, int k2) const {
        return c_[flat(k1, k2)];
    }

    void set_zero() { std::fill(c_.begin(), c_.end(), std::complex<double>(0.0)); }

    /// visit every mode as (k1, k2, coefficient)
    template <typename F>
    void for_each_mode(F&& f) {
        std::size_t idx = 0;
        for (int i1 = 0; i1 < grid_.n1; ++i1) {
            const int k1 = grid_.wave1(i1);
            for (int i2 = 0; i2 < grid_.n2; ++i2, ++idx) f(k1, grid_.wave2(i2), c_[idx]);
        }
    }
    template <typename F>
    void for_each_mode(F&& f) const {
        std::size_t idx = 0;
        for (int i1 = 0; i1 < grid_.n1; ++i1) {
            const int k1 = grid_.wave1(i1);
            for (int i2 = 0; i2 < grid_.n2; ++i2, ++idx) f(k1, grid_.wave2(i2), c_[idx]);
        }
    }

    SpectralField& operator+=(const SpectralField& o) {
        require_same_grid(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    SpectralField& operator-=(const SpectralField& o) {
        require_same_grid(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    SpectralField& operator*=(double s) {
        for (auto& c : c_) c *= s;
        return *this;
    }

    void require_same_grid(const SpectralField& o) const {
        if (!(grid_ == o.grid_)) throw std::invalid_argument("SpectralField: grid mismatch");
    }

private:
    std::size_t flat(int k1, int k2) const {
        if (!grid_.valid_wave(k1, k2))
            throw std::out_of_range("SpectralField::at: wavenumber outside grid");
        return static_cast<std::size_t>(grid_.index1(k1)) * grid_.n2 + grid_.index2(k2);
    }

    Grid grid_;
    std::vector<std::complex<double>> c_;
};

inline SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
inline SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
inline SpectralField operator*(double s, SpectralField f) { return f *= s; }

/// y += a*x
inline void axpy(double a, const SpectralField& x, SpectralField& y) {
    y.require_same_grid(x);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

/// sum of |c(k)|^2 over all modes; the physical L2 norm squared is (2pi)^2 times this
inline double sum_sq(const SpectralField& f) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += std::norm(f[i]);
    return s;
}

/// integral of f^2 over the torus, by Parseval
inline double l2_norm_sq(const SpectralField& f) {
    constexpr double four_pi_sq = 4.0 * std::numbers::pi * std::numbers::pi;
    return four_pi_sq * sum_sq(f);
}

inline double l2_norm(const SpectralField& f) { return std::sqrt(l2_norm_sq(f)); }

inline double max_abs_coeff(const SpectralField& f) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) m = std::max(m, std::abs(f[i]));
    return m;
}

/// max over modes of |c(k) - conj(c(-k))|
inline double conjugate_symmetry_error(const SpectralField& f) {
    double e = 0.0;
    const Grid& g = f.grid();
    f.for_each_mode([&](int k1, int k2, const std::complex<double>& c) {
        const int m1 = (k1 == -g.n1 / 2) ? k1 : -k1;
        const int m2 = (k2 == -g.n2 / 2) ? k2 : -k2;
        e = std::max(e, std::abs(c - std::conj(f.at(m1, m2))));
    });
    return e;
}

inline bool all_finite(const SpectralField& f) {
    for (std::size_t i = 0; i < f.size(); ++i)
        if (!std::isfinite(f[i].real()) || !std::isfinite(f[i].imag())) return false;
    return true;
}

}  // namespace amhd
