#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace amhd {

/** Periodic computational grid on the torus [0,2pi)^2.
 *
 * Mode counts must be even and at least 8. Integer wavenumbers run over
 * k1 in {-n1/2,...,n1/2-1} and k2 in {-n2/2,...,n2/2-1}; storage uses the
 * usual FFT layout where wavenumber k lives at index (k mod n).
 */
struct Grid {
    int n1 = 0;
    int n2 = 0;

    Grid() = default;
    Grid(int n1_, int n2_) : n1(n1_), n2(n2_) {
        if (n1 < 8 || n2 < 8 || n1 % 2 != 0 || n2 % 2 != 0)
            throw std::invalid_argument("Grid: mode counts must be even and >= 8");
    }

    std::size_t size() const { return static_cast<std::size_t>(n1) * n2; }

    // wavenumber of a storage index
    int wave1(int i1) const { return i1 < n1 / 2 ? i1 : i1 - n1; }
    int wave2(int i2) const { return i2 < n2 / 2 ? i2 : i2 - n2; }

    // storage index of a wavenumber
    int index1(int k1) const { return k1 >= 0 ? k1 : k1 + n1; }
    int index2(int k2) const { return k2 >= 0 ? k2 : k2 + n2; }

    bool valid_wave(int k1, int k2) const {
        return k1 >= -n1 / 2 && k1 < n1 / 2 && k2 >= -n2 / 2 && k2 < n2 / 2;
    }

    // 2/3-rule retention window: modes with 3|k| > n are aliased by quadratic
    // products and get zeroed
    bool retained(int k1, int k2) const {
        return 3 * std::abs(k1) <= n1 && 3 * std::abs(k2) <= n2;
    }

    // physical collocation point of sample (i1,i2)
    double x1(int i1) const { return 2.0 * std::numbers::pi * i1 / n1; }
    double x2(int i2) const { return 2.0 * std::numbers::pi * i2 / n2; }

    /// quadrature weight of one uniform sample, (2pi)^2 / (n1 n2)
    double cell_area() const {
        return 4.0 * std::numbers::pi * std::numbers::pi / (static_cast<double>(n1) * n2);
    }

    bool operator==(const Grid&) const = default;
};

}  // namespace amhd
