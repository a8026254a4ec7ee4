#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "amhd/spectral_field.hpp"

namespace amhd {

struct TransformError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact DFT coefficients of real samples (row-major, x1-major).
SpectralField forward_transform(std::span<const double> physical, const Grid& grid);

/// Real collocation samples of f. Throws TransformError if the imaginary
/// residue exceeds 1e-13 times the field magnitude (broken conjugate symmetry).
std::vector<double> inverse_transform(const SpectralField& f);

/// Zero all modes outside the 2/3 retention window. Idempotent.
SpectralField dealias(SpectralField f);
void dealias_in_place(SpectralField& f);

/// Pseudo-spectral product: transform to physical space, multiply, transform
/// back, dealias. For 2/3-dealiased inputs this equals the exact coefficient
/// convolution restricted to the retained modes.
SpectralField pointwise_product(const SpectralField& f, const SpectralField& g);

}  // namespace amhd
