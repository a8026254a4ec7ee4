#pragma once

#include <array>
#include <cstdint>
#include <span>

#include "amhd/spectral_field.hpp"

namespace amhd {

/** The degree-0 homogeneous symbol
 *
 *   m(xi) = |xi1|^sigma xi2^2 / ((xi2^2)^(1+sigma/2) + (xi1^2)^(1+sigma/2)),
 *
 * with m(0) = 0. Young's inequality pins 0 <= m <= 1.
 */
struct HMSymbol {
    double sigma = 1.0;

    double eval(double xi1, double xi2) const {
        if (xi1 == 0.0 || xi2 == 0.0) return 0.0;
        const double a = xi2 * xi2, b = xi1 * xi1;
        const double denom = std::pow(a, 1.0 + 0.5 * sigma) + std::pow(b, 1.0 + 0.5 * sigma);
        return std::pow(std::abs(xi1), sigma) * a / denom;
    }
};

/// max over a log-radius x 1-degree sweep of the relative violation of
///   |xi1|^sigma xi2^2 <= (2/(2+sigma)) (xi2^2)^(1+sigma/2)
///                        + (sigma/(2+sigma)) (xi1^2)^(1+sigma/2)
double symbol_young_check(double sigma);

struct ShellSup {
    double radius = 0.0;
    std::array<double, 3> sup{};  // sup |xi|^k |grad^k m| for k = 0, 1, 2
};

/** Finite-difference suprema of |xi|^k |grad^k m| over dyadic shells
 * |xi| in {2^-5, ..., 2^10}, sampled at 1-degree increments with step
 * h = 1e-4 |xi|. Degree-0 homogeneity makes the rows shell-independent.
 */
std::vector<ShellSup> hm_condition_check(const HMSymbol& sym);

/// diagonal multiplication by m on the mode lattice
SpectralField apply_hm(const HMSymbol& sym, const SpectralField& f);

struct MixedReconstruction {
    double residual = 0.0;  // relative max-norm mismatch of the two assemblies
    double constant = 0.0;  // measured ||direct|| / (||route a|| + ||route b||)
};

/** Rebuilds the missing-direction derivative L1^sigma d2 d2 b1 from the
 * divergence-free pair (b1, b2): directly, and as T_m applied to
 * L2^sigma d2 d2 b1 - L1^sigma d1 d2 b2 (per-mode algebra under
 * k . b = 0 forces the minus sign). Input must be divergence-free.
 */
MixedReconstruction mixed_derivative_reconstruct(const SpectralField& b1, const SpectralField& b2,
                                                 double sigma);

struct LqRatio {
    double q = 0.0;
    double max_ratio = 0.0;  // max ||T_m f||_q / ||f||_q over the sampled fields
};

/// empirical L^q boundedness of T_m over seeded random dealiased fields
std::vector<LqRatio> lq_boundedness_study(double sigma, std::span<const double> qs, int n_fields,
                                          const Grid& grid, std::uint64_t seed);

}  // namespace amhd
