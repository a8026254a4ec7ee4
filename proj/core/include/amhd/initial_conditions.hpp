#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "amhd/dynamics.hpp"

namespace amhd {

/** Named initial-condition presets. All are smooth, zero-mean, dealiased and
 * divergence-free where a vector field is implied:
 *  - "orszag-tang-like": omega0 = 2 cos x1 cos x2, j0 = 0.5 Lap(cos 2x1 cos x2)
 *  - "taylor-green":     omega0 as above, b0 = 0
 *  - "random-divfree":   seeded |k|^-3 spectrum, cutoff |k| <= n/4, projected
 *  - "single-mode":      one cosine mode in the named component
 *  - "snapshot":         reload from snapshot_path
 */
struct InitialSpec {
    std::string preset = "orszag-tang-like";
    int mode_k1 = 3;
    int mode_k2 = 2;
    std::string mode_component = "b1";  // u | b1 | b2 (primitive), omega | j (vorticity-current)
    double mode_amplitude = 1.0;
    std::uint64_t seed = 1;
    std::string snapshot_path;
};

MHDState make_initial(const InitialSpec& spec, const Grid& grid, const PhysParams& params);

/// amplitude * cos(k1 x1) * cos(k2 x2)
SpectralField cosine_product_mode(const Grid& grid, int k1, int k2, double amplitude);

/// amplitude * cos(k1 x1 + k2 x2)
SpectralField cosine_mode(const Grid& grid, int k1, int k2, double amplitude);

/// deterministic standard normal from the raw engine (Box-Muller)
double gaussian_sample(std::mt19937_64& rng);

/// seeded random divergence-free pair with an |k|^-3 spectrum cut at |k| <= n/4
std::pair<SpectralField, SpectralField> random_divfree_pair(const Grid& grid,
                                                            std::mt19937_64& rng);

}  // namespace amhd
