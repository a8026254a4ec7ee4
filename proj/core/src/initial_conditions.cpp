#include "amhd/initial_conditions.hpp"

#include <cmath>

#include "amhd/snapshot.hpp"

namespace amhd {

SpectralField cosine_product_mode(const Grid& grid, int k1, int k2, double amplitude) {
    SpectralField f(grid);
    const double c = amplitude / 4.0;
    f.at(k1, k2) += c;
    f.at(k1, -k2) += c;
    f.at(-k1, k2) += c;
    f.at(-k1, -k2) += c;
    return f;
}

SpectralField cosine_mode(const Grid& grid, int k1, int k2, double amplitude) {
    SpectralField f(grid);
    f.at(k1, k2) += amplitude / 2.0;
    f.at(-k1, -k2) += amplitude / 2.0;
    return f;
}

double gaussian_sample(std::mt19937_64& rng) {
    const double u1 = (rng() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    const double u2 = (rng() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::pair<SpectralField, SpectralField> random_divfree_pair(const Grid& grid,
                                                            std::mt19937_64& rng) {
    SpectralField raw1(grid), raw2(grid);
    const double cutoff = std::min(grid.n1, grid.n2) / 4.0;
    for (int k1 = -grid.n1 / 2 + 1; k1 < grid.n1 / 2; ++k1) {
        for (int k2 = -grid.n2 / 2 + 1; k2 < grid.n2 / 2; ++k2) {
            if (k1 == 0 && k2 == 0) continue;
            const double kk = std::hypot(static_cast<double>(k1), static_cast<double>(k2));
            if (kk > cutoff) continue;
            const double amp = std::pow(kk, -3.0);
            raw1.at(k1, k2) = amp * std::complex<double>(gaussian_sample(rng),
                                                         gaussian_sample(rng));
            raw2.at(k1, k2) = amp * std::complex<double>(gaussian_sample(rng),
                                                         gaussian_sample(rng));
        }
    }
    SpectralField f1(grid), f2(grid);
    raw1.for_each_mode([&](int k1, int k2, std::complex<double>& c) {
        if (k1 == -grid.n1 / 2 || k2 == -grid.n2 / 2) return;
        f1.at(k1, k2) = 0.5 * (c + std::conj(raw1.at(-k1, -k2)));
        f2.at(k1, k2) = 0.5 * (raw2.at(k1, k2) + std::conj(raw2.at(-k1, -k2)));
    });
    auto [v1, v2] = leray_project(f1, f2);
    dealias_in_place(v1);
    dealias_in_place(v2);
    v1.at(0, 0) = 0.0;
    v2.at(0, 0) = 0.0;
    return {std::move(v1), std::move(v2)};
}

namespace {

MHDState from_scalars(const SpectralField& omega, const SpectralField& j,
                      const PhysParams& params, double t) {
    if (params.formulation == Formulation::vorticity_current)
        return MHDState::vorticity_current(omega, j, t);
    auto [u1, u2] = biot_savart(omega);
    auto [b1, b2] = biot_savart(j);
    return MHDState::primitive(std::move(u1), std::move(u2), std::move(b1), std::move(b2), t);
}

}  // namespace

MHDState make_initial(const InitialSpec& spec, const Grid& grid, const PhysParams& params) {
    if (spec.preset == "orszag-tang-like") {
        const SpectralField omega = cosine_product_mode(grid, 1, 1, 2.0);
        // 0.5 * Lap(cos 2x1 cos x2) = -2.5 cos 2x1 cos x2
        const SpectralField j = cosine_product_mode(grid, 2, 1, -2.5);
        return from_scalars(omega, j, params, 0.0);
    }
    if (spec.preset == "taylor-green") {
        const SpectralField omega = cosine_product_mode(grid, 1, 1, 2.0);
        return from_scalars(omega, SpectralField(grid), params, 0.0);
    }
    if (spec.preset == "random-divfree") {
        std::mt19937_64 rng(spec.seed);
        auto [u1, u2] = random_divfree_pair(grid, rng);
        auto [b1, b2] = random_divfree_pair(grid, rng);
        if (params.formulation == Formulation::primitive)
            return MHDState::primitive(std::move(u1), std::move(u2), std::move(b1), std::move(b2));
        return MHDState::vorticity_current(curl2d(u1, u2), curl2d(b1, b2));
    }
    if (spec.preset == "single-mode") {
        if (!grid.retained(spec.mode_k1, spec.mode_k2) || (spec.mode_k1 == 0 && spec.mode_k2 == 0))
            throw std::invalid_argument("single-mode: wavenumber outside the retained window");
        const SpectralField mode =
            cosine_mode(grid, spec.mode_k1, spec.mode_k2, spec.mode_amplitude);
        const SpectralField zero(grid);
        const std::string& c = spec.mode_component;
        if (params.formulation == Formulation::primitive) {
            if (c == "u") {  // divergence-free velocity with a single-mode curl
                auto [u1, u2] = biot_savart(mode);
                return MHDState::primitive(std::move(u1), std::move(u2), zero, zero);
            }
            if (c == "b1") return MHDState::primitive(zero, zero, mode, zero);
            if (c == "b2") return MHDState::primitive(zero, zero, zero, mode);
            throw std::invalid_argument(
                "single-mode: component must be u, b1 or b2 in the primitive formulation");
        }
        if (c == "omega" || c == "u") return MHDState::vorticity_current(mode, zero);
        if (c == "j") return MHDState::vorticity_current(zero, mode);
        throw std::invalid_argument(
            "single-mode: component must be omega or j in the vorticity-current formulation");
    }
    if (spec.preset == "snapshot") {
        const SnapshotData snap = read_snapshot(spec.snapshot_path);
        if (static_cast<int>(snap.n1) != grid.n1 || static_cast<int>(snap.n2) != grid.n2)
            throw std::invalid_argument("snapshot grid does not match the configured grid");
        return state_from_snapshot(snap);
    }
    throw std::invalid_argument("unknown initial-condition preset: " + spec.preset);
}

}  // namespace amhd
