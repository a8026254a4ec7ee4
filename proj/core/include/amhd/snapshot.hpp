#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "amhd/dynamics.hpp"

namespace amhd {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/** On-disk state snapshot. Binary layout: magic "AMHD", format version u32,
 * n1 u32, n2 u32, time f64, beta f64, eta f64, mode u8, formulation u8, then
 * row-major little-endian f64 physical-space arrays for each state component
 * in declared order (u1,u2,b1,b2 or omega,j). Write/read round trips are
 * bit-exact on the raw arrays.
 */
struct SnapshotData {
    std::uint32_t version = 1;
    std::uint32_t n1 = 0, n2 = 0;
    double time = 0.0, beta = 0.0, eta = 0.0;
    std::uint8_t mode = 0;         // DiffusionMode
    std::uint8_t formulation = 0;  // Formulation
    std::vector<std::vector<double>> arrays;
};

SnapshotData to_snapshot(const MHDState& state, const PhysParams& params);

/// forward-transforms the stored samples and re-dealiases
MHDState state_from_snapshot(const SnapshotData& snap);

void write_snapshot(const std::string& path, const SnapshotData& snap);
SnapshotData read_snapshot(const std::string& path);

}  // namespace amhd
