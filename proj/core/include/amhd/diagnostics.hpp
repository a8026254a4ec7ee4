#pragma once

#include <iosfwd>
#include <span>

#include "amhd/dynamics.hpp"

namespace amhd {

struct DiagConfig {
    std::vector<double> sobolev_s = {2.0};
    std::vector<double> lq = {2.0, 4.0};
};

/** One time-sample of every monitored functional. Norms are over the torus;
 * spectral sums for L2-type quantities, uniform-grid quadrature for the L^q
 * family, grid maxima for the sup norms (lower bounds of the true sup).
 */
struct DiagRecord {
    double t = 0.0;
    double e_u = 0.0, e_b = 0.0;            // kinetic / magnetic energy (1/2 ||.||^2)
    double h_b = 0.0;                        // ||L2^beta b1||^2 + ||L1^beta b2||^2
    double hgrad_b = 0.0;                    // same with an extra gradient
    double enstrophy = 0.0, current = 0.0;   // 1/2 ||omega||^2, 1/2 ||j||^2
    std::vector<double> sobolev;             // ||(u,b)||_{H^s} per configured s
    std::vector<double> grad_b_lq, j_lq, omega_lq;
    double max_u = 0.0, max_b = 0.0;
    double div_b = 0.0;                      // max |div b| on the grid
    double energy_residual = 0.0;            // filled in by series assembly
    double max_omega = 0.0;
    double grad_j_l2 = 0.0;
    double i_qj = 0.0;                       // integral of Q(u,b) j
    bool finite = true;
};

DiagRecord record(const MHDState& state, const PhysParams& params, const DiagConfig& cfg = {});

/// max over samples of |2E(t) + 2 eta Trap(h_b, 0..t) - 2E(0)| / (2E(0))
double energy_law_residual(std::span<const DiagRecord> series, double eta);

/// stores the running energy-law residual into each record
void fill_energy_residuals(std::span<DiagRecord> series, double eta);

/** Residual of the instantaneous identity
 *   d/dt [ 1/2 ||(omega,j)||^2 ] + eta H(grad b) = I,   I = int Q(u,b) j dx,
 * with the time derivative taken by 4th-order central differences on a
 * uniform-cadence series; normalized by the larger of 1 and the identity's
 * term magnitudes.
 */
double h1_law_residual(std::span<const DiagRecord> series, double eta);

std::vector<std::string> diag_csv_columns(const DiagConfig& cfg);

void write_diag_csv(std::ostream& os, const PhysParams& params, const Grid& grid, double dt,
                    std::span<const DiagRecord> series, const DiagConfig& cfg);

}  // namespace amhd
