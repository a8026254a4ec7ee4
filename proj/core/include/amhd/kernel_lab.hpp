#pragma once

#include <span>
#include <vector>

#include "amhd/timestepper.hpp"

namespace amhd {

/** Query for the 1D fractional heat kernel
 *
 *     g(x, t) = int_R exp(-t |xi|^(2 beta)) exp(i x xi) dxi,
 *
 * differentiated m times and weighted by |xi|^sigma. NOTE the transform
 * convention: there is no 1/(2pi) in front of the integral, so for beta = 1
 * the closed form is g(x,t) = sqrt(pi/t) exp(-x^2/(4t)) and the L1 norm is
 * 2 pi, not 1. All closed-form oracles in the tests use this convention.
 */
struct KernelQuery {
    double beta = 1.0;
    double t = 1.0;
    int m = 0;           // derivative order
    double sigma = 0.0;  // fractional weight |xi|^sigma
    double r = 2.0;      // Lebesgue exponent, may be INFINITY
    double tol = 1e-10;       // absolute tolerance for point values
    double norm_tol = 1e-6;   // relative tolerance for Lebesgue norms

    void validate() const {
        if (!(beta >= 1.0)) throw std::invalid_argument("KernelQuery: requires beta >= 1");
        if (!(t > 0.0)) throw std::invalid_argument("KernelQuery: requires t > 0");
        if (m < 0) throw std::invalid_argument("KernelQuery: requires m >= 0");
        if (sigma < 0.0) throw std::invalid_argument("KernelQuery: requires sigma >= 0");
        if (!(r >= 1.0)) throw std::invalid_argument("KernelQuery: requires r >= 1");
    }
};

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PointValue {
    double value = 0.0;
    double error = 0.0;
};

/** d^m/dx^m Lambda^sigma g(x, t) by adaptive quadrature: Gauss-Kronrod with
 * extrapolation on the truncated half line, switching to an oscillatory
 * (Filon-type) rule once x * xi_max is large. The truncation tail is bounded
 * analytically and folded into the error estimate.
 */
PointValue kernel_value_est(const KernelQuery& q, double x);
double kernel_value(const KernelQuery& q, double x);

/// max relative deviation between g(x,t) and t^(-1/(2 beta)) g(x t^(-1/(2 beta)), 1),
/// both sides evaluated by independent quadrature (requires m = 0, sigma = 0)
double scaling_check(const KernelQuery& q, std::span<const double> xs);

struct NormEstimate {
    double value = 0.0;
    double error = 0.0;  // estimated relative error
};

/** L^r(R) norm of the (m, sigma)-weighted kernel. Finite r integrates |G|^r
 * over dyadic segments scaled by t^(1/(2 beta)) with a geometric tail model;
 * r = infinity takes a grid max refined until three successive levels agree
 * to 1e-8 relative.
 */
NormEstimate lebesgue_norm(const KernelQuery& q);

struct SlopeFit {
    double slope = 0.0;
    double expected = 0.0;  // -(m + sigma)/(2 beta) - (1 - 1/r)/(2 beta)
};

/// least-squares slope of log norm vs log t over the given times
SlopeFit norm_scaling_fit(double beta, int m, double sigma, double r, std::span<const double> ts,
                          double norm_tol = 1e-3);

/// sup over x of (1 + x^2) |g(x, 1)|; finite for beta >= 1
double decay_constant(double beta);

struct KernelProfile {
    std::vector<double> x, value, error;
};
KernelProfile kernel_profile(const KernelQuery& q, std::span<const double> xs);

/** Per-mode mild-solution reconstruction of b1 and b2 from a recorded
 * primitive-run history: semigroup on the initial data plus composite-Simpson
 * quadrature of the memory integral against the recorded nonlinearity.
 * stride subsamples the history; fewer than 9 surviving samples is an error.
 * Returns the relative L2 discrepancies against the time-stepped fields.
 */
struct DuhamelResult {
    double err_b1 = 0.0;
    double err_b2 = 0.0;
};
DuhamelResult duhamel_reconstruct(const NonlinearHistory& h, int stride = 1);

/** Checks that moving one x2-derivative from the integrand onto the memory
 * kernel is harmless: assembles d1 d2 b1 (i) by differentiating the
 * reconstruction driven by the b1 source history and (ii) from the recorded
 * product b2 u1 - u2 b1 with both derivatives on the kernel side. Returns the
 * relative L2 discrepancy of the two assemblies.
 */
double structure_shift_check(const NonlinearHistory& h, int stride = 1);

}  // namespace amhd
