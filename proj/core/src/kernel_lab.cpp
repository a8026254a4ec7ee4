#include "amhd/kernel_lab.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <algorithm>
#include <cmath>
#include <mutex>

namespace amhd {
namespace {

void disable_gsl_aborts() {
    static std::once_flag once;
    std::call_once(once, [] { gsl_set_error_handler_off(); });
}

struct Integrand {
    double t, two_beta, p;  // p = m + sigma
    double eval(double xi) const {
        const double amp = p == 0.0 ? 1.0 : std::pow(xi, p);
        return amp * std::exp(-t * std::pow(xi, two_beta));
    }
};

double integrand_cb(double xi, void* params) {
    return static_cast<const Integrand*>(params)->eval(xi);
}

struct TrigIntegrand {
    Integrand base;
    double x;
    bool use_sin;
};

double trig_integrand_cb(double xi, void* params) {
    const auto* p = static_cast<const TrigIntegrand*>(params);
    const double v = p->base.eval(xi);
    return p->use_sin ? v * std::sin(p->x * xi) : v * std::cos(p->x * xi);
}

struct Workspace {
    gsl_integration_workspace* w;
    explicit Workspace(std::size_t n) : w(gsl_integration_workspace_alloc(n)) {}
    ~Workspace() { gsl_integration_workspace_free(w); }
    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;
};

// cutoff with an analytic bound on the dropped tail:
// int_{X}^inf xi^p e^{-t xi^(2b)} <= f(X) / (2 b t X^(2b-1) - p/X)
double choose_cutoff(const Integrand& f, double tail_budget) {
    double x = std::pow(std::max(1.0, f.p / std::max(f.t * f.two_beta, 1e-300)),
                        1.0 / f.two_beta);
    for (int i = 0; i < 400; ++i) {
        const double c = f.two_beta * f.t * std::pow(x, f.two_beta - 1.0);
        const double d = f.p > 0.0 ? f.p / x : 0.0;
        if (c > 2.0 * d && f.eval(x) / (c - d) < tail_budget && f.eval(x) < tail_budget)
            return x;
        x *= 1.5;
    }
    throw QuadratureError("kernel_value: could not bound the quadrature tail");
}

PointValue half_line_transform(const Integrand& f, double x, bool use_sin, double tol) {
    disable_gsl_aborts();
    const double xi_max = choose_cutoff(f, tol / 100.0);
    constexpr std::size_t limit = 4000;
    Workspace ws(limit);
    double value = 0.0, abserr = 0.0;
    int status;
    if (std::abs(x) * xi_max > 50.0) {
        // oscillatory regime: Clenshaw-Curtis rule with the trig weight
        Integrand base = f;
        gsl_integration_qawo_table* table = gsl_integration_qawo_table_alloc(
            std::abs(x), xi_max, use_sin ? GSL_INTEG_SINE : GSL_INTEG_COSINE, 40);
        gsl_function fn{&integrand_cb, &base};
        status = gsl_integration_qawo(&fn, 0.0, tol / 4.0, 0.0, limit, ws.w, table, &value,
                                      &abserr);
        gsl_integration_qawo_table_free(table);
        if (use_sin && x < 0.0) value = -value;
    } else {
        TrigIntegrand ti{f, x, use_sin};
        gsl_function fn{&trig_integrand_cb, &ti};
        status = gsl_integration_qags(&fn, 0.0, xi_max, tol / 4.0, 0.0, limit, ws.w, &value,
                                      &abserr);
    }
    const double tail = f.eval(xi_max);  // already below tol/100 with margin
    if (status != GSL_SUCCESS && abserr > tol)
        throw QuadratureError("kernel_value: requested tolerance not achieved");
    return {value, abserr + tail};
}

}  // namespace

PointValue kernel_value_est(const KernelQuery& q, double x) {
    q.validate();
    const Integrand f{q.t, 2.0 * q.beta, q.m + q.sigma};
    const bool use_sin = q.m % 2 == 1;
    // i^m (i xi)-parity bookkeeping: even m gives (-1)^(m/2) * cos transform,
    // odd m gives (-1)^((m+1)/2) * sin transform
    const double sign = (q.m % 2 == 0) ? ((q.m / 2) % 2 == 0 ? 1.0 : -1.0)
                                       : (((q.m + 1) / 2) % 2 == 0 ? 1.0 : -1.0);
    PointValue pv = half_line_transform(f, x, use_sin, q.tol / 2.0);
    return {2.0 * sign * pv.value, 2.0 * pv.error};
}

double kernel_value(const KernelQuery& q, double x) { return kernel_value_est(q, x).value; }

double scaling_check(const KernelQuery& q, std::span<const double> xs) {
    q.validate();
    if (q.m != 0 || q.sigma != 0.0)
        throw std::invalid_argument("scaling_check: requires m = 0 and sigma = 0");
    const double lambda = std::pow(q.t, -1.0 / (2.0 * q.beta));
    KernelQuery unit = q;
    unit.t = 1.0;
    double worst = 0.0;
    for (double x : xs) {
        const double lhs = kernel_value(q, x);
        const double rhs = lambda * kernel_value(unit, x * lambda);
        const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-12});
        worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

namespace {

// adaptive composite Simpson of |G|^r on [a, b]
double segment_integral(const KernelQuery& q, double a, double b, double r_exp) {
    auto sample = [&](double x) { return std::pow(std::abs(kernel_value(q, x)), r_exp); };
    int n = 16;
    std::vector<double> vals(n + 1);
    for (int i = 0; i <= n; ++i) vals[i] = sample(a + (b - a) * i / n);
    auto simpson = [&](const std::vector<double>& v) {
        const double h = (b - a) / (v.size() - 1);
        double s = v.front() + v.back();
        for (std::size_t i = 1; i + 1 < v.size(); ++i) s += (i % 2 ? 4.0 : 2.0) * v[i];
        return s * h / 3.0;
    };
    double prev = simpson(vals);
    for (int depth = 0; depth < 7; ++depth) {
        std::vector<double> fine(2 * n + 1);
        for (int i = 0; i <= n; ++i) fine[2 * i] = vals[i];
        for (int i = 0; i < n; ++i) fine[2 * i + 1] = sample(a + (b - a) * (2 * i + 1) / (2 * n));
        n *= 2;
        vals = std::move(fine);
        const double cur = simpson(vals);
        if (std::abs(cur - prev) <= 1e-8 * std::max(std::abs(cur), 1e-300)) return cur;
        prev = cur;
    }
    return prev;
}

NormEstimate sup_norm(const KernelQuery& q) {
    const double scale = std::pow(q.t, 1.0 / (2.0 * q.beta));
    const double X = 8.0 * scale * (2.0 + q.m + q.sigma);
    int n = 64;
    std::vector<double> vals(n + 1);
    for (int i = 0; i <= n; ++i) vals[i] = std::abs(kernel_value(q, X * i / n));
    double prev2 = -1.0, prev = -1.0;
    double cur = *std::max_element(vals.begin(), vals.end());
    for (int level = 0; level < 9; ++level) {
        std::vector<double> fine(2 * n + 1);
        for (int i = 0; i <= n; ++i) fine[2 * i] = vals[i];
        for (int i = 0; i < n; ++i)
            fine[2 * i + 1] = std::abs(kernel_value(q, X * (2 * i + 1) / (2 * n)));
        n *= 2;
        vals = std::move(fine);
        prev2 = prev;
        prev = cur;
        cur = *std::max_element(vals.begin(), vals.end());
        const double tol = 1e-8 * std::max(cur, 1e-300);
        if (prev2 >= 0.0 && std::abs(cur - prev) <= tol && std::abs(prev - prev2) <= tol)
            return {cur, 1e-8};
    }
    return {cur, std::abs(cur - prev) / std::max(cur, 1e-300)};
}

}  // namespace

NormEstimate lebesgue_norm(const KernelQuery& q) {
    q.validate();
    if (std::isinf(q.r)) return sup_norm(q);

    // |G| is even regardless of m's parity, so integrate the half line twice
    const double scale = std::pow(q.t, 1.0 / (2.0 * q.beta));
    double a = 0.0, width = scale;
    double total = 0.0;
    double prev_seg = -1.0, tail_est = 0.0;
    bool converged = false;
    for (int seg = 0; seg < 24 && !converged; ++seg) {
        const double cur = segment_integral(q, a, a + width, q.r);
        total += cur;
        if (prev_seg > 0.0 && cur > 0.0 && cur < 0.95 * prev_seg) {
            const double rho = cur / prev_seg;
            tail_est = cur * rho / (1.0 - rho);
            if (tail_est <= q.norm_tol * total) converged = true;
        }
        prev_seg = cur;
        a += width;
        if (seg > 0) width *= 2.0;  // dyadic segments after the unit bulk
    }
    total += tail_est;  // geometric tail model (exact for power-law decay)
    const double rel_err = tail_est / std::max(total, 1e-300) * 0.5 + 1e-8;
    if (!converged && rel_err > 50.0 * q.norm_tol)
        throw QuadratureError("lebesgue_norm: tail did not converge to tolerance");
    return {std::pow(total * 2.0, 1.0 / q.r), rel_err / q.r};
}

SlopeFit norm_scaling_fit(double beta, int m, double sigma, double r, std::span<const double> ts,
                          double norm_tol) {
    if (ts.size() < 2) throw std::invalid_argument("norm_scaling_fit: needs at least 2 times");
    std::vector<double> lx, ly;
    for (double t : ts) {
        KernelQuery q;
        q.beta = beta;
        q.t = t;
        q.m = m;
        q.sigma = sigma;
        q.r = r;
        q.norm_tol = norm_tol;
        lx.push_back(std::log(t));
        ly.push_back(std::log(lebesgue_norm(q).value));
    }
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
    }
    SlopeFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double rinv = std::isinf(r) ? 0.0 : 1.0 / r;
    fit.expected = -(m + sigma) / (2.0 * beta) - (1.0 - rinv) / (2.0 * beta);
    return fit;
}

double decay_constant(double beta) {
    KernelQuery q;
    q.beta = beta;
    double best = 0.0;
    for (double x = 0.0; x <= 64.0; x += 0.125)
        best = std::max(best, (1.0 + x * x) * std::abs(kernel_value(q, x)));
    return best;
}

KernelProfile kernel_profile(const KernelQuery& q, std::span<const double> xs) {
    KernelProfile p;
    for (double x : xs) {
        const PointValue pv = kernel_value_est(q, x);
        p.x.push_back(x);
        p.value.push_back(pv.value);
        p.error.push_back(pv.error);
    }
    return p;
}

namespace {

// composite Simpson weights for n_samples points at spacing h; odd interval
// counts get the 3/8 rule on the last three intervals
std::vector<double> simpson_weights(std::size_t n_samples, double h) {
    if (n_samples < 4) throw std::invalid_argument("simpson_weights: too few samples");
    std::vector<double> w(n_samples, 0.0);
    const std::size_t intervals = n_samples - 1;
    const std::size_t simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
    if (simpson_end > 0) {
        w[0] += h / 3.0;
        w[simpson_end] += h / 3.0;
        for (std::size_t i = 1; i < simpson_end; ++i) w[i] += (i % 2 ? 4.0 : 2.0) * h / 3.0;
    }
    if (simpson_end != intervals) {
        const double c = 3.0 * h / 8.0;
        w[simpson_end] += c;
        w[simpson_end + 1] += 3.0 * c;
        w[simpson_end + 2] += 3.0 * c;
        w[simpson_end + 3] += c;
    }
    return w;
}

struct StridedHistory {
    std::vector<std::size_t> idx;
    double h;
};

StridedHistory strided(const NonlinearHistory& hist, int stride) {
    if (stride < 1) throw std::invalid_argument("history stride must be >= 1");
    if (hist.times.size() < 2 || (hist.times.size() - 1) % stride != 0)
        throw std::invalid_argument("history stride does not divide the sample count");
    StridedHistory s;
    for (std::size_t i = 0; i < hist.times.size(); i += stride) s.idx.push_back(i);
    if (s.idx.size() < 9)
        throw std::invalid_argument("insufficient history cadence: fewer than 9 samples");
    s.h = hist.cadence * stride;
    return s;
}

}  // namespace

DuhamelResult duhamel_reconstruct(const NonlinearHistory& hist, int stride) {
    const StridedHistory s = strided(hist, stride);
    const auto w = simpson_weights(s.idx.size(), s.h);
    const double T = hist.times.back() - hist.times.front();
    const auto syms = state_linear_symbols(Formulation::primitive, hist.params);
    const ModeWindow& win = *hist.window;

    double num1 = 0.0, den1 = 0.0, num2 = 0.0, den2 = 0.0;
    for (std::size_t slot = 0; slot < win.count(); ++slot) {
        const int k1 = win.k1(slot), k2 = win.k2(slot);
        const double lam1 = syms[2].eval(k1, k2).real();
        const double lam2 = syms[3].eval(k1, k2).real();
        std::complex<double> acc1 = std::exp(-lam1 * T) * hist.b1_initial[slot];
        std::complex<double> acc2 = std::exp(-lam2 * T) * hist.b2_initial[slot];
        for (std::size_t i = 0; i < s.idx.size(); ++i) {
            const double tau = i * s.h;
            acc1 += w[i] * std::exp(-lam1 * (T - tau)) * hist.nb1[s.idx[i]][slot];
            acc2 += w[i] * std::exp(-lam2 * (T - tau)) * hist.nb2[s.idx[i]][slot];
        }
        num1 += std::norm(acc1 - hist.b1_final[slot]);
        den1 += std::norm(hist.b1_final[slot]);
        num2 += std::norm(acc2 - hist.b2_final[slot]);
        den2 += std::norm(hist.b2_final[slot]);
    }
    return {std::sqrt(num1 / std::max(den1, 1e-300)), std::sqrt(num2 / std::max(den2, 1e-300))};
}

double structure_shift_check(const NonlinearHistory& hist, int stride) {
    const StridedHistory s = strided(hist, stride);
    const auto w = simpson_weights(s.idx.size(), s.h);
    const double T = hist.times.back() - hist.times.front();
    const auto syms = state_linear_symbols(Formulation::primitive, hist.params);
    const ModeWindow& win = *hist.window;

    double num = 0.0, den = 0.0;
    for (std::size_t slot = 0; slot < win.count(); ++slot) {
        const int k1 = win.k1(slot), k2 = win.k2(slot);
        const double lam = syms[2].eval(k1, k2).real();
        const std::complex<double> ik1(0.0, k1), ik2(0.0, k2);
        const std::complex<double> decay0 = std::exp(-lam * T) * hist.b1_initial[slot];
        // (i)  d1 d2 applied to the reconstruction driven by the b1 source
        std::complex<double> direct = ik1 * ik2 * decay0;
        // (ii) both x2-derivatives on the kernel, d1 on the recorded product
        std::complex<double> shifted = ik1 * ik2 * decay0;
        for (std::size_t i = 0; i < s.idx.size(); ++i) {
            const double tau = i * s.h;
            const std::complex<double> e = w[i] * std::exp(-lam * (T - tau));
            direct += ik1 * ik2 * (e * hist.nb1[s.idx[i]][slot]);
            shifted += ik2 * ik2 * (e * (ik1 * hist.cross12[s.idx[i]][slot]));
        }
        num += std::norm(direct - shifted);
        den += std::norm(direct);
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

}  // namespace amhd
