#include "amhd/transforms.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace amhd {
namespace {

// FFTW plan creation is not thread-safe; execution on private buffers is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct Plans {
    int n1 = 0, n2 = 0;
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;

    Plans(int n1_, int n2_) : n1(n1_), n2(n2_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        buf = fftw_alloc_complex(static_cast<std::size_t>(n1) * n2);
        fwd = fftw_plan_dft_2d(n1, n2, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd = fftw_plan_dft_2d(n1, n2, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    ~Plans() {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
        fftw_free(buf);
    }
    Plans(const Plans&) = delete;
    Plans& operator=(const Plans&) = delete;
};

Plans& plans_for(const Grid& g) {
    thread_local std::map<std::pair<int, int>, std::unique_ptr<Plans>> cache;
    auto& slot = cache[{g.n1, g.n2}];
    if (!slot) slot = std::make_unique<Plans>(g.n1, g.n2);
    return *slot;
}

}  // namespace

SpectralField forward_transform(std::span<const double> physical, const Grid& grid) {
    if (physical.size() != grid.size())
        throw TransformError("forward_transform: sample array does not match grid");
    Plans& p = plans_for(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        p.buf[i][0] = physical[i];
        p.buf[i][1] = 0.0;
    }
    fftw_execute(p.fwd);
    SpectralField f(grid);
    const double scale = 1.0 / static_cast<double>(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        f[i] = std::complex<double>(p.buf[i][0] * scale, p.buf[i][1] * scale);
    return f;
}

std::vector<double> inverse_transform(const SpectralField& f) {
    const Grid& grid = f.grid();
    Plans& p = plans_for(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        p.buf[i][0] = f[i].real();
        p.buf[i][1] = f[i].imag();
    }
    fftw_execute(p.bwd);
    std::vector<double> out(grid.size());
    double max_re = 0.0, max_im = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out[i] = p.buf[i][0];
        max_re = std::max(max_re, std::abs(p.buf[i][0]));
        max_im = std::max(max_im, std::abs(p.buf[i][1]));
    }
    if (max_im > 1e-13 * std::max(max_re, 1e-300))
        throw TransformError("inverse_transform: conjugate symmetry violated");
    return out;
}

void dealias_in_place(SpectralField& f) {
    const Grid& g = f.grid();
    f.for_each_mode([&](int k1, int k2, std::complex<double>& c) {
        if (!g.retained(k1, k2)) c = 0.0;
    });
}

SpectralField dealias(SpectralField f) {
    dealias_in_place(f);
    return f;
}

SpectralField pointwise_product(const SpectralField& f, const SpectralField& g) {
    f.require_same_grid(g);
    std::vector<double> a = inverse_transform(f);
    std::vector<double> b = inverse_transform(g);
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    SpectralField h = forward_transform(a, f.grid());
    dealias_in_place(h);
    return h;
}

}  // namespace amhd
