// Timing comparison between the OpenMP sweeps and their serial reference
// counterparts, plus the maximum deviation between the two paths.

#include <chrono>
#include <cstdio>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hausdorff/operator.hpp"
#include "hausdorff/transforms.hpp"

using namespace hausdorff;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double timed(const F& f, SampledFunction& out) {
    const double t0 = now_ms();
    out = f();
    return now_ms() - t0;
}

double deviation(const SampledFunction& a, const SampledFunction& b) {
    double m = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        m = std::max(m, std::abs(a.values[i] - b.values[i]));
        scale = std::max(scale, std::abs(b.values[i]));
    }
    return scale > 0 ? m / scale : m;
}

void report(const char* name, double t_omp, double t_ref, double dev) {
    std::printf("%-24s  parallel %8.1f ms   serial %8.1f ms   speedup %5.2fx   max rel dev %.3e\n",
                name, t_omp, t_ref, t_ref / t_omp, dev);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (built without OpenMP)\n");
#endif

    // Fourier transform of a smooth decaying function
    {
        const Grid t_grid = Grid::line(-40.0, 40.0, 40001);
        const SampledFunction g = SampledFunction::sample(t_grid, [](std::span<const double> t) {
            return Complex(std::exp(-0.5 * t[0] * t[0]));
        });
        const Grid s_grid = Grid::line(-20.0, 20.0, 2001);
        SampledFunction a, b;
        const double t_omp = timed([&] { return fourier_forward(g, s_grid); }, a);
        const double t_ref = timed([&] { return ref::fourier_forward(g, s_grid); }, b);
        report("fourier_forward", t_omp, t_ref, deviation(a, b));
    }

    // Convolution of two log-kernels
    {
        const Grid t_grid = Grid::line(-30.0, 30.0, 12001);
        const SampledFunction l = SampledFunction::sample(t_grid, [](std::span<const double> t) {
            return Complex(t[0] < 0 ? std::exp(0.5 * t[0]) : 0.0);
        });
        SampledFunction a, b;
        const double t_omp = timed([&] { return convolve(l, l, 30.0); }, a);
        const double t_ref = timed([&] { return ref::convolve(l, l, 30.0); }, b);
        report("convolve", t_omp, t_ref, deviation(a, b));
    }

    // Operator application sweep
    {
        const Preset p = make_preset("cesaro");
        const OperatorSpec op = make_operator(p);
        const Grid x_grid = Grid::line(0.005, 40.0, 4001);
        const SampledFunction f = SampledFunction::sample(x_grid, [](std::span<const double> x) {
            const double d = (x[0] - 5.0);
            return Complex(std::exp(-0.5 * d * d));
        });
        SampledFunction a, b;
        const double t_omp = timed([&] { return apply(op, f, x_grid); }, a);
        const double t_ref = timed([&] { return ref::apply(op, f, x_grid); }, b);
        report("apply", t_omp, t_ref, deviation(a, b));
    }
    return 0;
}
