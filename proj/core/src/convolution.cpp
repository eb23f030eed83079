#include "tpictm/convolution.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace tpictm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// One cached FFTW plan pair per grid shape. Plans are created once under a
// lock (the FFTW planner is not thread-safe) and executed via the new-array
// interface, which is safe for concurrent calls on distinct buffers.
// FFTW_UNALIGNED lets plans run on plain std::vector storage.
struct PlanPair {
    fftw_plan forward = nullptr;
    fftw_plan inverse = nullptr;
};

const PlanPair& plans_for(int rows, int cols) {
    static std::map<std::pair<int, int>, PlanPair> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({rows, cols});
    if (it != cache.end()) return it->second;

    const std::size_t n_real = static_cast<std::size_t>(rows) * cols;
    const std::size_t n_freq = static_cast<std::size_t>(rows) * (cols / 2 + 1);
    std::vector<double> real(n_real);
    std::vector<std::complex<double>> freq(n_freq);
    auto* freq_ptr = reinterpret_cast<fftw_complex*>(freq.data());

    PlanPair p;
    p.forward = fftw_plan_dft_r2c_2d(rows, cols, real.data(), freq_ptr,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.inverse = fftw_plan_dft_c2r_2d(rows, cols, freq_ptr, real.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p.forward || !p.inverse) throw std::runtime_error("FFTW plan creation failed");
    return cache.emplace(std::make_pair(rows, cols), p).first->second;
}

}  // namespace

HeatMultiplier build_multiplier(double tau, int rows, int cols, double spacing) {
    if (tau < 0.0) throw std::invalid_argument("diffusion time tau must be nonnegative");
    if (rows < 3 || cols < 3) throw std::invalid_argument("grid must be at least 3x3");
    if (spacing <= 0.0) throw std::invalid_argument("spacing must be positive");

    HeatMultiplier m;
    m.tau = tau;
    m.rows = rows;
    m.cols = cols;
    m.multipliers.resize(static_cast<std::size_t>(rows) * cols);

    const double len_r = rows * spacing;
    const double len_c = cols * spacing;
    for (int p = 0; p < rows; ++p) {
        const int kp = p <= rows / 2 ? p : p - rows;
        const double xi_p = kp / len_r;
        for (int q = 0; q < cols; ++q) {
            const int kq = q <= cols / 2 ? q : q - cols;
            const double xi_q = kq / len_c;
            m.multipliers[static_cast<std::size_t>(p) * cols + q] =
                std::exp(-4.0 * kPi * kPi * tau * (xi_p * xi_p + xi_q * xi_q));
        }
    }
    return m;
}

ScalarField convolve(const ScalarField& field, const HeatMultiplier& mult) {
    if (field.rows != mult.rows || field.cols != mult.cols)
        throw std::invalid_argument("convolve: field and multiplier shapes differ");

    const int rows = field.rows;
    const int cols = field.cols;
    const int half = cols / 2 + 1;
    const PlanPair& plans = plans_for(rows, cols);

    std::vector<double> real(field.values);
    std::vector<std::complex<double>> freq(static_cast<std::size_t>(rows) * half);
    auto* freq_ptr = reinterpret_cast<fftw_complex*>(freq.data());

    fftw_execute_dft_r2c(plans.forward, real.data(), freq_ptr);
    const double scale = 1.0 / (static_cast<double>(rows) * cols);
    for (int p = 0; p < rows; ++p)
        for (int q = 0; q < half; ++q)
            freq[static_cast<std::size_t>(p) * half + q] *= mult.at(p, q) * scale;
    fftw_execute_dft_c2r(plans.inverse, freq_ptr, real.data());

    return ScalarField(rows, cols, std::move(real));
}

double perimeter_estimate(const BinaryMask& u, double tau) {
    if (!(tau > 0.0)) throw std::invalid_argument("perimeter_estimate requires tau > 0");

    ScalarField complement(u.rows, u.cols);
    for (std::size_t i = 0; i < u.bits.size(); ++i)
        complement.values[i] = 1.0 - static_cast<double>(u.bits[i]);

    const double h = grid_spacing(u.rows, u.cols);
    const ScalarField smoothed =
        convolve(complement, build_multiplier(tau, u.rows, u.cols, h));

    double acc = 0.0;
    for (std::size_t i = 0; i < u.bits.size(); ++i)
        if (u.bits[i]) acc += smoothed.values[i];
    return std::sqrt(kPi / tau) * acc * h * h;
}

}  // namespace tpictm
