// fft_check.cpp — FFTW-backed validation transform

#include "corepol/fft_check.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <fftw3.h>

namespace corepol {

void FftSampling::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("FFT sampling: dt must be > 0");
    if (n < 4) throw std::invalid_argument("FFT sampling: need at least 4 samples");
}

double FftSampling::frequency_step() const noexcept {
    return 2.0 * std::numbers::pi / (static_cast<double>(n) * dt);
}

namespace {

// Trapezoid-weighted, demodulated samples exp(-(i (w - ref) + gamma) t) for each pathway.
Eigen::MatrixXcd time_factors(const std::vector<Pathway>& paths, int interval, const FftSampling& s, double ref) {
    const auto np = static_cast<Eigen::Index>(paths.size());
    const auto n = static_cast<Eigen::Index>(s.n);
    Eigen::MatrixXcd out(n, np);
    for (Eigen::Index p = 0; p < np; ++p) {
        const auto& c = paths[static_cast<std::size_t>(p)].intervals[static_cast<std::size_t>(interval)];
        const cdouble rate(-c.rate_ev, -(c.freq_ev - ref));
        for (Eigen::Index k = 0; k < n; ++k) out(k, p) = std::exp(rate * (static_cast<double>(k) * s.dt));
        out(0, p) *= 0.5;
    }
    return out * s.dt;
}

// FFT bins whose frequency falls in the window, ascending.
std::vector<std::size_t> bins_in_window(const FftSampling& s, double ref, Window w, FrequencyGrid& axis) {
    const double step = s.frequency_step();
    const long half = static_cast<long>(s.n / 2);
    std::vector<std::size_t> bins;
    double first = 0.0, last = 0.0;
    for (long k = -half; k < static_cast<long>(s.n) - half; ++k) {
        const double freq = ref + static_cast<double>(k) * step;
        if (freq < w.min_ev || freq > w.max_ev) continue;
        if (bins.empty()) first = freq;
        last = freq;
        bins.push_back(static_cast<std::size_t>(k < 0 ? k + static_cast<long>(s.n) : k));
    }
    if (bins.size() < 2) throw std::invalid_argument("FFT window holds fewer than two frequency bins");
    axis = {first, last, bins.size()};
    return bins;
}

}  // namespace

Spectrum2D signal_2d_fft(const PathwaySet& set, Projection proj, double fixed_delay, const FftSampling& sampling,
                         Window axis1, Window axis2) {
    sampling.validate();
    const auto ax = projection_axes(proj);

    Spectrum2D s;
    const auto bins1 = bins_in_window(sampling, sampling.ref1_ev, axis1, s.axis1);
    const auto bins2 = bins_in_window(sampling, sampling.ref2_ev, axis2, s.axis2);
    s.axis1_name = std::string("omega") + char('1' + ax.axis1_interval) + "_ev";
    s.axis2_name = std::string("omega") + char('1' + ax.axis2_interval) + "_ev";
    s.values = RowMajorMatrixXcd::Zero(static_cast<Eigen::Index>(bins1.size()), static_cast<Eigen::Index>(bins2.size()));
    s.metadata.set("method", "fft");
    s.metadata.set("dt_hbar_per_ev", sampling.dt);
    s.metadata.set("samples", std::to_string(sampling.n));
    if (set.pathways.empty()) return s;

    const auto np = static_cast<Eigen::Index>(set.pathways.size());
    Eigen::VectorXcd weight(np);
    for (Eigen::Index p = 0; p < np; ++p) {
        const auto& path = set.pathways[static_cast<std::size_t>(p)];
        const auto& c = path.intervals[static_cast<std::size_t>(ax.fixed_interval)];
        weight(p) = path.amplitude * std::exp(cdouble(-c.rate_ev, -c.freq_ev) * fixed_delay);
    }
    const Eigen::MatrixXcd a = time_factors(set.pathways, ax.axis1_interval, sampling, sampling.ref1_ev);
    const Eigen::MatrixXcd b = time_factors(set.pathways, ax.axis2_interval, sampling, sampling.ref2_ev);
    RowMajorMatrixXcd samples = (a * weight.asDiagonal()) * b.transpose();

    // Forward transform with kernel exp(+i Omega t): FFTW_BACKWARD (unnormalized).
    const int n = static_cast<int>(sampling.n);
    auto* data = reinterpret_cast<fftw_complex*>(samples.data());
    fftw_plan plan = fftw_plan_dft_2d(n, n, data, data, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan) throw std::runtime_error("FFTW planning failed");
    fftw_execute(plan);
    fftw_destroy_plan(plan);

    for (std::size_t i = 0; i < bins1.size(); ++i)
        for (std::size_t j = 0; j < bins2.size(); ++j)
            s.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                samples(static_cast<Eigen::Index>(bins1[i]), static_cast<Eigen::Index>(bins2[j]));
    return s;
}

}  // namespace corepol
