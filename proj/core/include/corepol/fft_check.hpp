// fft_check.hpp — Time-domain sampling + discrete Fourier transform of pathway signals
//
// Validation route for the closed-form line shapes in nonlinear.hpp: each pathway's
// coherences are sampled on t = 0, dt, ..., (n-1) dt (trapezoid weights, demodulated by a
// reference frequency per axis) and transformed with a 2D FFT. The result lives on the FFT
// frequency lattice ref + 2 pi k / (n dt), cropped to the requested windows.

#pragma once

#include <cstddef>

#include "corepol/nonlinear.hpp"

namespace corepol {

struct FftSampling {
    double dt{0.04};        // hbar/eV; n * dt = 82 covers 8 / gamma for gamma >= 0.1 eV
    std::size_t n{2048};    // samples per time axis
    double ref1_ev{289.0};  // demodulation frequency for axis 1
    double ref2_ev{289.0};  // demodulation frequency for axis 2

    void validate() const;
    double frequency_step() const noexcept;
};

struct Window {
    double min_ev;
    double max_ev;
};

Spectrum2D signal_2d_fft(const PathwaySet& set, Projection proj, double fixed_delay, const FftSampling& sampling,
                         Window axis1, Window axis2);

}  // namespace corepol
