// peaks.hpp — Local-maximum search on sampled spectra

#pragma once

#include <cstddef>
#include <vector>

#include "corepol/spectrum.hpp"

namespace corepol {

struct Peak1D {
    std::size_t index;
    double position_ev;
    double height;
};

struct Peak2D {
    std::size_t i;   // axis1 index
    std::size_t j;   // axis2 index
    double axis1_ev;
    double axis2_ev;
    double height;   // |S|
};

// Interior local maxima with height >= rel_threshold * global max, tallest first.
std::vector<Peak1D> find_peaks(const Spectrum1D& s, double rel_threshold = 0.0);
std::vector<Peak1D> find_peaks(const std::vector<double>& values, const FrequencyGrid& grid,
                               double rel_threshold = 0.0);

// Local maxima of |S| over the 8-neighbourhood (edges excluded), tallest first.
std::vector<Peak2D> find_peaks(const Spectrum2D& s, double rel_threshold = 0.0);

}  // namespace corepol
