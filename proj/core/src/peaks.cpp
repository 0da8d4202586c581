// peaks.cpp

#include "corepol/peaks.hpp"

#include <algorithm>
#include <stdexcept>

namespace corepol {

std::vector<Peak1D> find_peaks(const std::vector<double>& values, const FrequencyGrid& grid, double rel_threshold) {
    if (values.size() != grid.points) throw std::invalid_argument("find_peaks: size mismatch");
    std::vector<Peak1D> out;
    if (values.size() < 3) return out;
    const double top = *std::max_element(values.begin(), values.end());
    for (std::size_t i = 1; i + 1 < values.size(); ++i) {
        const double v = values[i];
        if (v > values[i - 1] && v >= values[i + 1] && v >= rel_threshold * top) out.push_back({i, grid.at(i), v});
    }
    std::sort(out.begin(), out.end(), [](const Peak1D& a, const Peak1D& b) { return a.height > b.height; });
    return out;
}

std::vector<Peak1D> find_peaks(const Spectrum1D& s, double rel_threshold) {
    return find_peaks(s.values, s.grid, rel_threshold);
}

std::vector<Peak2D> find_peaks(const Spectrum2D& s, double rel_threshold) {
    const Eigen::MatrixXd mag = s.values.cwiseAbs();
    std::vector<Peak2D> out;
    const Eigen::Index n1 = mag.rows(), n2 = mag.cols();
    if (n1 < 3 || n2 < 3) return out;
    const double top = mag.maxCoeff();
    for (Eigen::Index i = 1; i + 1 < n1; ++i) {
        for (Eigen::Index j = 1; j + 1 < n2; ++j) {
            const double v = mag(i, j);
            if (v < rel_threshold * top || v <= 0.0) continue;
            bool is_max = true;
            for (int di = -1; di <= 1 && is_max; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const double nb = mag(i + di, j + dj);
                    // strict on the "earlier" half so that plateaus yield a single maximum
                    if (nb > v || (nb == v && (di < 0 || (di == 0 && dj < 0)))) {
                        is_max = false;
                        break;
                    }
                }
            if (is_max)
                out.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j),
                               s.axis1.at(static_cast<std::size_t>(i)), s.axis2.at(static_cast<std::size_t>(j)), v});
        }
    }
    std::sort(out.begin(), out.end(), [](const Peak2D& a, const Peak2D& b) { return a.height > b.height; });
    return out;
}

}  // namespace corepol
