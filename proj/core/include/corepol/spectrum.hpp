// spectrum.hpp — Uniform frequency grids and sampled 1D / 2D spectra with metadata

#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace corepol {

struct FrequencyGrid {
    double min_ev{0.0};
    double max_ev{0.0};
    std::size_t points{0};

    // Requires points >= 2 and min < max; throws std::invalid_argument otherwise.
    void validate() const;
    double spacing() const noexcept { return (max_ev - min_ev) / static_cast<double>(points - 1); }
    double at(std::size_t i) const noexcept;
    std::vector<double> values() const;
    bool contains(double w) const noexcept { return w >= min_ev && w <= max_ev; }
};

// Ordered key/value pairs; insertion order is the output order.
class Metadata {
public:
    void set(const std::string& key, std::string value);
    void set(const std::string& key, double value);   // %.17g
    const std::string* find(const std::string& key) const;
    const std::vector<std::pair<std::string, std::string>>& items() const noexcept { return items_; }
    void append(const Metadata& other);

private:
    std::vector<std::pair<std::string, std::string>> items_;
};

struct Spectrum1D {
    FrequencyGrid grid;
    std::vector<double> values;
    Metadata metadata;
};

using RowMajorMatrixXcd = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct Spectrum2D {
    FrequencyGrid axis1;   // slow (row) axis
    FrequencyGrid axis2;   // fast (column) axis
    std::string axis1_name;
    std::string axis2_name;
    RowMajorMatrixXcd values;   // values(i, j) at (axis1[i], axis2[j])
    Metadata metadata;

    double max_abs() const;
};

std::string format_double(double v);   // %.17g

}  // namespace corepol
