// spectrum.cpp

#include "corepol/spectrum.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace corepol {

void FrequencyGrid::validate() const {
    if (points == 0) throw std::invalid_argument("frequency grid is empty");
    if (points < 2) throw std::invalid_argument("frequency grid needs at least 2 points");
    if (!std::isfinite(min_ev) || !std::isfinite(max_ev) || !(min_ev < max_ev))
        throw std::invalid_argument("frequency grid needs finite min < max");
}

double FrequencyGrid::at(std::size_t i) const noexcept {
    if (i + 1 == points) return max_ev;
    return min_ev + static_cast<double>(i) * spacing();
}

std::vector<double> FrequencyGrid::values() const {
    std::vector<double> out(points);
    for (std::size_t i = 0; i < points; ++i) out[i] = at(i);
    return out;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void Metadata::set(const std::string& key, std::string value) {
    for (auto& [k, v] : items_)
        if (k == key) {
            v = std::move(value);
            return;
        }
    items_.emplace_back(key, std::move(value));
}

void Metadata::set(const std::string& key, double value) { set(key, format_double(value)); }

const std::string* Metadata::find(const std::string& key) const {
    for (const auto& [k, v] : items_)
        if (k == key) return &v;
    return nullptr;
}

void Metadata::append(const Metadata& other) {
    for (const auto& [k, v] : other.items_) set(k, v);
}

double Spectrum2D::max_abs() const { return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff(); }

}  // namespace corepol
