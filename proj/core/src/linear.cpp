// linear.cpp

#include "corepol/linear.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace corepol {

double lorentzian(double x, double hwhm) noexcept {
    return hwhm / (std::numbers::pi * (x * x + hwhm * hwhm));
}

std::vector<StickLine> stick_spectrum(const Polaritons& p) {
    const auto& es = p.singles();
    std::vector<StickLine> out;
    out.reserve(static_cast<std::size_t>(es.size()));
    for (Eigen::Index i = 0; i < es.size(); ++i) out.push_back({es.values(i), std::norm(p.d10(i))});
    return out;
}

Spectrum1D xanes(const Polaritons& p, const LineshapeConfig& lineshape, const FrequencyGrid& grid,
                 const XanesOptions& options) {
    grid.validate();
    lineshape.validate();
    const auto sticks = stick_spectrum(p);

    Spectrum1D s;
    s.grid = grid;
    s.values.assign(grid.points, 0.0);
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double w = grid.at(i);
        double acc = 0.0;
        for (const auto& line : sticks)
            if (line.strength != 0.0) acc += line.strength * lorentzian(w - line.energy_ev, lineshape.gamma_e_ev);
        s.values[i] = acc;
    }

    const bool any_inside = std::any_of(sticks.begin(), sticks.end(), [&](const StickLine& l) {
        return l.strength != 0.0 && grid.contains(l.energy_ev);
    });
    const double peak = s.values.empty() ? 0.0 : *std::max_element(s.values.begin(), s.values.end());
    if (options.normalize && peak > 0.0)
        for (auto& v : s.values) v /= peak;

    s.metadata.set("signal", "xanes");
    s.metadata.set("gamma_e_ev", lineshape.gamma_e_ev);
    s.metadata.set("lineshape", "LORENTZIAN");
    s.metadata.set("normalization", options.normalize ? "max" : "raw");
    if (!any_inside) s.metadata.set("warning", "grid contains no block-1 resonance");
    return s;
}

Spectrum1D xanes(const MoleculeModel& model, const CavityConfig& cavity, const LineshapeConfig& lineshape,
                 const FrequencyGrid& grid, const XanesOptions& options) {
    grid.validate();
    auto s = xanes(solve_polaritons(model, cavity, 1), lineshape, grid, options);
    Metadata meta;
    meta.set("model", model.name);
    meta.set("omega_c_ev", cavity.omega_c_ev);
    meta.set("g_ev_per_debye", cavity.g_ev_per_debye);
    meta.set("n_molecules", std::to_string(cavity.n_molecules));
    meta.set("g_collective_ev_per_debye", cavity.g_ev_per_debye * std::sqrt(double(cavity.n_molecules)));
    meta.append(s.metadata);
    s.metadata = std::move(meta);
    return s;
}

double Decomposition::weight(std::size_t state, const std::string& tag) const {
    auto it = std::find(tags.begin(), tags.end(), tag);
    if (it == tags.end()) throw std::out_of_range("Decomposition: unknown tag '" + tag + "'");
    return states.at(state).weights[static_cast<std::size_t>(it - tags.begin())];
}

Decomposition decompose(const EigenSystem& es, const MoleculeModel& model) {
    if (es.block != 1)
        throw std::invalid_argument("decompose: needs the single-excitation block (got block " +
                                    std::to_string(es.block) + ")");
    Decomposition d;
    d.tags = model.sites();
    d.tags.emplace_back(kPhotonSite);
    const std::size_t photon_tag = d.tags.size() - 1;

    const auto e_states = model.manifold(Manifold::E);
    std::vector<std::size_t> tag_of_basis(es.states.size());
    for (std::size_t b = 0; b < es.states.size(); ++b) {
        const auto& s = es.states[b];
        if (s.kind == BasisKind::Ground) {
            tag_of_basis[b] = photon_tag;
        } else if (s.kind == BasisKind::Single) {
            const auto& site = e_states.at(static_cast<std::size_t>(s.level_a))->site;
            tag_of_basis[b] = static_cast<std::size_t>(std::find(d.tags.begin(), d.tags.end(), site) - d.tags.begin());
        } else {
            throw std::invalid_argument("decompose: unexpected basis state " + s.label + " in block 1");
        }
    }

    for (Eigen::Index c = 0; c < es.size(); ++c) {
        StateDecomposition sd;
        sd.energy_ev = es.values(c);
        sd.weights.assign(d.tags.size(), 0.0);
        for (std::size_t b = 0; b < es.states.size(); ++b)
            sd.weights[tag_of_basis[b]] += std::norm(es.vectors(static_cast<Eigen::Index>(b), c));
        d.states.push_back(std::move(sd));
    }
    return d;
}

}  // namespace corepol
