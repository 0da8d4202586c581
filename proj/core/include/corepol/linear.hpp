// linear.hpp — XANES (linear absorption) and polariton-state decomposition
//
//   S(w) = sum_p |<p|mu|G,0>|^2 L(w - w_p),   L(x) = (gamma/pi) / (x^2 + gamma^2)
//
// summed over block-1 eigenstates p. The external dipole never creates cavity photons, so
// the photon basis state (G, 1) only contributes through its admixture in p.

#pragma once

#include <string>
#include <vector>

#include "corepol/model.hpp"
#include "corepol/polaritons.hpp"
#include "corepol/spectrum.hpp"

namespace corepol {

// Area-normalized Lorentzian with half width at half maximum `hwhm`.
double lorentzian(double x, double hwhm) noexcept;

struct StickLine {
    double energy_ev{0.0};
    double strength{0.0};   // |<p|mu|G>|^2 in Debye^2
};

std::vector<StickLine> stick_spectrum(const Polaritons& p);

struct XanesOptions {
    bool normalize{true};   // scale so that max = 1; otherwise raw Debye^2/eV
};

Spectrum1D xanes(const Polaritons& p, const LineshapeConfig& lineshape, const FrequencyGrid& grid,
                 const XanesOptions& options = {});
Spectrum1D xanes(const MoleculeModel& model, const CavityConfig& cavity, const LineshapeConfig& lineshape,
                 const FrequencyGrid& grid, const XanesOptions& options = {});

// Default window of the bare carbon K-edge.
inline FrequencyGrid default_xanes_grid() { return {280.0, 296.0, 1601}; }

struct StateDecomposition {
    double energy_ev{0.0};
    std::vector<double> weights;   // aligned with Decomposition::tags
};

struct Decomposition {
    std::vector<std::string> tags;   // molecular sites in declaration order, then PHOTON
    std::vector<StateDecomposition> states;

    double weight(std::size_t state, const std::string& tag) const;
};

// Projector weights P_sigma = <Psi|P_sigma|Psi> for every block-1 eigenstate; the PHOTON
// tag collects the (G, n >= 1) components. Throws std::invalid_argument for other blocks.
Decomposition decompose(const EigenSystem& es, const MoleculeModel& model);

}  // namespace corepol
