// nonlinear.hpp — Sum-over-states third-order signals over the polariton eigenbasis
//
// Pathways (g: ground, e/e': single-polariton, f: two-polariton eigenstates; d_ab = <a|mu|b>):
//
//   photon echo, -k1 + k2 + k3 (rephasing)
//     GSB   +|d_eg|^2 |d_e'g|^2                    T1: eg   T2: gg    T3: e'g
//     SE    +|d_eg|^2 |d_e'g|^2                    T1: eg   T2: e'e   T3: e'g
//     ESA   -d_ge d_e'g d_fe' d_ef                 T1: eg   T2: e'e   T3: fe
//   double quantum coherence, k1 + k2 - k3
//     DQC-I  +d_eg d_fe d_ge' d_e'f                T1: eg   T2: fg    T3: fe'
//     DQC-II -d_eg d_fe d_ge' d_e'f                T1: eg   T2: fg    T3: e'g
//
// Each pathway contributes, for a Fourier-transformed interval with coherence (w, gamma),
//   i / (Omega - w + i gamma)
// and, for an interval held at delay T, exp((-i w - gamma) T). Frequencies are stored as
// positive transition energies, so every resonance appears at positive Omega (the rephasing
// T1 conjugation is folded into that convention).
//
// Dephasing: coherences between blocks 0 and 1 use gamma_e; coherences involving block 2 use
// gamma_f; populations (e = e') do not decay and e'e coherences use gamma_e.

#pragma once

#include <array>
#include <cstddef>
#include <limits>
#include <string_view>
#include <vector>

#include "corepol/model.hpp"
#include "corepol/polaritons.hpp"
#include "corepol/spectrum.hpp"
#include "corepol/units.hpp"

namespace corepol {

enum class SignalKind { PhotonEcho, DoubleQuantum };
enum class Diagram { SE, GSB, ESA, DQC_I, DQC_II };

std::string_view to_string(Diagram d) noexcept;
std::string_view to_string(SignalKind s) noexcept;

// Rectangular spectral support of the impulsive pulses.
struct PulseFilter {
    double center_ev{290.0};
    double bandwidth_ev{20.0};   // full width; infinity passes everything

    void validate() const;
    bool passes(double w) const noexcept;
    static PulseFilter all_pass() { return {0.0, std::numeric_limits<double>::infinity()}; }
};

struct Coherence {
    double freq_ev{0.0};
    double rate_ev{0.0};
};

struct Pathway {
    Diagram diagram{Diagram::GSB};
    int e{-1};    // block-1 eigenstate reached by k1
    int e2{-1};   // block-1 eigenstate e'
    int f{-1};    // block-2 eigenstate, -1 if none
    cdouble amplitude{};
    std::array<Coherence, 3> intervals{};   // T1, T2, T3
};

struct PathwaySet {
    SignalKind signal{SignalKind::PhotonEcho};
    PulseFilter filter;
    std::vector<Pathway> pathways;

    std::size_t count(Diagram d) const;
    PathwaySet only(Diagram d) const;
};

// Zero-amplitude pathways are not listed. Throws std::invalid_argument if the signal needs
// the two-excitation block and `p` was solved with m_max < 2.
PathwaySet enumerate_pathways(const Polaritons& p, SignalKind signal, const PulseFilter& filter,
                              const LineshapeConfig& lineshape);

// Which pair of intervals is Fourier transformed; the third is held at a fixed delay.
enum class Projection {
    PE_T1T3,    // S_PE(Omega3, Omega1; T2): axis1 = Omega1, axis2 = Omega3
    DQC_T1T2,   // S_DQC(Omega2, Omega1; T3): axis1 = Omega1, axis2 = Omega2
    DQC_T2T3,   // S_DQC(Omega3, Omega2; T1): axis1 = Omega2, axis2 = Omega3
};

struct ProjectionAxes {
    int axis1_interval;
    int axis2_interval;
    int fixed_interval;
};
ProjectionAxes projection_axes(Projection proj) noexcept;

// Closed-form evaluation; time in hbar/eV.
Spectrum2D signal_2d(const PathwaySet& set, Projection proj, double fixed_delay, const FrequencyGrid& axis1,
                     const FrequencyGrid& axis2);

Spectrum2D pe_signal(const PathwaySet& set, double t2, const FrequencyGrid& omega1, const FrequencyGrid& omega3);
Spectrum2D dqc_signal_21(const PathwaySet& set, double t3, const FrequencyGrid& omega1, const FrequencyGrid& omega2);
Spectrum2D dqc_signal_32(const PathwaySet& set, double t1, const FrequencyGrid& omega2, const FrequencyGrid& omega3);

inline FrequencyGrid default_one_quantum_axis() { return {280.0, 298.0, 512}; }
inline FrequencyGrid default_two_quantum_axis() { return {560.0, 596.0, 512}; }

// Degenerate two-photon absorption:
//   S(w) = sum_f |sum_e d_fe d_eg / (w - w_eg + i gamma_e)|^2 L_{gamma_f}(2w - w_fg)
Spectrum1D tpa_spectrum(const Polaritons& p, const LineshapeConfig& lineshape, const FrequencyGrid& grid,
                        bool normalize = true);

inline FrequencyGrid default_tpa_grid() { return {280.0, 298.0, 1801}; }

}  // namespace corepol
