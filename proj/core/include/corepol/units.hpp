// units.hpp — Unit conventions: energy in eV, time in hbar/eV

#pragma once

namespace corepol::units {

// hbar in eV*as: one time unit (hbar/eV) is 658.2119569... attoseconds.
inline constexpr double kHbarEvAs = 658.2119569509066;

constexpr double attoseconds_to_time(double as) { return as / kHbarEvAs; }
constexpr double time_to_attoseconds(double t) { return t * kHbarEvAs; }

// Default fixed delay for the DQC projections: 1e-5 as.
inline constexpr double kDqcDefaultDelay = attoseconds_to_time(1e-5);

}  // namespace corepol::units
