// corepol.hpp — Umbrella header

#pragma once

#include "corepol/eigensystem.hpp"
#include "corepol/fft_check.hpp"
#include "corepol/hamiltonian.hpp"
#include "corepol/linear.hpp"
#include "corepol/model.hpp"
#include "corepol/nonlinear.hpp"
#include "corepol/output.hpp"
#include "corepol/peaks.hpp"
#include "corepol/polaritons.hpp"
#include "corepol/spectrum.hpp"
#include "corepol/units.hpp"

namespace corepol {

#ifdef COREPOL_VERSION
inline constexpr const char* kVersion = COREPOL_VERSION;
#else
inline constexpr const char* kVersion = "unknown";
#endif

}  // namespace corepol
