// output.hpp — CSV / JSON writers for spectra and decompositions
//
// CSV: metadata lines "# key: value", one column-header line, then data rows in %.8e.
//   1D:            omega_ev,intensity
//   2D (long form): axis1_ev,axis2_ev,re,im,abs      (axis1 slowest)
//   decomposition: state,energy_ev,strength,<tag>...
// JSON: {"metadata": {...}, axes arrays, row-major value arrays}.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "corepol/linear.hpp"
#include "corepol/spectrum.hpp"

namespace corepol {

void write_csv(const Spectrum1D& s, std::ostream& os);
void write_csv(const Spectrum2D& s, std::ostream& os);
void write_json(const Spectrum1D& s, std::ostream& os);
void write_json(const Spectrum2D& s, std::ostream& os);

void write_csv(const Decomposition& d, const std::vector<StickLine>& sticks, const Metadata& meta, std::ostream& os);
void write_json(const Decomposition& d, const std::vector<StickLine>& sticks, const Metadata& meta, std::ostream& os);

void write_metadata_header(const Metadata& meta, std::ostream& os);

// Parses the leading "# key: value" lines of a CSV file.
Metadata read_metadata_header(std::istream& is);

}  // namespace corepol
