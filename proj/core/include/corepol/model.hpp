// model.hpp — Molecular level scheme, cavity and lineshape parameters, model-file I/O
//
// Units: energies in eV (ground state at 0), dipoles in Debye, couplings in eV/Debye.
// Times elsewhere in the library are in hbar/eV (see units.hpp).

#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace corepol {

inline constexpr int kModelSchemaVersion = 1;

// Site label reserved for cavity quanta; molecular states may not carry it.
inline constexpr std::string_view kPhotonSite = "PHOTON";

enum class Manifold { G, E, F };

std::string_view to_string(Manifold m) noexcept;

struct MolecularState {
    std::string id;
    Manifold manifold{Manifold::G};
    double energy_ev{0.0};
    std::string site;                                   // E states only
    std::optional<std::pair<std::string, std::string>> constituents;  // F states only

    bool operator==(const MolecularState&) const = default;
};

// Transition dipoles projected on the cavity polarization axis. One entry per
// unordered pair, keyed (lower, upper); lookups are symmetric.
class DipoleTable {
public:
    void set(const std::string& lower, const std::string& upper, double debye);
    std::optional<double> get(const std::string& a, const std::string& b) const;
    double value_or_zero(const std::string& a, const std::string& b) const;

    const std::map<std::pair<std::string, std::string>, double>& entries() const noexcept {
        return entries_;
    }
    std::size_t size() const noexcept { return entries_.size(); }

    bool operator==(const DipoleTable&) const = default;

private:
    std::map<std::pair<std::string, std::string>, double> entries_;
};

struct MoleculeModel {
    std::string name;
    std::vector<MolecularState> states;
    DipoleTable dipoles;

    const MolecularState* find(std::string_view id) const;
    const MolecularState& ground() const;
    // States of one manifold in declaration order.
    std::vector<const MolecularState*> manifold(Manifold m) const;
    std::vector<std::string> sites() const;

    bool operator==(const MoleculeModel&) const = default;
};

struct CavityConfig {
    double omega_c_ev{290.0};
    double g_ev_per_debye{0.0};   // per-molecule value; the collective g*sqrt(N) is derived
    int n_max{2};
    int n_molecules{1};

    void validate() const;
    bool operator==(const CavityConfig&) const = default;
};

enum class Lineshape { Lorentzian };

struct LineshapeConfig {
    double gamma_e_ev{0.2};   // HWHM of g-e coherences
    double gamma_f_ev{0.4};   // HWHM of g-f and e-f coherences
    Lineshape lineshape{Lineshape::Lorentzian};

    void validate() const;
    bool operator==(const LineshapeConfig&) const = default;
};

struct ModelBundle {
    MoleculeModel molecule;
    CavityConfig cavity;
    LineshapeConfig lineshape;

    bool operator==(const ModelBundle&) const = default;
};

class ModelError : public std::runtime_error {
public:
    enum class Kind { Parse, Validation };

    ModelError(Kind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Throws ModelError(Validation) naming the violated rule and offending id.
void validate(const MoleculeModel& model);

ModelBundle parse_model(std::string_view text, const std::string& source = "<string>");
ModelBundle load_model(const std::filesystem::path& path);

// Emits the TOML schema accepted by parse_model; parse_model(serialize_model(b)) == b.
std::string serialize_model(const ModelBundle& bundle);

}  // namespace corepol
