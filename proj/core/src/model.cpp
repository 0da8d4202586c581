// model.cpp — Model-file parsing (TOML subset), validation and serialization

#include "corepol/model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

namespace corepol {

std::string_view to_string(Manifold m) noexcept {
    switch (m) {
        case Manifold::G: return "G";
        case Manifold::E: return "E";
        case Manifold::F: return "F";
    }
    return "?";
}

// ------------------------------- DipoleTable --------------------------------

void DipoleTable::set(const std::string& lower, const std::string& upper, double debye) {
    entries_.erase({upper, lower});
    entries_[{lower, upper}] = debye;
}

std::optional<double> DipoleTable::get(const std::string& a, const std::string& b) const {
    if (auto it = entries_.find({a, b}); it != entries_.end()) return it->second;
    if (auto it = entries_.find({b, a}); it != entries_.end()) return it->second;
    return std::nullopt;
}

double DipoleTable::value_or_zero(const std::string& a, const std::string& b) const {
    return get(a, b).value_or(0.0);
}

// ------------------------------ MoleculeModel -------------------------------

const MolecularState* MoleculeModel::find(std::string_view id) const {
    auto it = std::find_if(states.begin(), states.end(),
                           [&](const MolecularState& s) { return s.id == id; });
    return it == states.end() ? nullptr : &*it;
}

const MolecularState& MoleculeModel::ground() const {
    for (const auto& s : states)
        if (s.manifold == Manifold::G) return s;
    throw ModelError(ModelError::Kind::Validation, "model has no ground (G) state");
}

std::vector<const MolecularState*> MoleculeModel::manifold(Manifold m) const {
    std::vector<const MolecularState*> out;
    for (const auto& s : states)
        if (s.manifold == m) out.push_back(&s);
    return out;
}

std::vector<std::string> MoleculeModel::sites() const {
    std::vector<std::string> out;
    for (const auto& s : states) {
        if (s.manifold != Manifold::E) continue;
        if (std::find(out.begin(), out.end(), s.site) == out.end()) out.push_back(s.site);
    }
    return out;
}

// ------------------------------- validation ---------------------------------

namespace {

[[noreturn]] void invalid(const std::string& msg) {
    throw ModelError(ModelError::Kind::Validation, "validation error: " + msg);
}

}  // namespace

void CavityConfig::validate() const {
    if (!(omega_c_ev > 0.0) || !std::isfinite(omega_c_ev))
        invalid("cavity omega_c_ev must be > 0");
    if (!(g_ev_per_debye >= 0.0) || !std::isfinite(g_ev_per_debye))
        invalid("cavity g_ev_per_debye must be >= 0");
    if (n_max < 2)
        invalid("cavity n_max must be >= 2 (two-excitation manifold needs two photons)");
    if (n_molecules < 1)
        invalid("cavity n_molecules must be >= 1");
}

void LineshapeConfig::validate() const {
    if (!(gamma_e_ev > 0.0) || !std::isfinite(gamma_e_ev))
        invalid("lineshape gamma_e_ev must be > 0");
    if (!(gamma_f_ev > 0.0) || !std::isfinite(gamma_f_ev))
        invalid("lineshape gamma_f_ev must be > 0");
}

void validate(const MoleculeModel& model) {
    std::set<std::string> ids;
    int n_ground = 0;
    for (const auto& s : model.states) {
        if (s.id.empty()) invalid("state with empty id");
        if (!ids.insert(s.id).second) invalid("duplicate state id '" + s.id + "'");
        if (!std::isfinite(s.energy_ev)) invalid("non-finite energy for state '" + s.id + "'");

        switch (s.manifold) {
            case Manifold::G:
                ++n_ground;
                if (s.energy_ev != 0.0) invalid("ground state '" + s.id + "' must have energy 0");
                if (!s.site.empty()) invalid("ground state '" + s.id + "' may not carry a site");
                if (s.constituents) invalid("ground state '" + s.id + "' may not list constituents");
                break;
            case Manifold::E:
                if (!(s.energy_ev > 0.0)) invalid("E state '" + s.id + "' must have positive energy");
                if (s.site.empty()) invalid("E state '" + s.id + "' has no site tag");
                if (s.site == kPhotonSite)
                    invalid("E state '" + s.id + "' uses the reserved PHOTON site tag");
                if (s.constituents) invalid("E state '" + s.id + "' may not list constituents");
                break;
            case Manifold::F:
                if (!(s.energy_ev > 0.0)) invalid("F state '" + s.id + "' must have positive energy");
                if (!s.site.empty()) invalid("F state '" + s.id + "' may not carry a site");
                if (!s.constituents) invalid("F state '" + s.id + "' must list two constituents");
                break;
        }
    }
    if (n_ground != 1)
        invalid("model must have exactly one G state (found " + std::to_string(n_ground) + ")");

    for (const auto& s : model.states) {
        if (s.manifold != Manifold::F) continue;
        const auto& [a, b] = *s.constituents;
        const auto* ea = model.find(a);
        const auto* eb = model.find(b);
        if (!ea || ea->manifold != Manifold::E)
            invalid("F state '" + s.id + "' constituent '" + a + "' is not an E state");
        if (!eb || eb->manifold != Manifold::E)
            invalid("F state '" + s.id + "' constituent '" + b + "' is not an E state");
        if (a == b) invalid("F state '" + s.id + "' lists the same constituent twice");
        if (ea->site == eb->site)
            invalid("F state '" + s.id + "' constituents share site '" + ea->site +
                    "' (same-atom double core excitation)");
    }

    for (const auto& [key, value] : model.dipoles.entries()) {
        const auto& [lo, hi] = key;
        const auto* sl = model.find(lo);
        const auto* sh = model.find(hi);
        if (!sl) invalid("dipole references undeclared state '" + lo + "'");
        if (!sh) invalid("dipole references undeclared state '" + hi + "'");
        if (!std::isfinite(value)) invalid("non-finite dipole " + lo + "->" + hi);
        const Manifold lower = std::min(sl->manifold, sh->manifold);
        const Manifold upper = std::max(sl->manifold, sh->manifold);
        const bool ge = lower == Manifold::G && upper == Manifold::E;
        const bool ef = lower == Manifold::E && upper == Manifold::F;
        if (lower == Manifold::G && upper == Manifold::F)
            invalid("direct G->F dipole " + lo + "->" + hi + " is not allowed");
        if (!ge && !ef)
            invalid("dipole " + lo + "->" + hi + " must connect G->E or E->F");
    }
}

// --------------------------------- parsing ----------------------------------

namespace {

[[noreturn]] void parse_fail(const std::string& source, const std::string& msg) {
    throw ModelError(ModelError::Kind::Parse, "parse error in " + source + ": " + msg);
}

void reject_unknown_keys(const toml::table& t, std::initializer_list<std::string_view> allowed,
                         const std::string& where, const std::string& source) {
    for (const auto& [k, v] : t) {
        (void)v;
        if (std::find(allowed.begin(), allowed.end(), k.str()) == allowed.end())
            parse_fail(source, "unknown key '" + std::string(k.str()) + "' in " + where);
    }
}

std::string req_string(const toml::table& t, std::string_view key, const std::string& where,
                       const std::string& source) {
    auto v = t[key].value<std::string>();
    if (!v) parse_fail(source, where + ": missing or non-string '" + std::string(key) + "'");
    return *v;
}

double req_number(const toml::table& t, std::string_view key, const std::string& where,
                  const std::string& source) {
    auto node = t[key];
    if (!node) parse_fail(source, where + ": missing '" + std::string(key) + "'");
    if (!node.is_number()) parse_fail(source, where + ": '" + std::string(key) + "' is not a number");
    return *node.value<double>();
}

std::optional<double> opt_number(const toml::table& t, std::string_view key, const std::string& where,
                                 const std::string& source) {
    auto node = t[key];
    if (!node) return std::nullopt;
    if (!node.is_number()) parse_fail(source, where + ": '" + std::string(key) + "' is not a number");
    return node.value<double>();
}

std::optional<int> opt_integer(const toml::table& t, std::string_view key, const std::string& where,
                               const std::string& source) {
    auto node = t[key];
    if (!node) return std::nullopt;
    if (!node.is_integer()) parse_fail(source, where + ": '" + std::string(key) + "' is not an integer");
    return static_cast<int>(*node.value<std::int64_t>());
}

Manifold parse_manifold(const std::string& s, const std::string& where, const std::string& source) {
    if (s == "G") return Manifold::G;
    if (s == "E") return Manifold::E;
    if (s == "F") return Manifold::F;
    parse_fail(source, where + ": manifold must be one of G, E, F (got '" + s + "')");
}

const toml::array* array_of_tables(const toml::table& root, std::string_view key,
                                   const std::string& source) {
    auto node = root[key];
    if (!node) return nullptr;
    const auto* arr = node.as_array();
    if (!arr || !arr->is_array_of_tables())
        parse_fail(source, "'" + std::string(key) + "' must be an array of tables ([[" +
                               std::string(key) + "]])");
    return arr;
}

}  // namespace

ModelBundle parse_model(std::string_view text, const std::string& source) {
    toml::table root;
    try {
        root = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        std::ostringstream msg;
        msg << e.description() << " (line " << e.source().begin.line << ")";
        parse_fail(source, msg.str());
    }
    reject_unknown_keys(root, {"model", "state", "dipole", "cavity", "lineshape"}, "top level", source);

    ModelBundle out;

    const auto* model_tbl = root["model"].as_table();
    if (!model_tbl) parse_fail(source, "missing [model] table");
    reject_unknown_keys(*model_tbl, {"name", "schema_version"}, "[model]", source);
    out.molecule.name = req_string(*model_tbl, "name", "[model]", source);
    if (auto ver = opt_integer(*model_tbl, "schema_version", "[model]", source);
        ver && *ver != kModelSchemaVersion) {
        parse_fail(source, "unsupported schema_version " + std::to_string(*ver) + " (expected " +
                               std::to_string(kModelSchemaVersion) + ")");
    }

    if (const auto* states = array_of_tables(root, "state", source)) {
        std::size_t idx = 0;
        for (const auto& node : *states) {
            const auto& t = *node.as_table();
            const std::string where = "[[state]] #" + std::to_string(idx++);
            reject_unknown_keys(t, {"id", "manifold", "energy_ev", "site", "constituents"}, where, source);

            MolecularState s;
            s.id = req_string(t, "id", where, source);
            s.manifold = parse_manifold(req_string(t, "manifold", where, source), where, source);
            s.energy_ev = req_number(t, "energy_ev", where, source);
            if (t.contains("site")) s.site = req_string(t, "site", where, source);
            if (auto c = t["constituents"]) {
                const auto* arr = c.as_array();
                if (!arr || arr->size() != 2 || !(*arr)[0].is_string() || !(*arr)[1].is_string())
                    parse_fail(source, where + ": constituents must be an array of two state ids");
                s.constituents = std::pair{*(*arr)[0].value<std::string>(),
                                           *(*arr)[1].value<std::string>()};
            }
            out.molecule.states.push_back(std::move(s));
        }
    }

    if (const auto* dipoles = array_of_tables(root, "dipole", source)) {
        std::size_t idx = 0;
        for (const auto& node : *dipoles) {
            const auto& t = *node.as_table();
            const std::string where = "[[dipole]] #" + std::to_string(idx++);
            reject_unknown_keys(t, {"from", "to", "value_debye"}, where, source);
            std::string from = req_string(t, "from", where, source);
            std::string to = req_string(t, "to", where, source);
            const double value = req_number(t, "value_debye", where, source);
            if (out.molecule.dipoles.get(from, to))
                invalid("duplicate dipole " + from + "->" + to);
            // Store lower manifold first when both ends are known.
            const auto* sf = out.molecule.find(from);
            const auto* st = out.molecule.find(to);
            if (sf && st && sf->manifold > st->manifold) std::swap(from, to);
            out.molecule.dipoles.set(from, to, value);
        }
    }

    if (const auto* cav = root["cavity"].as_table()) {
        reject_unknown_keys(*cav, {"omega_c_ev", "g_ev_per_debye", "n_max", "n_molecules"}, "[cavity]",
                            source);
        if (auto v = opt_number(*cav, "omega_c_ev", "[cavity]", source)) out.cavity.omega_c_ev = *v;
        if (auto v = opt_number(*cav, "g_ev_per_debye", "[cavity]", source)) out.cavity.g_ev_per_debye = *v;
        if (auto v = opt_integer(*cav, "n_max", "[cavity]", source)) out.cavity.n_max = *v;
        if (auto v = opt_integer(*cav, "n_molecules", "[cavity]", source)) out.cavity.n_molecules = *v;
    }

    if (const auto* ls = root["lineshape"].as_table()) {
        reject_unknown_keys(*ls, {"gamma_e_ev", "gamma_f_ev", "lineshape"}, "[lineshape]", source);
        if (auto v = opt_number(*ls, "gamma_e_ev", "[lineshape]", source)) out.lineshape.gamma_e_ev = *v;
        if (auto v = opt_number(*ls, "gamma_f_ev", "[lineshape]", source)) out.lineshape.gamma_f_ev = *v;
        if (ls->contains("lineshape")) {
            const auto kind = req_string(*ls, "lineshape", "[lineshape]", source);
            if (kind != "LORENTZIAN") parse_fail(source, "[lineshape]: unsupported lineshape '" + kind + "'");
        }
    }

    validate(out.molecule);
    out.cavity.validate();
    out.lineshape.validate();
    return out;
}

ModelBundle load_model(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ModelError(ModelError::Kind::Parse, "cannot open model file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str(), path.string());
}

// ------------------------------- serializing --------------------------------

namespace {

std::string fmt_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, end);
    // TOML floats need a fractional part or exponent.
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char esc[8];
                    std::snprintf(esc, sizeof esc, "\\u%04x", static_cast<unsigned>(c));
                    out += esc;
                } else {
                    out += c;
                }
        }
    }
    return out + "\"";
}

}  // namespace

std::string serialize_model(const ModelBundle& b) {
    std::ostringstream os;
    os << "# corepol model file (schema " << kModelSchemaVersion << ")\n"
       << "# energies in eV, dipoles in Debye, g in eV/Debye; times elsewhere in hbar/eV\n\n";
    os << "[model]\nname = " << quote(b.molecule.name) << "\nschema_version = " << kModelSchemaVersion
       << "\n";
    for (const auto& s : b.molecule.states) {
        os << "\n[[state]]\nid = " << quote(s.id) << "\nmanifold = " << quote(to_string(s.manifold))
           << "\nenergy_ev = " << fmt_double(s.energy_ev) << "\n";
        if (!s.site.empty()) os << "site = " << quote(s.site) << "\n";
        if (s.constituents)
            os << "constituents = [" << quote(s.constituents->first) << ", "
               << quote(s.constituents->second) << "]\n";
    }
    for (const auto& [key, value] : b.molecule.dipoles.entries()) {
        os << "\n[[dipole]]\nfrom = " << quote(key.first) << "\nto = " << quote(key.second)
           << "\nvalue_debye = " << fmt_double(value) << "\n";
    }
    os << "\n[cavity]\nomega_c_ev = " << fmt_double(b.cavity.omega_c_ev)
       << "\ng_ev_per_debye = " << fmt_double(b.cavity.g_ev_per_debye) << "\nn_max = " << b.cavity.n_max
       << "\nn_molecules = " << b.cavity.n_molecules << "\n";
    os << "\n[lineshape]\ngamma_e_ev = " << fmt_double(b.lineshape.gamma_e_ev)
       << "\ngamma_f_ev = " << fmt_double(b.lineshape.gamma_f_ev) << "\nlineshape = \"LORENTZIAN\"\n";
    return os.str();
}

}  // namespace corepol
