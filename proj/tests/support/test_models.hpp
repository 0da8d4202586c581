// test_models.hpp — Small in-memory models shared by the test suites

#pragma once

#include <cmath>
#include <string>

#include "corepol/model.hpp"

#ifndef COREPOL_DATA_DIR
#error "COREPOL_DATA_DIR must point at the bundled model directory"
#endif

namespace corepol::testing {

inline std::string bundled_model_path() { return std::string(COREPOL_DATA_DIR) + "/difluoroethylene.toml"; }

inline MolecularState g_state() { return {"g", Manifold::G, 0.0, "", std::nullopt}; }
inline MolecularState e_state(const std::string& id, double w, const std::string& site) {
    return {id, Manifold::E, w, site, std::nullopt};
}
inline MolecularState f_state(const std::string& id, double w, const std::string& a, const std::string& b) {
    return {id, Manifold::F, w, "", std::pair{a, b}};
}

// One G, one E: the Jaynes-Cummings molecule.
inline MoleculeModel two_level(double w_e = 290.0, double mu = 0.1) {
    MoleculeModel m;
    m.name = "two-level";
    m.states = {g_state(), e_state("e", w_e, "A")};
    m.dipoles.set("g", "e", mu);
    return m;
}

// Harmonic three-level ladder: w_f = 2 w_e, mu_fe = sqrt(2) mu_eg. The F state is a second
// quantum of the same mode, which the file validator would reject (no distinct constituents),
// so this model is only built in memory.
inline MoleculeModel harmonic_ladder(double w = 290.0, double mu = 0.1) {
    MoleculeModel m;
    m.name = "harmonic-ladder";
    MolecularState f{"f", Manifold::F, 2.0 * w, "", std::nullopt};
    m.states = {g_state(), e_state("e", w, "A"), f};
    m.dipoles.set("g", "e", mu);
    m.dipoles.set("e", "f", std::sqrt(2.0) * mu);
    return m;
}

// Two uncoupled sites a, b with the factorized double excitation f = (a, b):
// w_f = w_a + w_b, mu(f <- a) = mu_b, mu(f <- b) = mu_a.
inline MoleculeModel uncorrelated_two_site(double wa = 286.0, double wb = 291.5, double mua = 0.1,
                                           double mub = 0.07) {
    MoleculeModel m;
    m.name = "uncorrelated-two-site";
    m.states = {g_state(), e_state("a", wa, "A"), e_state("b", wb, "B"), f_state("f", wa + wb, "a", "b")};
    m.dipoles.set("g", "a", mua);
    m.dipoles.set("g", "b", mub);
    m.dipoles.set("a", "f", mub);
    m.dipoles.set("b", "f", mua);
    return m;
}

// Generic few-level molecule with `n_e` E states on alternating sites, used for the
// product-space oracle; F states couple every distinct-site pair.
inline MoleculeModel ladder_model(int n_e, bool with_f) {
    MoleculeModel m;
    m.name = "ladder";
    m.states.push_back(g_state());
    for (int a = 0; a < n_e; ++a)
        m.states.push_back(e_state("e" + std::to_string(a), 285.0 + 2.3 * a, a % 2 == 0 ? "A" : "B"));
    for (int a = 0; a < n_e; ++a) m.dipoles.set("g", "e" + std::to_string(a), 0.1 - 0.02 * a);
    if (with_f) {
        int k = 0;
        for (int a = 0; a < n_e; ++a)
            for (int b = a + 1; b < n_e; ++b) {
                if ((a % 2) == (b % 2)) continue;
                const std::string fid = "f" + std::to_string(k++);
                const std::string ea = "e" + std::to_string(a), eb = "e" + std::to_string(b);
                m.states.push_back(f_state(fid, 285.0 + 2.3 * a + 285.0 + 2.3 * b - 0.9, ea, eb));
                m.dipoles.set(ea, fid, 0.06 + 0.01 * b);
                m.dipoles.set(eb, fid, 0.05 + 0.01 * a);
            }
    }
    return m;
}

}  // namespace corepol::testing
