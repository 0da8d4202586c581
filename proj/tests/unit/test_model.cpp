// test_model.cpp — Model file parsing, validation and round-trip

#include <doctest.h>

#include <random>
#include <string>

#include "corepol/model.hpp"
#include "test_models.hpp"

using namespace corepol;
using corepol::testing::bundled_model_path;

namespace {

const char* kMinimal = R"(
[model]
name = "mini"

[[state]]
id = "g"
manifold = "G"
energy_ev = 0.0

[[state]]
id = "a"
manifold = "E"
energy_ev = 286.0
site = "A"

[[state]]
id = "b"
manifold = "E"
energy_ev = 290.0
site = "B"

[[state]]
id = "ab"
manifold = "F"
energy_ev = 575.0
constituents = ["a", "b"]

[[dipole]]
from = "g"
to = "a"
value_debye = 0.1

[[dipole]]
from = "b"
to = "ab"
value_debye = 0.05
)";

ModelError::Kind error_kind(const std::string& text) {
    try {
        parse_model(text);
    } catch (const ModelError& e) {
        return e.kind();
    }
    FAIL("expected a ModelError");
    return ModelError::Kind::Parse;
}

std::string with(const std::string& extra) { return std::string(kMinimal) + extra; }

}  // namespace

TEST_CASE("bundled model loads with the expected level scheme") {
    const auto b = load_model(bundled_model_path());
    CHECK(b.molecule.name == "1,1-difluoroethylene");
    CHECK(b.molecule.manifold(Manifold::E).size() == 5);
    CHECK(b.molecule.manifold(Manifold::F).size() == 2);
    CHECK(b.molecule.sites() == std::vector<std::string>{"CH2", "CF2"});
    CHECK(b.molecule.find("pi_pi")->energy_ev == 573.9);
    CHECK(b.molecule.find("pi_ry")->energy_ev == 584.1);
    CHECK(b.cavity == CavityConfig{});
    CHECK(b.lineshape.gamma_e_ev == 0.1);
    CHECK(b.lineshape.gamma_f_ev == 0.2);
}

TEST_CASE("missing optional tables fall back to defaults") {
    const auto b = parse_model(kMinimal);
    CHECK(b.cavity.omega_c_ev == 290.0);
    CHECK(b.cavity.g_ev_per_debye == 0.0);
    CHECK(b.cavity.n_max == 2);
    CHECK(b.lineshape.gamma_e_ev == 0.2);
    CHECK(b.lineshape.gamma_f_ev == 0.4);
}

TEST_CASE("dipole lookups are symmetric and default to zero") {
    const auto b = parse_model(kMinimal);
    CHECK(b.molecule.dipoles.value_or_zero("g", "a") == 0.1);
    CHECK(b.molecule.dipoles.value_or_zero("a", "g") == 0.1);
    CHECK(b.molecule.dipoles.value_or_zero("g", "b") == 0.0);
    CHECK_FALSE(b.molecule.dipoles.get("a", "ab").has_value());
}

TEST_CASE("parse errors") {
    CHECK(error_kind("[model") == ModelError::Kind::Parse);
    CHECK(error_kind("[[state]]\nid='g'\nmanifold='G'\nenergy_ev=0.0\n") == ModelError::Kind::Parse);
    CHECK(error_kind(with("[cavity]\nomega_c = 290.0\n")) == ModelError::Kind::Parse);
    CHECK(error_kind(with("[lineshape]\nlineshape = \"GAUSSIAN\"\n")) == ModelError::Kind::Parse);
    CHECK(error_kind(std::string(kMinimal).replace(std::string(kMinimal).find("name"), 4, "nam")) ==
          ModelError::Kind::Parse);
    CHECK(error_kind("[model]\nname='x'\nschema_version=2\n[[state]]\nid='g'\nmanifold='G'\nenergy_ev=0.0\n") ==
          ModelError::Kind::Parse);
    CHECK_THROWS_AS(load_model("/nonexistent/model.toml"), ModelError);
}

TEST_CASE("validation rules") {
    using K = ModelError::Kind;
    SUBCASE("duplicate dipole") {
        CHECK(error_kind(with("[[dipole]]\nfrom='a'\nto='g'\nvalue_debye=0.2\n")) == K::Validation);
    }
    SUBCASE("direct G to F dipole") {
        CHECK(error_kind(with("[[dipole]]\nfrom='g'\nto='ab'\nvalue_debye=0.2\n")) == K::Validation);
    }
    SUBCASE("E to E dipole") {
        CHECK(error_kind(with("[[dipole]]\nfrom='a'\nto='b'\nvalue_debye=0.2\n")) == K::Validation);
    }
    SUBCASE("undeclared state") {
        CHECK(error_kind(with("[[dipole]]\nfrom='g'\nto='zz'\nvalue_debye=0.2\n")) == K::Validation);
    }
    SUBCASE("reserved photon site") {
        CHECK(error_kind(with("[[state]]\nid='c'\nmanifold='E'\nenergy_ev=291.0\nsite='PHOTON'\n")) == K::Validation);
    }
    SUBCASE("same-site double excitation") {
        CHECK(error_kind(with("[[state]]\nid='c'\nmanifold='E'\nenergy_ev=291.0\nsite='A'\n"
                              "[[state]]\nid='ac'\nmanifold='F'\nenergy_ev=577.0\nconstituents=['a','c']\n")) ==
              K::Validation);
    }
    SUBCASE("second ground state") {
        CHECK(error_kind(with("[[state]]\nid='g2'\nmanifold='G'\nenergy_ev=0.0\n")) == K::Validation);
    }
    SUBCASE("negative coupling") {
        CHECK(error_kind(with("[cavity]\ng_ev_per_debye = -1.0\n")) == K::Validation);
    }
    SUBCASE("non-positive width") {
        CHECK(error_kind(with("[lineshape]\ngamma_e_ev = 0.0\n")) == K::Validation);
    }
    SUBCASE("n_max too small") {
        CHECK(error_kind(with("[cavity]\nn_max = 1\n")) == K::Validation);
    }
}

TEST_CASE("in-memory ladder without constituents is rejected by the validator") {
    CHECK_THROWS_AS(validate(corepol::testing::harmonic_ladder()), ModelError);
    CHECK_NOTHROW(validate(corepol::testing::uncorrelated_two_site()));
}

TEST_CASE("serialize then parse is the identity (property, random parameters)") {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto base = load_model(bundled_model_path());
    for (int trial = 0; trial < 50; ++trial) {
        ModelBundle b = base;
        for (auto& s : b.molecule.states)
            if (s.manifold != Manifold::G) s.energy_ev += u(rng) * 3.0 - 1.5 + 1e-13 * u(rng);
        for (const auto& [key, v] : base.molecule.dipoles.entries())
            b.molecule.dipoles.set(key.first, key.second, v * (0.5 + u(rng)));
        b.cavity.omega_c_ev = 280.0 + 20.0 * u(rng);
        b.cavity.g_ev_per_debye = 5.0 * u(rng);
        b.cavity.n_molecules = 1 + static_cast<int>(u(rng) * 5);
        b.lineshape.gamma_e_ev = 0.05 + u(rng);
        b.lineshape.gamma_f_ev = 0.05 + u(rng);
        const auto text = serialize_model(b);
        const auto back = parse_model(text);
        CHECK(back == b);
        CHECK(serialize_model(back) == text);
    }
}
