// test_eigensystem.cpp — Diagonalization accuracy, determinism and polariton dipoles

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "corepol/eigensystem.hpp"
#include "corepol/polaritons.hpp"
#include "test_models.hpp"

using namespace corepol;
namespace ct = corepol::testing;

namespace {

EigenSystem solve_block(const MoleculeModel& m, const CavityConfig& cav, int block, int m_max = 2) {
    const auto basis = enumerate_basis(m, cav, m_max);
    return diagonalize(build_block(m, cav, basis, block));
}

}  // namespace

TEST_CASE("resonant Jaynes-Cummings doublet") {
    CavityConfig cav;
    cav.g_ev_per_debye = 2.45;
    const auto es = solve_block(ct::two_level(290.0, 0.1), cav, 1, 1);
    REQUIRE(es.size() == 2);
    CHECK(std::abs(es.values(0) - (290.0 - 0.245)) < 1e-12);
    CHECK(std::abs(es.values(1) - (290.0 + 0.245)) < 1e-12);
    // equal-weight mixtures
    for (int c = 0; c < 2; ++c) CHECK(std::abs(std::norm(es.vectors(0, c)) - 0.5) < 1e-12);
}

TEST_CASE("detuned Jaynes-Cummings doublet") {
    CavityConfig cav;
    cav.omega_c_ev = 288.0;
    cav.g_ev_per_debye = 2.45;
    const auto es = solve_block(ct::two_level(290.0, 0.1), cav, 1, 1);
    const double half = std::sqrt(1.0 + 0.245 * 0.245);
    CHECK(std::abs(es.values(0) - (289.0 - half)) < 1e-12);
    CHECK(std::abs(es.values(1) - (289.0 + half)) < 1e-12);
    CHECK(std::abs(half - 1.02957) < 1e-5);
}

TEST_CASE("accuracy over random cavities (property)") {
    const auto bundle = load_model(ct::bundled_model_path());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 30; ++trial) {
        CavityConfig cav;
        cav.omega_c_ev = 283.0 + 12.0 * u(rng);
        cav.g_ev_per_debye = 8.0 * u(rng);
        cav.n_molecules = 1 + static_cast<int>(u(rng) * 4);
        const auto basis = enumerate_basis(bundle.molecule, cav, 2);
        for (int m = 0; m <= 2; ++m) {
            const auto blk = build_block(bundle.molecule, cav, basis, m);
            const auto es = diagonalize(blk);
            CHECK(orthonormality_defect(es) < 1e-12);
            CHECK(residual_norm(blk, es) < 1e-10);
            CHECK(std::is_sorted(es.values.data(), es.values.data() + es.size()));
            CHECK(std::abs(es.values.sum() - blk.h.trace().real()) < 1e-9);
            for (Eigen::Index c = 0; c < es.size(); ++c) {
                // some (near-)largest component is exactly real and positive
                const double top = es.vectors.col(c).cwiseAbs().maxCoeff();
                bool phased = false;
                for (Eigen::Index k = 0; k < es.vectors.rows(); ++k) {
                    const cdouble z = es.vectors(k, c);
                    if (std::abs(z) >= top - 1e-12 && z.imag() == 0.0 && z.real() > 0.0) phased = true;
                }
                CHECK(phased);
            }
        }
    }
}

TEST_CASE("degenerate dark manifold is canonical") {
    CavityConfig cav;
    cav.n_molecules = 4;
    cav.g_ev_per_debye = 2.0;
    const auto model = ct::two_level(290.0, 0.1);
    const auto a = solve_block(model, cav, 1, 1);
    const auto b = solve_block(model, cav, 1, 1);
    CHECK(a.values == b.values);
    CHECK(a.vectors == b.vectors);
    // three dark states at the bare energy, collapsed onto one value
    int dark = 0;
    for (Eigen::Index i = 0; i < a.size(); ++i)
        if (std::abs(a.values(i) - 290.0) < 1e-9) ++dark;
    CHECK(dark == 3);
    const auto basis = enumerate_basis(model, cav, 1);
    const auto blk = build_block(model, cav, basis, 1);
    CHECK(residual_norm(blk, a) < 1e-10);
    CHECK(orthonormality_defect(a) < 1e-12);
}

TEST_CASE("coupling continuity as g goes to zero (property)") {
    const auto bundle = load_model(ct::bundled_model_path());
    const auto bare = solve_block(bundle.molecule, bundle.cavity, 1);
    for (double g : {1e-3, 1e-5, 1e-7}) {
        auto cav = bundle.cavity;
        cav.g_ev_per_debye = g;
        const auto es = solve_block(bundle.molecule, cav, 1);
        // first-order shift bounded by g * |mu|_max
        CHECK((es.values - bare.values).cwiseAbs().maxCoeff() <= 2.0 * g * 0.1);
    }
}

TEST_CASE("polariton transition dipoles") {
    const auto bundle = load_model(ct::bundled_model_path());
    const auto p = solve_polaritons(bundle.molecule, bundle.cavity, 2);
    REQUIRE(p.has_doubles());
    CHECK(p.d10.size() == 6);
    CHECK(p.d21.rows() == 8);
    CHECK(p.d21.cols() == 6);
    // bare case: |d10| equals the file dipoles in energy order, photon state dark
    std::vector<double> mags;
    for (Eigen::Index i = 0; i < p.d10.size(); ++i) mags.push_back(std::abs(p.d10(i)));
    CHECK(mags == std::vector<double>{0.1, 0.04, 0.07, 0.0, 0.05, 0.05});

    // sum rule on the ground column: sum |d10|^2 is g-independent
    auto cav = bundle.cavity;
    cav.g_ev_per_debye = 4.9;
    const auto q = solve_polaritons(bundle.molecule, cav, 2);
    CHECK(std::abs(q.d10.squaredNorm() - p.d10.squaredNorm()) < 1e-14);
    CHECK(std::abs(q.d21.squaredNorm() - p.d21.squaredNorm()) < 1e-12);

    const auto single = solve_polaritons(bundle.molecule, cav, 1);
    CHECK_FALSE(single.has_doubles());
    CHECK(single.d21.size() == 0);
}
