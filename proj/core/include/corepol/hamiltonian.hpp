// hamiltonian.hpp — Excitation-number blocked cavity-molecule Hamiltonians
//
// Rotating-wave coupling H_CM = sum_n g mu^(n) (sigma_+^(n) a + h.c.) conserves the total
// excitation number (molecular quanta + photons), so H splits into blocks m = 0, 1, 2.
// For N > 1 molecules, singly and doubly excited single-molecule states are expanded in
// collective wave-vector states
//
//   |E_{a,k}> = N^{-1/2} sum_{n=0}^{N-1} exp(i k n) |g...e_a^(n)...g>,   k = 2 pi j / N,
//
// while cross-molecule pair states |e_a^(n) e_b^(m)> (n < m) stay site-resolved. The pair
// states couple to |E_{a',k}, 1 photon> through the single-excitation raising operator on
// the *other* molecule, i.e. pair e_a^(n) e_b^(m) couples to e_b^(m) with strength kappa_{a g}
// (and to e_a^(n) with kappa_{b g}), which is the excitation-number-consistent reading of
// the third term of the collective coupling.

#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "corepol/model.hpp"

namespace corepol {

using cdouble = std::complex<double>;

enum class BasisKind {
    Ground,  // |G>
    Single,  // |E_{a,k}> (N = 1: the bare e state)
    Double,  // |F_{mu,k}> (N = 1: the bare f state)
    Pair,    // |e_a^(n) e_b^(m)>, n < m
};

struct BasisState {
    BasisKind kind{BasisKind::Ground};
    int photons{0};
    int level_a{-1};     // E index (Single, Pair on molecule_a) or F index (Double)
    int level_b{-1};     // Pair: E index on molecule_b
    int wave_index{0};   // j in k = 2 pi j / N
    int molecule_a{-1};  // Pair only
    int molecule_b{-1};  // Pair only
    double bare_energy_ev{0.0};
    std::string label;

    int molecular_quanta() const noexcept;
    int excitation() const noexcept { return molecular_quanta() + photons; }
};

struct BasisOptions {
    std::size_t max_block_dim{8192};
    // Cross-molecule pair states grow as N^2 * n_E^2; they are kept only for N <= pair_limit.
    int pair_limit{4};
};

struct BlockBasis {
    int m_max{2};
    int n_molecules{1};
    bool pairs_omitted{false};
    std::vector<std::string> e_ids;   // E level index -> model state id
    std::vector<std::string> f_ids;   // F level index -> model state id
    std::vector<std::vector<BasisState>> blocks;  // blocks[m], m = 0..m_max

    const std::vector<BasisState>& block(int m) const;
    std::size_t dim(int m) const { return block(m).size(); }
};

struct BlockMatrix {
    int block{0};
    Eigen::MatrixXcd h;                // eV
    std::vector<BasisState> states;    // row/column labels
};

class DimensionError : public std::length_error {
public:
    DimensionError(std::size_t required, std::size_t allowed, int block);
    std::size_t required() const noexcept { return required_; }
    std::size_t allowed() const noexcept { return allowed_; }

private:
    std::size_t required_;
    std::size_t allowed_;
};

// exp(2 pi i j n / N), exact at multiples of a quarter turn.
cdouble collective_phase(int j, int n, int N);

// Ordering inside each block: fewer photons first (molecular-excitation-rich states lead),
// then bare energy, then model ids / wave index / molecule indices.
BlockBasis enumerate_basis(const MoleculeModel& model, const CavityConfig& cavity, int m_max,
                           const BasisOptions& options = {});

BlockMatrix build_block(const MoleculeModel& model, const CavityConfig& cavity,
                        const BlockBasis& basis, int m);

// <to_i| sum_n mu^(n) |from_j> in Debye for the external (laser) field; photon number is a
// spectator. Shape dim(m_to) x dim(m_from); requires |m_to - m_from| == 1.
Eigen::MatrixXcd dipole_operator(const MoleculeModel& model, const CavityConfig& cavity,
                                 const BlockBasis& basis, int m_from, int m_to);

// max |H - H^dagger|.
double hermiticity_defect(const Eigen::MatrixXcd& h);

// Debug dump: "row,col,re,im" for every nonzero entry.
void dump_block_csv(const BlockMatrix& block, std::ostream& os);

}  // namespace corepol
