// polaritons.hpp — Diagonalized blocks plus external transition dipoles in the eigenbasis

#pragma once

#include <vector>

#include <Eigen/Dense>

#include "corepol/eigensystem.hpp"
#include "corepol/hamiltonian.hpp"
#include "corepol/model.hpp"

namespace corepol {

struct Polaritons {
    BlockBasis basis;
    std::vector<EigenSystem> eig;   // eig[m], m = 0..basis.m_max
    Eigen::VectorXcd d10;           // <e|mu|g>, one entry per block-1 eigenstate
    Eigen::MatrixXcd d21;           // <f|mu|e>, dim2 x dim1; empty when m_max < 2

    const EigenSystem& ground() const { return eig.at(0); }
    const EigenSystem& singles() const { return eig.at(1); }
    const EigenSystem& doubles() const { return eig.at(2); }
    bool has_doubles() const noexcept { return eig.size() > 2; }
};

Polaritons solve_polaritons(const MoleculeModel& model, const CavityConfig& cavity, int m_max,
                            const BasisOptions& options = {});

}  // namespace corepol
