// eigensystem.hpp — Dense Hermitian diagonalization of one excitation block

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "corepol/hamiltonian.hpp"

namespace corepol {

class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EigenSystem {
    int block{0};
    Eigen::VectorXd values;            // eV, ascending
    Eigen::MatrixXcd vectors;          // columns in the block's basis ordering
    std::vector<BasisState> states;

    Eigen::Index size() const noexcept { return values.size(); }
};

// Eigenvalues closer than this are treated as one degenerate cluster.
inline constexpr double kDegeneracyGapEv = 1e-9;

// Output is deterministic: within a degenerate cluster the basis is rebuilt by pivoted
// Gram-Schmidt on the cluster projector and ordered by pivot index; every column is phased
// so that its largest-magnitude component is real and positive.
// Throws NumericalError if the solver does not converge.
EigenSystem diagonalize(const BlockMatrix& block);

// max |V^dagger V - 1|
double orthonormality_defect(const EigenSystem& es);
// max over columns of |H v - lambda v|
double residual_norm(const BlockMatrix& block, const EigenSystem& es);

}  // namespace corepol
