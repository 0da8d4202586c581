// polaritons.cpp

#include "corepol/polaritons.hpp"

namespace corepol {

Polaritons solve_polaritons(const MoleculeModel& model, const CavityConfig& cavity, int m_max,
                            const BasisOptions& options) {
    Polaritons p;
    p.basis = enumerate_basis(model, cavity, m_max, options);
    for (int m = 0; m <= m_max; ++m) p.eig.push_back(diagonalize(build_block(model, cavity, p.basis, m)));

    const Eigen::MatrixXcd d10_bare = dipole_operator(model, cavity, p.basis, 0, 1);
    p.d10 = p.eig[1].vectors.adjoint() * d10_bare * p.eig[0].vectors.col(0);
    if (m_max >= 2) {
        const Eigen::MatrixXcd d21_bare = dipole_operator(model, cavity, p.basis, 1, 2);
        p.d21 = p.eig[2].vectors.adjoint() * d21_bare * p.eig[1].vectors;
    }
    return p;
}

}  // namespace corepol
