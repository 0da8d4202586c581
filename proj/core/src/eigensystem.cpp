// eigensystem.cpp — Eigen-backed Hermitian eigensolve with canonical degenerate subspaces

#include "corepol/eigensystem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace corepol {

namespace {

Eigen::Index largest_component(const Eigen::VectorXcd& v) {
    Eigen::Index idx = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        // strict comparison keeps the lowest index on ties
        if (a > best * (1.0 + 1e-12)) {
            best = a;
            idx = i;
        }
    }
    return idx;
}

void fix_phase(Eigen::Ref<Eigen::VectorXcd> v) {
    const Eigen::Index k = largest_component(v);
    const cdouble pivot = v(k);
    if (std::abs(pivot) == 0.0) return;
    v *= std::conj(pivot) / std::abs(pivot);
    v(k) = std::abs(v(k));   // drop the rounding residue in the imaginary part
}

// Replace the columns of a degenerate cluster by a basis that depends only on the
// subspace, not on the solver's internal rotation.
Eigen::MatrixXcd canonical_cluster(const Eigen::MatrixXcd& cluster) {
    const Eigen::Index dim = cluster.rows();
    const Eigen::Index k = cluster.cols();
    const Eigen::MatrixXcd projector = cluster * cluster.adjoint();

    // Greedy pivoted Gram-Schmidt on the projector columns. `residual` holds every column
    // with the already chosen directions removed, so each step is one rank-1 update.
    Eigen::MatrixXcd residual = projector;
    Eigen::MatrixXcd out(dim, k);
    std::vector<bool> used(static_cast<std::size_t>(dim), false);
    for (Eigen::Index c = 0; c < k; ++c) {
        double best_norm = -1.0;
        Eigen::Index best_idx = 0;
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (used[static_cast<std::size_t>(i)]) continue;
            const double n = residual.col(i).norm();
            if (n > best_norm * (1.0 + 1e-10)) {
                best_norm = n;
                best_idx = i;
            }
        }
        Eigen::VectorXcd q = residual.col(best_idx);
        // re-orthogonalize once for stability
        for (Eigen::Index p = 0; p < c; ++p) q -= out.col(p) * out.col(p).dot(q);
        q /= q.norm();
        out.col(c) = q;
        used[static_cast<std::size_t>(best_idx)] = true;
        residual -= q * (q.adjoint() * residual);
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(k));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        return largest_component(out.col(a)) < largest_component(out.col(b));
    });
    Eigen::MatrixXcd sorted(dim, k);
    for (Eigen::Index c = 0; c < k; ++c) sorted.col(c) = out.col(order[static_cast<std::size_t>(c)]);
    return sorted;
}

}  // namespace

EigenSystem diagonalize(const BlockMatrix& block) {
    const Eigen::Index dim = block.h.rows();
    if (dim == 0 || block.h.cols() != dim)
        throw std::invalid_argument("diagonalize: block " + std::to_string(block.block) + " is empty or not square");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(block.h);
    if (solver.info() != Eigen::Success)
        throw NumericalError("diagonalize: eigensolver failed to converge for block " +
                             std::to_string(block.block) + " (dimension " + std::to_string(dim) + ")");

    EigenSystem es;
    es.block = block.block;
    es.states = block.states;
    es.values = solver.eigenvalues();
    es.vectors = solver.eigenvectors();

    Eigen::Index start = 0;
    while (start < dim) {
        Eigen::Index end = start + 1;
        while (end < dim && es.values(end) - es.values(end - 1) < kDegeneracyGapEv) ++end;
        if (end - start > 1) {
            es.vectors.middleCols(start, end - start) = canonical_cluster(es.vectors.middleCols(start, end - start));
            // Cluster members share one eigenvalue to within the gap; use the mean so that
            // the reported spectrum does not depend on the rotation either.
            const double mean = es.values.segment(start, end - start).mean();
            es.values.segment(start, end - start).setConstant(mean);
        }
        start = end;
    }
    for (Eigen::Index c = 0; c < dim; ++c) fix_phase(es.vectors.col(c));
    return es;
}

double orthonormality_defect(const EigenSystem& es) {
    const Eigen::MatrixXcd gram = es.vectors.adjoint() * es.vectors;
    return (gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double residual_norm(const BlockMatrix& block, const EigenSystem& es) {
    double worst = 0.0;
    for (Eigen::Index c = 0; c < es.size(); ++c) {
        const Eigen::VectorXcd r = block.h * es.vectors.col(c) - es.values(c) * es.vectors.col(c);
        worst = std::max(worst, r.norm());
    }
    return worst;
}

}  // namespace corepol
