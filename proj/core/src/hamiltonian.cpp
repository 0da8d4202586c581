// hamiltonian.cpp — Basis enumeration, block Hamiltonians, external dipole operator

#include "corepol/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <tuple>

namespace corepol {

int BasisState::molecular_quanta() const noexcept {
    switch (kind) {
        case BasisKind::Ground: return 0;
        case BasisKind::Single: return 1;
        case BasisKind::Double:
        case BasisKind::Pair: return 2;
    }
    return 0;
}

const std::vector<BasisState>& BlockBasis::block(int m) const {
    if (m < 0 || m >= static_cast<int>(blocks.size()))
        throw std::out_of_range("BlockBasis: block " + std::to_string(m) + " not enumerated (m_max = " +
                                std::to_string(m_max) + ")");
    return blocks[static_cast<std::size_t>(m)];
}

DimensionError::DimensionError(std::size_t required, std::size_t allowed, int block)
    : std::length_error("dimension cap exceeded: block " + std::to_string(block) + " needs " +
                        std::to_string(required) + " states, cap is " + std::to_string(allowed)),
      required_(required),
      allowed_(allowed) {}

cdouble collective_phase(int j, int n, int N) {
    const long r = (static_cast<long>(j) * n) % N;
    if (r == 0) return {1.0, 0.0};
    if (2 * r == N) return {-1.0, 0.0};
    if (4 * r == N) return {0.0, 1.0};
    if (4 * r == 3L * N) return {0.0, -1.0};
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / N);
}

namespace {

// Dipoles resolved onto level indices.
struct LevelTables {
    std::vector<double> e_energy, f_energy;
    std::vector<double> mu_eg;                 // [a]
    std::vector<std::vector<double>> mu_fe;    // [mu][a]
    int n_molecules{1};
};

LevelTables make_tables(const MoleculeModel& model, const BlockBasis& basis) {
    LevelTables t;
    t.n_molecules = basis.n_molecules;
    const std::string& g = model.ground().id;
    for (const auto& id : basis.e_ids) {
        t.e_energy.push_back(model.find(id)->energy_ev);
        t.mu_eg.push_back(model.dipoles.value_or_zero(g, id));
    }
    for (const auto& fid : basis.f_ids) {
        t.f_energy.push_back(model.find(fid)->energy_ev);
        auto& row = t.mu_fe.emplace_back();
        for (const auto& eid : basis.e_ids) row.push_back(model.dipoles.value_or_zero(eid, fid));
    }
    return t;
}

// <to| sum_n mu_+^(n) |from> on the molecular factor only.
cdouble raise_element(const LevelTables& t, const BasisState& to, const BasisState& from) {
    const int N = t.n_molecules;
    if (from.kind == BasisKind::Ground && to.kind == BasisKind::Single) {
        return to.wave_index == 0 ? cdouble{std::sqrt(static_cast<double>(N)) * t.mu_eg[to.level_a]}
                                  : cdouble{};
    }
    if (from.kind == BasisKind::Single && to.kind == BasisKind::Double) {
        return to.wave_index == from.wave_index ? cdouble{t.mu_fe[to.level_a][from.level_a]} : cdouble{};
    }
    if (from.kind == BasisKind::Single && to.kind == BasisKind::Pair) {
        // Existing excitation on molecule_a (level_a) and the other molecule raised, or vice versa.
        cdouble amp{};
        if (from.level_a == to.level_a)
            amp += collective_phase(from.wave_index, to.molecule_a, N) * t.mu_eg[to.level_b];
        if (from.level_a == to.level_b)
            amp += collective_phase(from.wave_index, to.molecule_b, N) * t.mu_eg[to.level_a];
        return amp / std::sqrt(static_cast<double>(N));
    }
    return {};
}

std::string photon_suffix(int n) { return ",n=" + std::to_string(n); }

BasisState ground_state(int photons, double omega_c) {
    BasisState s;
    s.kind = BasisKind::Ground;
    s.photons = photons;
    s.bare_energy_ev = photons * omega_c;
    s.label = "G" + photon_suffix(photons);
    return s;
}

BasisState single_state(const BlockBasis& b, int a, int j, int photons, double e_energy, double omega_c) {
    BasisState s;
    s.kind = BasisKind::Single;
    s.photons = photons;
    s.level_a = a;
    s.wave_index = j;
    s.bare_energy_ev = e_energy + photons * omega_c;
    s.label = (b.n_molecules == 1 ? b.e_ids[a] : "E[" + b.e_ids[a] + ";k=" + std::to_string(j) + "]") +
              photon_suffix(photons);
    return s;
}

BasisState double_state(const BlockBasis& b, int mu, int j, double f_energy) {
    BasisState s;
    s.kind = BasisKind::Double;
    s.level_a = mu;
    s.wave_index = j;
    s.bare_energy_ev = f_energy;
    s.label = (b.n_molecules == 1 ? b.f_ids[mu] : "F[" + b.f_ids[mu] + ";k=" + std::to_string(j) + "]") +
              photon_suffix(0);
    return s;
}

BasisState pair_state(const BlockBasis& b, int n, int a, int m, int c, double energy) {
    BasisState s;
    s.kind = BasisKind::Pair;
    s.level_a = a;
    s.level_b = c;
    s.molecule_a = n;
    s.molecule_b = m;
    s.bare_energy_ev = energy;
    s.label = "P[" + b.e_ids[a] + "@" + std::to_string(n) + "," + b.e_ids[c] + "@" + std::to_string(m) + "]" +
              photon_suffix(0);
    return s;
}

void sort_block(std::vector<BasisState>& states, const BlockBasis& b) {
    auto id_of = [&](const BasisState& s, int level) -> const std::string& {
        static const std::string none;
        if (level < 0) return none;
        return s.kind == BasisKind::Double ? b.f_ids[level] : b.e_ids[level];
    };
    auto key = [&](const BasisState& s) {
        return std::tuple<int, double, int, const std::string&, const std::string&, int, int, int>(
            s.photons, s.bare_energy_ev, static_cast<int>(s.kind), id_of(s, s.level_a), id_of(s, s.level_b),
            s.wave_index, s.molecule_a, s.molecule_b);
    };
    std::stable_sort(states.begin(), states.end(),
                     [&](const BasisState& x, const BasisState& y) { return key(x) < key(y); });
}

}  // namespace

BlockBasis enumerate_basis(const MoleculeModel& model, const CavityConfig& cavity, int m_max,
                           const BasisOptions& options) {
    if (m_max < 1 || m_max > 2) throw std::invalid_argument("enumerate_basis: m_max must be 1 or 2");
    cavity.validate();

    BlockBasis b;
    b.m_max = m_max;
    b.n_molecules = cavity.n_molecules;
    for (const auto* s : model.manifold(Manifold::E)) b.e_ids.push_back(s->id);
    for (const auto* s : model.manifold(Manifold::F)) b.f_ids.push_back(s->id);

    const std::size_t N = static_cast<std::size_t>(cavity.n_molecules);
    const std::size_t nE = b.e_ids.size();
    const std::size_t nF = b.f_ids.size();
    const bool with_pairs = N > 1 && cavity.n_molecules <= options.pair_limit;
    b.pairs_omitted = N > 1 && !with_pairs;

    const std::size_t dim1 = N * nE + 1;
    const std::size_t n_pairs = with_pairs ? N * (N - 1) / 2 * nE * nE : 0;
    const std::size_t dim2 = N * nF + n_pairs + N * nE + 1;
    if (dim1 > options.max_block_dim) throw DimensionError(dim1, options.max_block_dim, 1);
    if (m_max >= 2 && dim2 > options.max_block_dim) throw DimensionError(dim2, options.max_block_dim, 2);

    const double wc = cavity.omega_c_ev;
    std::vector<double> e_energy, f_energy;
    for (const auto& id : b.e_ids) e_energy.push_back(model.find(id)->energy_ev);
    for (const auto& id : b.f_ids) f_energy.push_back(model.find(id)->energy_ev);

    b.blocks.resize(static_cast<std::size_t>(m_max) + 1);
    b.blocks[0].push_back(ground_state(0, wc));

    auto& b1 = b.blocks[1];
    b1.reserve(dim1);
    for (int a = 0; a < static_cast<int>(nE); ++a)
        for (int j = 0; j < cavity.n_molecules; ++j) b1.push_back(single_state(b, a, j, 0, e_energy[a], wc));
    b1.push_back(ground_state(1, wc));
    sort_block(b1, b);

    if (m_max >= 2) {
        auto& b2 = b.blocks[2];
        b2.reserve(dim2);
        for (int mu = 0; mu < static_cast<int>(nF); ++mu)
            for (int j = 0; j < cavity.n_molecules; ++j) b2.push_back(double_state(b, mu, j, f_energy[mu]));
        if (with_pairs) {
            for (int n = 0; n < cavity.n_molecules; ++n)
                for (int m = n + 1; m < cavity.n_molecules; ++m)
                    for (int a = 0; a < static_cast<int>(nE); ++a)
                        for (int c = 0; c < static_cast<int>(nE); ++c)
                            b2.push_back(pair_state(b, n, a, m, c, e_energy[a] + e_energy[c]));
        }
        for (int a = 0; a < static_cast<int>(nE); ++a)
            for (int j = 0; j < cavity.n_molecules; ++j) b2.push_back(single_state(b, a, j, 1, e_energy[a], wc));
        b2.push_back(ground_state(2, wc));
        sort_block(b2, b);
    }
    return b;
}

BlockMatrix build_block(const MoleculeModel& model, const CavityConfig& cavity, const BlockBasis& basis,
                        int m) {
    const auto& states = basis.block(m);
    const auto tables = make_tables(model, basis);
    const auto dim = static_cast<Eigen::Index>(states.size());

    BlockMatrix out;
    out.block = m;
    out.states = states;
    out.h = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) out.h(i, i) = states[i].bare_energy_ev;

    const double g = cavity.g_ev_per_debye;
    if (g == 0.0) return out;
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto& hi = states[i];
        for (Eigen::Index j = 0; j < dim; ++j) {
            const auto& lo = states[j];
            if (hi.molecular_quanta() != lo.molecular_quanta() + 1 || lo.photons != hi.photons + 1) continue;
            // sigma_+ a: one photon absorbed from |lo>, factor sqrt(n_lo).
            const cdouble v = g * std::sqrt(static_cast<double>(lo.photons)) * raise_element(tables, hi, lo);
            out.h(i, j) = v;
            out.h(j, i) = std::conj(v);
        }
    }
    return out;
}

Eigen::MatrixXcd dipole_operator(const MoleculeModel& model, const CavityConfig& cavity,
                                 const BlockBasis& basis, int m_from, int m_to) {
    (void)cavity;
    if (m_to == m_from - 1) return dipole_operator(model, cavity, basis, m_to, m_from).adjoint();
    if (m_to != m_from + 1)
        throw std::invalid_argument("dipole_operator: blocks " + std::to_string(m_from) + " -> " +
                                    std::to_string(m_to) + " are not adjacent");

    const auto& from = basis.block(m_from);
    const auto& to = basis.block(m_to);
    const auto tables = make_tables(model, basis);
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(to.size()),
                                                static_cast<Eigen::Index>(from.size()));
    for (std::size_t i = 0; i < to.size(); ++i)
        for (std::size_t j = 0; j < from.size(); ++j)
            if (to[i].photons == from[j].photons)
                d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = raise_element(tables, to[i], from[j]);
    return d;
}

double hermiticity_defect(const Eigen::MatrixXcd& h) {
    if (h.size() == 0) return 0.0;
    return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

void dump_block_csv(const BlockMatrix& block, std::ostream& os) {
    os << "# block " << block.block << "\nrow,col,re,im\n";
    char buf[128];
    for (Eigen::Index i = 0; i < block.h.rows(); ++i)
        for (Eigen::Index j = 0; j < block.h.cols(); ++j) {
            const cdouble v = block.h(i, j);
            if (v == cdouble{}) continue;
            std::snprintf(buf, sizeof buf, "%ld,%ld,%.17g,%.17g\n", static_cast<long>(i), static_cast<long>(j),
                          v.real(), v.imag());
            os << buf;
        }
}

}  // namespace corepol
