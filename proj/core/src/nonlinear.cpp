// nonlinear.cpp — Pathway enumeration and closed-form 2D / TPA evaluation

#include "corepol/nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "corepol/linear.hpp"

namespace corepol {

std::string_view to_string(Diagram d) noexcept {
    switch (d) {
        case Diagram::SE: return "SE";
        case Diagram::GSB: return "GSB";
        case Diagram::ESA: return "ESA";
        case Diagram::DQC_I: return "DQC-I";
        case Diagram::DQC_II: return "DQC-II";
    }
    return "?";
}

std::string_view to_string(SignalKind s) noexcept {
    return s == SignalKind::PhotonEcho ? "pe" : "dqc";
}

void PulseFilter::validate() const {
    if (!(bandwidth_ev > 0.0)) throw std::invalid_argument("pulse filter bandwidth must be > 0");
    if (!std::isfinite(center_ev)) throw std::invalid_argument("pulse filter center must be finite");
}

bool PulseFilter::passes(double w) const noexcept {
    if (std::isinf(bandwidth_ev)) return true;
    return std::abs(w - center_ev) <= 0.5 * bandwidth_ev;
}

std::size_t PathwaySet::count(Diagram d) const {
    return static_cast<std::size_t>(
        std::count_if(pathways.begin(), pathways.end(), [&](const Pathway& p) { return p.diagram == d; }));
}

PathwaySet PathwaySet::only(Diagram d) const {
    PathwaySet out{signal, filter, {}};
    std::copy_if(pathways.begin(), pathways.end(), std::back_inserter(out.pathways),
                 [&](const Pathway& p) { return p.diagram == d; });
    return out;
}

PathwaySet enumerate_pathways(const Polaritons& p, SignalKind signal, const PulseFilter& filter,
                              const LineshapeConfig& lineshape) {
    filter.validate();
    lineshape.validate();
    if (signal == SignalKind::DoubleQuantum && !p.has_doubles())
        throw std::invalid_argument("enumerate_pathways: DQC needs the two-excitation block (m_max = 2)");

    const double ge = lineshape.gamma_e_ev;
    const double gf = lineshape.gamma_f_ev;
    const double w_g = p.ground().values(0);
    const auto& ev1 = p.singles().values;
    const auto n1 = static_cast<int>(ev1.size());
    const int n2 = p.has_doubles() ? static_cast<int>(p.doubles().size()) : 0;
    auto w_eg = [&](int e) { return ev1(e) - w_g; };
    auto w_fe = [&](int f, int e) { return p.doubles().values(f) - ev1(e); };
    auto w_fg = [&](int f) { return p.doubles().values(f) - w_g; };
    auto d_e = [&](int e) { return p.d10(e); };
    auto d_fe = [&](int f, int e) { return p.d21(f, e); };

    PathwaySet set{signal, filter, {}};
    auto add = [&](Diagram diag, int e, int e2, int f, cdouble amp, Coherence t1, Coherence t2, Coherence t3) {
        if (amp == cdouble{}) return;
        set.pathways.push_back({diag, e, e2, f, amp, {t1, t2, t3}});
    };

    if (signal == SignalKind::PhotonEcho) {
        for (int e = 0; e < n1; ++e) {
            if (!filter.passes(w_eg(e))) continue;
            for (int e2 = 0; e2 < n1; ++e2) {
                if (!filter.passes(w_eg(e2))) continue;
                const cdouble amp = std::norm(d_e(e)) * std::norm(d_e(e2));
                const Coherence t1{w_eg(e), ge};
                const Coherence pop_or_coh{ev1(e2) - ev1(e), e == e2 ? 0.0 : ge};
                add(Diagram::GSB, e, e2, -1, amp, t1, {0.0, 0.0}, {w_eg(e2), ge});
                add(Diagram::SE, e, e2, -1, amp, t1, pop_or_coh, {w_eg(e2), ge});
                for (int f = 0; f < n2; ++f) {
                    if (!filter.passes(w_fe(f, e2)) || !filter.passes(w_fe(f, e))) continue;
                    const cdouble esa = -std::conj(d_e(e)) * d_e(e2) * d_fe(f, e2) * std::conj(d_fe(f, e));
                    add(Diagram::ESA, e, e2, f, esa, t1, pop_or_coh, {w_fe(f, e), gf});
                }
            }
        }
    } else {
        for (int e = 0; e < n1; ++e) {
            if (!filter.passes(w_eg(e))) continue;
            for (int f = 0; f < n2; ++f) {
                if (!filter.passes(w_fe(f, e))) continue;
                for (int e2 = 0; e2 < n1; ++e2) {
                    if (!filter.passes(w_eg(e2)) || !filter.passes(w_fe(f, e2))) continue;
                    const cdouble amp = d_e(e) * d_fe(f, e) * std::conj(d_e(e2)) * std::conj(d_fe(f, e2));
                    const Coherence t1{w_eg(e), ge};
                    const Coherence t2{w_fg(f), gf};
                    add(Diagram::DQC_I, e, e2, f, amp, t1, t2, {w_fe(f, e2), gf});
                    add(Diagram::DQC_II, e, e2, f, -amp, t1, t2, {w_eg(e2), ge});
                }
            }
        }
    }
    return set;
}

ProjectionAxes projection_axes(Projection proj) noexcept {
    switch (proj) {
        case Projection::PE_T1T3: return {0, 2, 1};
        case Projection::DQC_T1T2: return {0, 1, 2};
        case Projection::DQC_T2T3: return {1, 2, 0};
    }
    return {0, 2, 1};
}

namespace {

const char* axis_name(int interval) {
    static const char* names[] = {"omega1_ev", "omega2_ev", "omega3_ev"};
    return names[interval];
}

const char* delay_name(int interval) {
    static const char* names[] = {"t1", "t2", "t3"};
    return names[interval];
}

Eigen::MatrixXcd line_factors(const std::vector<Pathway>& paths, int interval, const FrequencyGrid& grid) {
    const auto np = static_cast<Eigen::Index>(paths.size());
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(grid.points), np);
    const cdouble i1{0.0, 1.0};
    for (Eigen::Index p = 0; p < np; ++p) {
        const auto& c = paths[static_cast<std::size_t>(p)].intervals[static_cast<std::size_t>(interval)];
        for (std::size_t k = 0; k < grid.points; ++k)
            out(static_cast<Eigen::Index>(k), p) = i1 / cdouble(grid.at(k) - c.freq_ev, c.rate_ev);
    }
    return out;
}

}  // namespace

Spectrum2D signal_2d(const PathwaySet& set, Projection proj, double fixed_delay, const FrequencyGrid& axis1,
                     const FrequencyGrid& axis2) {
    axis1.validate();
    axis2.validate();
    if (!std::isfinite(fixed_delay) || fixed_delay < 0.0)
        throw std::invalid_argument("fixed delay must be finite and >= 0");
    const auto ax = projection_axes(proj);

    Spectrum2D s;
    s.axis1 = axis1;
    s.axis2 = axis2;
    s.axis1_name = axis_name(ax.axis1_interval);
    s.axis2_name = axis_name(ax.axis2_interval);

    const auto np = static_cast<Eigen::Index>(set.pathways.size());
    if (np == 0) {
        s.values = RowMajorMatrixXcd::Zero(static_cast<Eigen::Index>(axis1.points),
                                           static_cast<Eigen::Index>(axis2.points));
    } else {
        Eigen::VectorXcd weight(np);
        for (Eigen::Index p = 0; p < np; ++p) {
            const auto& path = set.pathways[static_cast<std::size_t>(p)];
            const auto& c = path.intervals[static_cast<std::size_t>(ax.fixed_interval)];
            weight(p) = path.amplitude * std::exp(cdouble(-c.rate_ev, -c.freq_ev) * fixed_delay);
        }
        const Eigen::MatrixXcd a = line_factors(set.pathways, ax.axis1_interval, axis1);
        const Eigen::MatrixXcd b = line_factors(set.pathways, ax.axis2_interval, axis2);
        s.values = (a * weight.asDiagonal()) * b.transpose();
    }

    s.metadata.set("signal", proj == Projection::PE_T1T3 ? "pe" : (proj == Projection::DQC_T1T2 ? "dqc21" : "dqc32"));
    s.metadata.set(std::string(delay_name(ax.fixed_interval)) + "_hbar_per_ev", fixed_delay);
    s.metadata.set(std::string(delay_name(ax.fixed_interval)) + "_as", units::time_to_attoseconds(fixed_delay));
    s.metadata.set("filter_center_ev", set.filter.center_ev);
    s.metadata.set("filter_bandwidth_ev", set.filter.bandwidth_ev);
    s.metadata.set("pathways", std::to_string(set.pathways.size()));
    if (set.pathways.empty()) s.metadata.set("warning", "no pathways survive the pulse filter");
    return s;
}

Spectrum2D pe_signal(const PathwaySet& set, double t2, const FrequencyGrid& omega1, const FrequencyGrid& omega3) {
    if (set.signal != SignalKind::PhotonEcho) throw std::invalid_argument("pe_signal: pathways are not photon echo");
    return signal_2d(set, Projection::PE_T1T3, t2, omega1, omega3);
}

Spectrum2D dqc_signal_21(const PathwaySet& set, double t3, const FrequencyGrid& omega1, const FrequencyGrid& omega2) {
    if (set.signal != SignalKind::DoubleQuantum) throw std::invalid_argument("dqc_signal_21: pathways are not DQC");
    return signal_2d(set, Projection::DQC_T1T2, t3, omega1, omega2);
}

Spectrum2D dqc_signal_32(const PathwaySet& set, double t1, const FrequencyGrid& omega2, const FrequencyGrid& omega3) {
    if (set.signal != SignalKind::DoubleQuantum) throw std::invalid_argument("dqc_signal_32: pathways are not DQC");
    return signal_2d(set, Projection::DQC_T2T3, t1, omega2, omega3);
}

Spectrum1D tpa_spectrum(const Polaritons& p, const LineshapeConfig& lineshape, const FrequencyGrid& grid,
                        bool normalize) {
    grid.validate();
    lineshape.validate();
    if (!p.has_doubles()) throw std::invalid_argument("tpa_spectrum: needs the two-excitation block (m_max = 2)");

    const double w_g = p.ground().values(0);
    const auto& ev1 = p.singles().values;
    const auto& ev2 = p.doubles().values;
    // Two-photon couplings d_fe d_eg, precomputed per (f, e).
    const Eigen::MatrixXcd couple = p.d21 * p.d10.asDiagonal();
    const bool accessible = couple.size() > 0 && couple.cwiseAbs().maxCoeff() > 0.0;

    Spectrum1D s;
    s.grid = grid;
    s.values.assign(grid.points, 0.0);
    if (accessible) {
        for (std::size_t k = 0; k < grid.points; ++k) {
            const double w = grid.at(k);
            double acc = 0.0;
            for (Eigen::Index f = 0; f < ev2.size(); ++f) {
                cdouble amp{};
                for (Eigen::Index e = 0; e < ev1.size(); ++e)
                    if (couple(f, e) != cdouble{})
                        amp += couple(f, e) / cdouble(w - (ev1(e) - w_g), lineshape.gamma_e_ev);
                if (amp != cdouble{}) acc += std::norm(amp) * lorentzian(2.0 * w - (ev2(f) - w_g), lineshape.gamma_f_ev);
            }
            s.values[k] = acc;
        }
    }
    const double peak = *std::max_element(s.values.begin(), s.values.end());
    if (normalize && peak > 0.0)
        for (auto& v : s.values) v /= peak;

    s.metadata.set("signal", "tpa");
    s.metadata.set("tpa_convention", "degenerate sum-over-states, both photons at omega");
    s.metadata.set("gamma_e_ev", lineshape.gamma_e_ev);
    s.metadata.set("gamma_f_ev", lineshape.gamma_f_ev);
    s.metadata.set("normalization", normalize ? "max" : "raw");
    if (!accessible) s.metadata.set("warning", "no two-photon accessible states; spectrum is zero");
    return s;
}

}  // namespace corepol
