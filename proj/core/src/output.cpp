// output.cpp

#include "corepol/output.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

#include <json.hpp>

namespace corepol {

namespace {

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", v);
    return buf;
}

nlohmann::ordered_json metadata_json(const Metadata& meta) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta.items()) j[k] = v;
    return j;
}

}  // namespace

void write_metadata_header(const Metadata& meta, std::ostream& os) {
    for (const auto& [k, v] : meta.items()) os << "# " << k << ": " << v << '\n';
}

Metadata read_metadata_header(std::istream& is) {
    Metadata meta;
    std::string line;
    while (is.peek() == '#' && std::getline(is, line)) {
        const auto colon = line.find(": ");
        if (line.size() < 2 || colon == std::string::npos) continue;
        meta.set(line.substr(2, colon - 2), line.substr(colon + 2));
    }
    return meta;
}

void write_csv(const Spectrum1D& s, std::ostream& os) {
    write_metadata_header(s.metadata, os);
    os << "omega_ev,intensity\n";
    for (std::size_t i = 0; i < s.grid.points; ++i) os << sci(s.grid.at(i)) << ',' << sci(s.values[i]) << '\n';
}

void write_csv(const Spectrum2D& s, std::ostream& os) {
    write_metadata_header(s.metadata, os);
    os << "# axis1: " << s.axis1_name << "\n# axis2: " << s.axis2_name << '\n';
    os << "axis1_ev,axis2_ev,re,im,abs\n";
    std::string row;
    for (std::size_t i = 0; i < s.axis1.points; ++i) {
        const std::string a1 = sci(s.axis1.at(i));
        for (std::size_t j = 0; j < s.axis2.points; ++j) {
            const auto v = s.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            row.clear();
            row += a1;
            row += ',';
            row += sci(s.axis2.at(j));
            row += ',';
            row += sci(v.real());
            row += ',';
            row += sci(v.imag());
            row += ',';
            row += sci(std::abs(v));
            row += '\n';
            os << row;
        }
    }
}

void write_json(const Spectrum1D& s, std::ostream& os) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(s.metadata);
    j["axis"] = s.grid.values();
    j["values"] = s.values;
    os << j.dump() << '\n';
}

void write_json(const Spectrum2D& s, std::ostream& os) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(s.metadata);
    j["axis1_name"] = s.axis1_name;
    j["axis2_name"] = s.axis2_name;
    j["axis1"] = s.axis1.values();
    j["axis2"] = s.axis2.values();
    std::vector<double> re, im;
    re.reserve(static_cast<std::size_t>(s.values.size()));
    im.reserve(static_cast<std::size_t>(s.values.size()));
    for (Eigen::Index i = 0; i < s.values.rows(); ++i)
        for (Eigen::Index k = 0; k < s.values.cols(); ++k) {
            re.push_back(s.values(i, k).real());
            im.push_back(s.values(i, k).imag());
        }
    j["re"] = std::move(re);
    j["im"] = std::move(im);
    os << j.dump() << '\n';
}

void write_csv(const Decomposition& d, const std::vector<StickLine>& sticks, const Metadata& meta, std::ostream& os) {
    write_metadata_header(meta, os);
    os << "state,energy_ev,strength";
    for (const auto& t : d.tags) os << ',' << t;
    os << '\n';
    for (std::size_t s = 0; s < d.states.size(); ++s) {
        os << s << ',' << sci(d.states[s].energy_ev) << ',' << sci(s < sticks.size() ? sticks[s].strength : 0.0);
        for (double w : d.states[s].weights) os << ',' << sci(w);
        os << '\n';
    }
}

void write_json(const Decomposition& d, const std::vector<StickLine>& sticks, const Metadata& meta, std::ostream& os) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(meta);
    j["tags"] = d.tags;
    auto states = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < d.states.size(); ++s) {
        nlohmann::ordered_json e;
        e["energy_ev"] = d.states[s].energy_ev;
        e["strength"] = s < sticks.size() ? sticks[s].strength : 0.0;
        nlohmann::ordered_json w;
        for (std::size_t t = 0; t < d.tags.size(); ++t) w[d.tags[t]] = d.states[s].weights[t];
        e["weights"] = std::move(w);
        states.push_back(std::move(e));
    }
    j["states"] = std::move(states);
    os << j.dump() << '\n';
}

}  // namespace corepol
