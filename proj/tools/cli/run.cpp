// run.cpp

#include "run.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "bundled_model.hpp"
#include "corepol/corepol.hpp"

namespace fs = std::filesystem;

namespace corepol::cli {

namespace {

const std::map<std::string, Command>& command_table() {
    static const std::map<std::string, Command> table{
        {"xanes", Command::Xanes}, {"decompose", Command::Decompose}, {"pe", Command::Pe},
        {"dqc21", Command::Dqc21}, {"dqc32", Command::Dqc32},         {"tpa", Command::Tpa},
        {"sweep", Command::Sweep},
    };
    return table;
}

bool is_2d(Command c) { return c == Command::Pe || c == Command::Dqc21 || c == Command::Dqc32; }
bool is_1d(Command c) { return c == Command::Xanes || c == Command::Tpa; }

std::string extension(Format f) { return f == Format::Json ? ".json" : ".csv"; }

std::string format_g(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// Everything a run needs after flags, the model file and built-in defaults are merged.
struct Effective {
    ModelBundle bundle;
    FrequencyGrid grid1;
    FrequencyGrid grid2;
    double delay{0.0};
    PulseFilter filter;
    bool normalize{true};
    Metadata header;
};

FrequencyGrid merge_grid(const GridOverride& o, FrequencyGrid g) {
    if (o.min_ev) g.min_ev = *o.min_ev;
    if (o.max_ev) g.max_ev = *o.max_ev;
    if (o.points) g.points = *o.points;
    g.validate();
    return g;
}

ModelBundle load_bundle(const std::string& path) {
    if (path == kBundledModel) return parse_model(bundled_model_text(), kBundledModel);
    return load_model(path);
}

Effective resolve(const RunConfig& cfg) {
    Effective eff;
    eff.bundle = load_bundle(cfg.model_path);
    auto& cav = eff.bundle.cavity;
    auto& ls = eff.bundle.lineshape;
    if (cfg.omega_c_ev) cav.omega_c_ev = *cfg.omega_c_ev;
    if (cfg.g_ev_per_debye) cav.g_ev_per_debye = *cfg.g_ev_per_debye;
    if (cfg.n_molecules) cav.n_molecules = *cfg.n_molecules;
    if (cfg.n_max) cav.n_max = *cfg.n_max;
    if (cfg.gamma_e_ev) ls.gamma_e_ev = *cfg.gamma_e_ev;
    if (cfg.gamma_f_ev) ls.gamma_f_ev = *cfg.gamma_f_ev;
    cav.validate();
    ls.validate();

    const auto one = default_one_quantum_axis();
    const auto two = default_two_quantum_axis();
    switch (cfg.command) {
        case Command::Xanes: eff.grid1 = merge_grid(cfg.axis1, default_xanes_grid()); break;
        case Command::Tpa: eff.grid1 = merge_grid(cfg.axis1, default_tpa_grid()); break;
        case Command::Pe:
            eff.grid1 = merge_grid(cfg.axis1, one);
            eff.grid2 = merge_grid(cfg.axis2, one);
            break;
        case Command::Dqc21:
            eff.grid1 = merge_grid(cfg.axis1, one);
            eff.grid2 = merge_grid(cfg.axis2, two);
            break;
        case Command::Dqc32:
            eff.grid1 = merge_grid(cfg.axis1, two);
            eff.grid2 = merge_grid(cfg.axis2, one);
            break;
        default: break;
    }
    eff.delay = cfg.delay.value_or(cfg.command == Command::Pe ? 0.0 : units::kDqcDefaultDelay);
    if (!std::isfinite(eff.delay) || eff.delay < 0.0) throw std::invalid_argument("--delay must be >= 0");
    if (cfg.filter_center_ev) eff.filter.center_ev = *cfg.filter_center_ev;
    if (cfg.filter_bandwidth_ev) eff.filter.bandwidth_ev = *cfg.filter_bandwidth_ev;
    eff.filter.validate();
    eff.normalize = !cfg.raw;

    // The header records every effective parameter, so a file can be re-executed from it.
    auto& h = eff.header;
    h.set("corepol_version", std::string(kVersion));
    h.set("model_schema_version", std::to_string(kModelSchemaVersion));
    h.set("command", to_string(cfg.command));
    h.set("model_file", cfg.model_path);
    h.set("model", eff.bundle.molecule.name);
    h.set("omega_c_ev", cav.omega_c_ev);
    h.set("g_ev_per_debye", cav.g_ev_per_debye);
    h.set("n_molecules", std::to_string(cav.n_molecules));
    h.set("n_max", std::to_string(cav.n_max));
    h.set("gamma_e_ev", ls.gamma_e_ev);
    h.set("gamma_f_ev", ls.gamma_f_ev);
    h.set("max_block_dim", std::to_string(cfg.max_block_dim));
    if (is_1d(cfg.command)) {
        h.set("grid_min_ev", eff.grid1.min_ev);
        h.set("grid_max_ev", eff.grid1.max_ev);
        h.set("grid_points", std::to_string(eff.grid1.points));
        h.set("normalization", eff.normalize ? "max" : "raw");
    }
    if (is_2d(cfg.command)) {
        h.set("axis1_min_ev", eff.grid1.min_ev);
        h.set("axis1_max_ev", eff.grid1.max_ev);
        h.set("axis1_points", std::to_string(eff.grid1.points));
        h.set("axis2_min_ev", eff.grid2.min_ev);
        h.set("axis2_max_ev", eff.grid2.max_ev);
        h.set("axis2_points", std::to_string(eff.grid2.points));
        h.set("delay_hbar_per_ev", eff.delay);
        h.set("filter_center_ev", eff.filter.center_ev);
        h.set("filter_bandwidth_ev", eff.filter.bandwidth_ev);
    }
    h.set("format", cfg.format == Format::Json ? "json" : "csv");
    return eff;
}

void require_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) throw NumericalError("non-finite value in computed spectrum");
}

void require_finite(const RowMajorMatrixXcd& m) {
    if (!m.allFinite()) throw NumericalError("non-finite value in computed 2D signal");
}

std::string render(const RunConfig& cfg, const Effective& eff) {
    const auto& b = eff.bundle;
    BasisOptions opts;
    opts.max_block_dim = cfg.max_block_dim;
    std::ostringstream os;
    const bool json = cfg.format == Format::Json;
    bool pairs_omitted = false;   // set once the m = 2 basis is known

    auto emit_1d = [&](Spectrum1D s) {
        require_finite(s.values);
        Metadata meta = eff.header;
        if (pairs_omitted) meta.set("pairs_omitted", "true");
        meta.append(s.metadata);
        s.metadata = std::move(meta);
        json ? write_json(s, os) : write_csv(s, os);
    };
    auto emit_2d = [&](Spectrum2D s) {
        require_finite(s.values);
        Metadata meta = eff.header;
        if (pairs_omitted) meta.set("pairs_omitted", "true");
        meta.append(s.metadata);
        s.metadata = std::move(meta);
        json ? write_json(s, os) : write_csv(s, os);
    };

    switch (cfg.command) {
        case Command::Xanes: {
            const auto p = solve_polaritons(b.molecule, b.cavity, 1, opts);
            emit_1d(xanes(p, b.lineshape, eff.grid1, {eff.normalize}));
            break;
        }
        case Command::Tpa: {
            const auto p = solve_polaritons(b.molecule, b.cavity, 2, opts);
            pairs_omitted = p.basis.pairs_omitted;
            emit_1d(tpa_spectrum(p, b.lineshape, eff.grid1, eff.normalize));
            break;
        }
        case Command::Decompose: {
            const auto p = solve_polaritons(b.molecule, b.cavity, 1, opts);
            const auto d = decompose(p.singles(), b.molecule);
            Metadata meta = eff.header;
            meta.set("signal", "decomposition");
            json ? write_json(d, stick_spectrum(p), meta, os) : write_csv(d, stick_spectrum(p), meta, os);
            break;
        }
        case Command::Pe: {
            const auto p = solve_polaritons(b.molecule, b.cavity, 2, opts);
            const auto set = enumerate_pathways(p, SignalKind::PhotonEcho, eff.filter, b.lineshape);
            pairs_omitted = p.basis.pairs_omitted;
            emit_2d(pe_signal(set, eff.delay, eff.grid1, eff.grid2));
            break;
        }
        case Command::Dqc21:
        case Command::Dqc32: {
            const auto p = solve_polaritons(b.molecule, b.cavity, 2, opts);
            const auto set = enumerate_pathways(p, SignalKind::DoubleQuantum, eff.filter, b.lineshape);
            pairs_omitted = p.basis.pairs_omitted;
            emit_2d(cfg.command == Command::Dqc21 ? dqc_signal_21(set, eff.delay, eff.grid1, eff.grid2)
                                                  : dqc_signal_32(set, eff.delay, eff.grid1, eff.grid2));
            break;
        }
        case Command::Sweep: throw std::logic_error("render: sweep is not a single run");
    }
    return os.str();
}

std::string default_output_dir(const RunConfig& cfg) {
    if (!cfg.output_dir.empty()) return cfg.output_dir;
    if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
    return ".";
}

void write_file(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::ios_base::failure("cannot open " + path.string() + " for writing");
    f << text;
    f.close();
    if (!f) throw std::ios_base::failure("failed writing " + path.string());
}

int run_single(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        const auto eff = resolve(cfg);
        const std::string text = render(cfg, eff);
        if (cfg.output == "-") {
            out << text;
        } else {
            const fs::path path = cfg.output.empty()
                                      ? fs::path(default_output_dir(cfg)) / (to_string(cfg.command) + extension(cfg.format))
                                      : fs::path(cfg.output);
            write_file(path, text);
        }
        return kExitOk;
    } catch (const ModelError& e) {
        err << "corepol: " << e.what() << '\n';
        return kExitModel;
    } catch (const NumericalError& e) {
        err << "corepol: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DimensionError& e) {
        err << "corepol: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::ios_base::failure& e) {
        err << "corepol: I/O error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const fs::filesystem_error& e) {
        err << "corepol: I/O error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "corepol: " << e.what() << '\n';
        return kExitUsage;
    }
}

int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto& sw = cfg.sweep;
    static const std::set<std::string> params{"g", "omega-c", "gamma-e", "gamma-f"};
    if (!params.count(sw.param)) {
        err << "corepol: sweep --param must be one of g, omega-c, gamma-e, gamma-f\n";
        return kExitUsage;
    }
    if (sw.steps < 1 || !std::isfinite(sw.from) || !std::isfinite(sw.to)) {
        err << "corepol: sweep needs --steps >= 1 and finite --from/--to\n";
        return kExitUsage;
    }
    if (sw.command == Command::Sweep) {
        err << "corepol: sweep --command cannot be sweep\n";
        return kExitUsage;
    }

    const fs::path dir = default_output_dir(cfg);
    std::vector<RunConfig> items;
    std::set<std::string> names;
    for (int i = 0; i < sw.steps; ++i) {
        const double v = sw.steps == 1       ? sw.from
                         : i == sw.steps - 1 ? sw.to
                                             : sw.from + (sw.to - sw.from) * i / (sw.steps - 1);
        RunConfig item = cfg;
        item.command = sw.command;
        if (sw.param == "g") item.g_ev_per_debye = v;
        else if (sw.param == "omega-c") item.omega_c_ev = v;
        else if (sw.param == "gamma-e") item.gamma_e_ev = v;
        else item.gamma_f_ev = v;
        const std::string name = "out_" + sw.param + "_" + format_g(v) + extension(cfg.format);
        if (!names.insert(name).second) {
            err << "corepol: sweep values collide in file name " << name << "; use fewer steps\n";
            return kExitUsage;
        }
        item.output = (dir / name).string();
        items.push_back(std::move(item));
    }

    std::vector<int> codes(items.size(), kExitOk);
    std::vector<std::string> messages(items.size());
    auto job = [&](std::size_t i) {
        std::ostringstream e, o;
        codes[i] = run_single(items[i], o, e);
        messages[i] = e.str();
    };
    if (sw.parallel && items.size() > 1) {
        std::atomic<std::size_t> next{0};
        const std::size_t workers = std::min<std::size_t>(items.size(), std::max(1u, std::thread::hardware_concurrency()));
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < items.size();) job(i);
            });
        for (auto& t : pool) t.join();
    } else {
        for (std::size_t i = 0; i < items.size(); ++i) job(i);
    }

    int worst = kExitOk;
    for (std::size_t i = 0; i < items.size(); ++i) {
        err << messages[i];
        if (codes[i] == kExitOk) out << items[i].output << '\n';
        worst = std::max(worst, codes[i]);
    }
    return worst;
}

const std::string& require(const Metadata& meta, const std::string& key) {
    const auto* v = meta.find(key);
    if (!v) throw std::runtime_error("metadata is missing '" + key + "'");
    return *v;
}

Metadata read_recorded_metadata(const fs::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::ios_base::failure("cannot open " + path.string());
    const char first = static_cast<char>(f.peek());
    if (first == '{') {
        const auto j = nlohmann::ordered_json::parse(f);
        Metadata meta;
        for (const auto& [k, v] : j.at("metadata").items()) meta.set(k, v.get<std::string>());
        return meta;
    }
    return read_metadata_header(f);
}

void add_model_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--model", cfg.model_path, "Model file (TOML); default: the bundled model");
    sub->add_option("--omega-c", cfg.omega_c_ev, "Cavity frequency (eV)");
    sub->add_option("--g", cfg.g_ev_per_debye, "Per-molecule coupling (eV/D)");
    sub->add_option("--n-molecules", cfg.n_molecules, "Number of molecules in the cavity");
    sub->add_option("--n-max", cfg.n_max, "Photon-number truncation");
    sub->add_option("--gamma-e", cfg.gamma_e_ev, "HWHM of g-e coherences (eV)");
    sub->add_option("--gamma-f", cfg.gamma_f_ev, "HWHM of g-f and e-f coherences (eV)");
    sub->add_option("--max-block-dim", cfg.max_block_dim, "Largest allowed block dimension");
    sub->add_option("--format", cfg.format, "Output format: csv or json")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::Csv}, {"json", Format::Json}}))
        ->option_text("csv|json");
}

void add_grid_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--grid-min", cfg.axis1.min_ev, "Lowest frequency (eV)");
    sub->add_option("--grid-max", cfg.axis1.max_ev, "Highest frequency (eV)");
    sub->add_option("--points", cfg.axis1.points, "Number of grid points");
    sub->add_flag("--raw", cfg.raw, "Do not normalize the spectrum to its maximum");
}

void add_2d_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--axis1-min", cfg.axis1.min_ev, "Slow axis lowest frequency (eV)");
    sub->add_option("--axis1-max", cfg.axis1.max_ev, "Slow axis highest frequency (eV)");
    sub->add_option("--axis1-points", cfg.axis1.points, "Slow axis points");
    sub->add_option("--axis2-min", cfg.axis2.min_ev, "Fast axis lowest frequency (eV)");
    sub->add_option("--axis2-max", cfg.axis2.max_ev, "Fast axis highest frequency (eV)");
    sub->add_option("--axis2-points", cfg.axis2.points, "Fast axis points");
    sub->add_option("--delay", cfg.delay, "Fixed interval (hbar/eV): T2 for pe, T3 for dqc21, T1 for dqc32");
    sub->add_option("--filter-center", cfg.filter_center_ev, "Pulse spectral center (eV)");
    sub->add_option("--filter-bandwidth", cfg.filter_bandwidth_ev, "Pulse full bandwidth (eV)");
}

std::string describe(Command c) {
    switch (c) {
        case Command::Xanes: return "Linear absorption (XANES) spectrum";
        case Command::Decompose: return "Site and photon weights of every single-excitation eigenstate";
        case Command::Pe: return "Rephasing photon echo map over (Omega1, Omega3)";
        case Command::Dqc21: return "Double-quantum coherence map over (Omega1, Omega2)";
        case Command::Dqc32: return "Double-quantum coherence map over (Omega2, Omega3)";
        case Command::Tpa: return "Degenerate two-photon absorption spectrum";
        case Command::Sweep: return "Run one command over a range of one parameter";
    }
    return "";
}

std::string version_text() {
    return std::string("corepol ") + kVersion + "\nmodel schema " + std::to_string(kModelSchemaVersion);
}

}  // namespace

std::string to_string(Command c) {
    for (const auto& [name, cmd] : command_table())
        if (cmd == c) return name;
    return "?";
}

std::optional<Command> parse_command(const std::string& name) {
    const auto it = command_table().find(name);
    if (it == command_table().end()) return std::nullopt;
    return it->second;
}

const std::string& bundled_model_text() {
    static const std::string text(kBundledModelToml);
    return text;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    return config.command == Command::Sweep ? run_sweep(config, out, err) : run_single(config, out, err);
}

RunConfig config_from_metadata(const Metadata& meta) {
    RunConfig cfg;
    const auto cmd = parse_command(require(meta, "command"));
    if (!cmd || *cmd == Command::Sweep) throw std::runtime_error("metadata names no runnable command");
    cfg.command = *cmd;
    cfg.model_path = require(meta, "model_file");
    cfg.omega_c_ev = std::stod(require(meta, "omega_c_ev"));
    cfg.g_ev_per_debye = std::stod(require(meta, "g_ev_per_debye"));
    cfg.n_molecules = std::stoi(require(meta, "n_molecules"));
    cfg.n_max = std::stoi(require(meta, "n_max"));
    cfg.gamma_e_ev = std::stod(require(meta, "gamma_e_ev"));
    cfg.gamma_f_ev = std::stod(require(meta, "gamma_f_ev"));
    cfg.max_block_dim = std::stoul(require(meta, "max_block_dim"));
    cfg.format = require(meta, "format") == "json" ? Format::Json : Format::Csv;
    if (is_1d(cfg.command)) {
        cfg.axis1 = {std::stod(require(meta, "grid_min_ev")), std::stod(require(meta, "grid_max_ev")),
                     std::stoul(require(meta, "grid_points"))};
        cfg.raw = require(meta, "normalization") == "raw";
    }
    if (is_2d(cfg.command)) {
        cfg.axis1 = {std::stod(require(meta, "axis1_min_ev")), std::stod(require(meta, "axis1_max_ev")),
                     std::stoul(require(meta, "axis1_points"))};
        cfg.axis2 = {std::stod(require(meta, "axis2_min_ev")), std::stod(require(meta, "axis2_max_ev")),
                     std::stoul(require(meta, "axis2_points"))};
        cfg.delay = std::stod(require(meta, "delay_hbar_per_ev"));
        cfg.filter_center_ev = std::stod(require(meta, "filter_center_ev"));
        cfg.filter_bandwidth_ev = std::stod(require(meta, "filter_bandwidth_ev"));
    }
    return cfg;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"corepol: core-polariton X-ray spectra (XANES, photon echo, DQC, TPA)", "corepol"};
    app.set_version_flag("--version", version_text());
    app.require_subcommand(1);

    RunConfig cfg;
    std::string command_name;
    for (const auto& [name, cmd] : command_table()) {
        if (cmd == Command::Sweep) continue;
        auto* sub = app.add_subcommand(name, describe(cmd));
        add_model_options(sub, cfg);
        sub->add_option("--output,-o", cfg.output, "Output file ('-' for stdout)");
        if (is_1d(cmd)) add_grid_options(sub, cfg);
        if (is_2d(cmd)) add_2d_options(sub, cfg);
        sub->callback([&cfg, cmd = cmd] { cfg.command = cmd; });
    }

    auto* sweep = app.add_subcommand("sweep", describe(Command::Sweep));
    add_model_options(sweep, cfg);
    add_grid_options(sweep, cfg);
    add_2d_options(sweep, cfg);
    sweep->add_option("--param", cfg.sweep.param, "g | omega-c | gamma-e | gamma-f")->required();
    sweep->add_option("--from", cfg.sweep.from, "First value")->required();
    sweep->add_option("--to", cfg.sweep.to, "Last value")->required();
    sweep->add_option("--steps", cfg.sweep.steps, "Number of values")->required();
    sweep->add_option("--command", command_name, "Command to run per value")->required();
    sweep->add_flag("--parallel", cfg.sweep.parallel, "Run sweep items concurrently");
    sweep->add_option("--output-dir", cfg.output_dir, "Directory for out_<param>_<value> files");
    sweep->callback([&cfg] { cfg.command = Command::Sweep; });

    std::string rerun_file;
    std::string rerun_output = "-";
    auto* rerun = app.add_subcommand("rerun", "Re-execute the run recorded in an output file's metadata");
    rerun->add_option("file", rerun_file, "CSV or JSON file written by corepol")->required();
    rerun->add_option("--output,-o", rerun_output, "Output file ('-' for stdout)");

    std::vector<const char*> argv{"corepol"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    if (rerun->parsed()) {
        try {
            RunConfig again = config_from_metadata(read_recorded_metadata(rerun_file));
            again.output = rerun_output;
            return run(again, out, err);
        } catch (const std::exception& e) {
            err << "corepol: cannot rerun " << rerun_file << ": " << e.what() << '\n';
            return kExitUsage;
        }
    }
    if (cfg.command == Command::Sweep) {
        const auto cmd = parse_command(command_name);
        if (!cmd) {
            err << "corepol: unknown sweep --command '" << command_name << "'\n";
            return kExitUsage;
        }
        cfg.sweep.command = *cmd;
    }
    return run(cfg, out, err);
}

}  // namespace corepol::cli
