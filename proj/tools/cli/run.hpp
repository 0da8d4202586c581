// run.hpp — Command-line driver: configuration, execution and argv parsing
//
// Exit codes: 0 success, 1 usage or I/O error, 2 model validation error, 3 numerical failure.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "corepol/model.hpp"
#include "corepol/spectrum.hpp"

namespace corepol::cli {

enum class Command { Xanes, Decompose, Pe, Dqc21, Dqc32, Tpa, Sweep };
enum class Format { Csv, Json };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitModel = 2;
inline constexpr int kExitNumerical = 3;

// Placeholder model path meaning "the model compiled into the binary".
inline constexpr const char* kBundledModel = "<bundled>";

// Environment variable naming the default output directory.
inline constexpr const char* kOutputDirEnv = "COREPOL_OUTPUT_DIR";

struct GridOverride {
    std::optional<double> min_ev;
    std::optional<double> max_ev;
    std::optional<std::size_t> points;
};

struct SweepSpec {
    std::string param;           // g | omega-c | gamma-e | gamma-f
    double from{0.0};
    double to{0.0};
    int steps{0};
    Command command{Command::Xanes};
    bool parallel{false};
};

struct RunConfig {
    Command command{Command::Xanes};
    std::string model_path{kBundledModel};

    std::optional<double> omega_c_ev;
    std::optional<double> g_ev_per_debye;
    std::optional<int> n_molecules;
    std::optional<int> n_max;
    std::optional<double> gamma_e_ev;
    std::optional<double> gamma_f_ev;

    GridOverride axis1;   // 1D grid, or the slow axis of a 2D map
    GridOverride axis2;
    std::optional<double> delay;   // hbar/eV, the interval held fixed
    std::optional<double> filter_center_ev;
    std::optional<double> filter_bandwidth_ev;

    bool raw{false};   // skip max normalization of 1D spectra
    Format format{Format::Csv};
    std::string output;       // file path, "-" for stdout, empty for the default name
    std::string output_dir;   // sweeps; falls back to $COREPOL_OUTPUT_DIR, then "."
    std::size_t max_block_dim{8192};

    SweepSpec sweep;
};

std::string to_string(Command c);
std::optional<Command> parse_command(const std::string& name);

// The bundled model text embedded at build time.
const std::string& bundled_model_text();

// Executes one configuration. Messages go to `err`; "-" output goes to `out`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Rebuilds the configuration recorded in an output file's metadata (CSV header or JSON
// "metadata" object). Throws std::runtime_error when a required key is missing.
RunConfig config_from_metadata(const Metadata& meta);

// Parses argv and runs; the body of main().
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace corepol::cli
