// cli.hpp: argument parsing and dispatch for the fconv command-line tool.

#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "fconv/scan_result.hpp"

namespace fconv::cli {

enum class Experiment { linearity, fringe, noise, depletion, wdm };
enum class BackendChoice { fock, gaussian, both };

struct LinearityParams {
    double theta_eff = 0.01;  // conversion efficiency sin^2(theta)
    int points = 20;
    double decades = 2.0;  // transmissions from 1 down to 10^-decades
    double alpha = 1.0;
    double noise_floor = 0.0;
};

struct FringeParams {
    int points = 33;  // pump phases evenly spaced over [0, 2 pi]
    double alpha_pump = 1.0;
    double alpha_ref = 0.25;
    double theta = 0.5235987755982988;  // pi/6
    double phi_s = 0.0;
};

struct NoiseParams {
    int points = 10;
    double max_strength = 1.5707963267948966;  // pi/2
};

struct DepletionParams {
    std::vector<double> alpha_s = {2.0, 3.0, 4.0, 5.0};
    double theta = 1.5707963267948966;
    int pump_photons = 1;
};

struct WdmParams {
    double pump_frequency = 3.0;
    std::vector<double> signal_frequencies = {1.0, 1.5};
    std::vector<double> thetas = {0.7853981633974483, 1.5707963267948966};
    std::vector<double> phis;  // empty means all zero
};

using Params = std::variant<LinearityParams, FringeParams, NoiseParams, DepletionParams, WdmParams>;

struct RunConfig {
    Experiment experiment = Experiment::linearity;
    BackendChoice backend = BackendChoice::fock;
    std::optional<int> cutoff;  // unset: automatic per scenario
    Params params;
    std::string output_path;
};

// Bad command line or configuration. exit_code is 0 only for --help.
class UsageError : public std::runtime_error {
public:
    UsageError(const std::string& message, int exit_code)
        : std::runtime_error(message), exit_code_(exit_code) {}
    int exit_code() const { return exit_code_; }

private:
    int exit_code_;
};

const char* experiment_name(Experiment e);

// Throws UsageError. FCONV_DEFAULT_CUTOFF supplies the cutoff when neither the
// flag nor the config file sets it.
RunConfig parse_args(int argc, const char* const* argv);

// Output files written for a config: one, or two for --backend both.
std::vector<std::string> output_paths(const RunConfig& config);

// Largest absolute difference between two scans on the same grid; infinity
// if the grids or columns differ. `--backend both` fails above 1e-7.
double backend_deviation(const fconv::ScanResult& a, const fconv::ScanResult& b);

// Runs the scan and writes the CSV file(s). Returns the process exit status.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args + execute, reporting usage errors on `err`.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fconv::cli
