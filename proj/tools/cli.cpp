#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "fconv/errors.hpp"
#include "fconv/experiments.hpp"

namespace fconv::cli {

namespace {

constexpr double kCrossBackendTolerance = 1e-7;
constexpr const char* kCutoffEnv = "FCONV_DEFAULT_CUTOFF";

std::vector<double> log_spaced(double decades, int points) {
    std::vector<double> t;
    for (int k = 0; k < points; ++k) t.push_back(std::pow(10.0, -decades * k / (points - 1)));
    return t;
}

std::vector<double> evenly(double from, double to, int points) {
    std::vector<double> x;
    if (points == 1) return {from};
    for (int k = 0; k < points; ++k) x.push_back(from + (to - from) * k / (points - 1));
    return x;
}

std::optional<int> cutoff_from_env() {
    const char* raw = std::getenv(kCutoffEnv);
    if (raw == nullptr || *raw == '\0') return std::nullopt;
    const std::string text(raw);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value < 1)
        throw UsageError(std::string(kCutoffEnv) + ": expected an integer >= 1, got '" + text + "'", 2);
    return value;
}

void require(bool ok, const std::string& flag, const std::string& what) {
    if (!ok) throw UsageError(flag + ": " + what, 2);
}

ScanResult run_one(const RunConfig& config, Backend backend) {
    const RunOptions opts{backend, config.cutoff};
    return std::visit(
        [&](const auto& p) -> ScanResult {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, LinearityParams>) {
                return run_linearity(log_spaced(p.decades, p.points), theta_for_efficiency(p.theta_eff),
                                     p.alpha, p.noise_floor, opts);
            } else if constexpr (std::is_same_v<P, FringeParams>) {
                return run_fringe(evenly(0.0, 2.0 * std::numbers::pi, p.points), p.alpha_pump, p.alpha_ref,
                                  p.theta, p.phi_s, opts);
            } else if constexpr (std::is_same_v<P, NoiseParams>) {
                return run_noise_comparison(evenly(0.0, p.max_strength, p.points), opts);
            } else if constexpr (std::is_same_v<P, DepletionParams>) {
                const ModeRegistry pump({{"pump", 2.0, std::max(1, p.pump_photons)}});
                return run_depletion_convergence(p.alpha_s, p.theta, make_fock(pump, {p.pump_photons}),
                                                 opts);
            } else {
                WdmSpec spec{p.pump_frequency, {}};
                for (std::size_t k = 0; k < p.signal_frequencies.size(); ++k)
                    spec.channels.push_back(
                        {p.signal_frequencies[k], p.thetas[k], p.phis.empty() ? 0.0 : p.phis[k]});
                return run_wdm(spec, opts).scan;
            }
        },
        config.params);
}

}  // namespace

double backend_deviation(const ScanResult& a, const ScanResult& b) {
    if (a.rows.size() != b.rows.size() || a.column_labels != b.column_labels)
        return std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t r = 0; r < a.rows.size(); ++r) {
        if (a.rows[r].abscissa != b.rows[r].abscissa) return std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < a.rows[r].values.size(); ++c)
            worst = std::max(worst, std::abs(a.rows[r].values[c] - b.rows[r].values[c]));
    }
    return worst;
}

namespace {

// Writes via a temporary sibling so a failed run never leaves a partial file.
void write_atomically(const ScanResult& result, const std::string& path) {
    const std::string tmp = path + ".partial";
    try {
        write_csv(result, tmp);
        std::filesystem::rename(tmp, path);
    } catch (const std::filesystem::filesystem_error& e) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw Error("cannot write '" + path + "': " + e.code().message());
    }
}

}  // namespace

const char* experiment_name(Experiment e) {
    switch (e) {
        case Experiment::linearity: return "linearity";
        case Experiment::fringe: return "fringe";
        case Experiment::noise: return "noise";
        case Experiment::depletion: return "depletion";
        case Experiment::wdm: return "wdm";
    }
    return "?";
}

RunConfig parse_args(int argc, const char* const* argv) {
    CLI::App app{"Frequency conversion scans: simulate an experiment and write the result as CSV."};
    app.name("fconv");
    app.require_subcommand(1, 1);
    app.set_config("--config", "", "TOML or INI file with option values; command-line flags take precedence");

    std::string backend = "fock";
    int cutoff = 0;
    std::string output;
    app.add_option("--backend", backend, "Simulation backend: fock, gaussian, or both (cross-checked)")
        ->check(CLI::IsMember({"fock", "gaussian", "both"}))
        ->capture_default_str();
    auto* cutoff_opt = app.add_option("--cutoff", cutoff,
                                      "Per-mode Fock cutoff (default: FCONV_DEFAULT_CUTOFF, else the "
                                      "smallest cutoff meeting the truncation policy)")
                           ->check(CLI::Range(1, 100000));
    app.add_option("-o,--output", output, "CSV output path")->required();

    LinearityParams lin;
    auto* lin_cmd = app.add_subcommand("linearity", "Idler signal versus pump transmission");
    lin_cmd->add_option("--theta-eff", lin.theta_eff, "Conversion efficiency sin^2(theta)")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    lin_cmd->add_option("--points", lin.points, "Number of transmissions")
        ->check(CLI::Range(2, 100000))
        ->capture_default_str();
    lin_cmd->add_option("--decades", lin.decades, "Transmissions span 1 down to 10^-decades")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    lin_cmd->add_option("--alpha", lin.alpha, "Coherent pump amplitude")->capture_default_str();
    lin_cmd->add_option("--noise-floor", lin.noise_floor, "Constant detector floor added to the signal")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    FringeParams fr;
    auto* fr_cmd = app.add_subcommand("fringe", "Beat between converted idler and reference versus pump phase");
    fr_cmd->add_option("--points", fr.points, "Pump phases over [0, 2 pi]")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    fr_cmd->add_option("--alpha-pump", fr.alpha_pump, "Coherent pump amplitude")->capture_default_str();
    fr_cmd->add_option("--alpha-ref", fr.alpha_ref, "Coherent reference amplitude")->capture_default_str();
    fr_cmd->add_option("--theta", fr.theta, "Converter angle")->capture_default_str();
    fr_cmd->add_option("--phi-s", fr.phi_s, "Converter phase")->capture_default_str();

    NoiseParams no;
    auto* no_cmd = app.add_subcommand("noise", "Idler noise of converter and amplifier versus strength");
    no_cmd->add_option("--points", no.points, "Number of strengths")
        ->check(CLI::Range(1, 100000))
        ->capture_default_str();
    no_cmd->add_option("--max-strength", no.max_strength, "Largest theta / squeeze parameter")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    DepletionParams de;
    auto* de_cmd = app.add_subcommand("depletion", "Trilinear coupler versus linearized converter fidelity");
    de_cmd->add_option("--alpha-s", de.alpha_s, "Signal amplitudes, strictly increasing")
        ->delimiter(',')
        ->capture_default_str();
    de_cmd->add_option("--theta", de.theta, "Linearized converter angle")->capture_default_str();
    de_cmd->add_option("--pump-photons", de.pump_photons, "Photons in the Fock pump input")
        ->check(CLI::Range(0, 1000))
        ->capture_default_str();

    WdmParams wd;
    auto* wd_cmd = app.add_subcommand("wdm", "Single pump photon through a cascade of idler channels");
    wd_cmd->add_option("--pump-frequency", wd.pump_frequency, "Pump frequency")->capture_default_str();
    wd_cmd->add_option("--signal-frequencies", wd.signal_frequencies, "Signal frequency per channel")
        ->delimiter(',')
        ->capture_default_str();
    wd_cmd->add_option("--thetas", wd.thetas, "Converter angle per channel")
        ->delimiter(',')
        ->capture_default_str();
    wd_cmd->add_option("--phis", wd.phis, "Converter phase per channel (default all zero)")->delimiter(',');

    for (auto* sub : {lin_cmd, fr_cmd, no_cmd, de_cmd, wd_cmd}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream out, err;
        const int code = app.exit(e, out, err);
        throw UsageError(code == 0 ? out.str() : err.str(), code);
    }

    RunConfig config;
    config.output_path = output;
    config.backend = backend == "gaussian" ? BackendChoice::gaussian
                     : backend == "both"   ? BackendChoice::both
                                           : BackendChoice::fock;
    config.cutoff = cutoff_opt->count() > 0 ? std::optional<int>(cutoff) : cutoff_from_env();

    if (lin_cmd->parsed()) {
        config.experiment = Experiment::linearity;
        require(lin.theta_eff > 0.0, "--theta-eff", "must be > 0");
        config.params = lin;
    } else if (fr_cmd->parsed()) {
        config.experiment = Experiment::fringe;
        config.params = fr;
    } else if (no_cmd->parsed()) {
        config.experiment = Experiment::noise;
        config.params = no;
    } else if (de_cmd->parsed()) {
        config.experiment = Experiment::depletion;
        require(!de.alpha_s.empty(), "--alpha-s", "at least one value is required");
        config.params = de;
    } else {
        config.experiment = Experiment::wdm;
        require(wd.thetas.size() == wd.signal_frequencies.size(), "--thetas",
                "needs one value per signal frequency (" + std::to_string(wd.signal_frequencies.size()) + ")");
        require(wd.phis.empty() || wd.phis.size() == wd.signal_frequencies.size(), "--phis",
                "needs one value per signal frequency (" + std::to_string(wd.signal_frequencies.size()) + ")");
        config.params = wd;
    }

    const bool non_gaussian = config.experiment == Experiment::depletion || config.experiment == Experiment::wdm;
    if (non_gaussian && config.backend != BackendChoice::fock)
        throw UsageError(std::string("--backend: NonGaussianDevice: ") + experiment_name(config.experiment) +
                             (config.experiment == Experiment::depletion
                                  ? " evolves a trilinear coupler, which has no Gaussian representation"
                                  : " starts from a single-photon state, which is not Gaussian") +
                             "; use --backend fock",
                         2);
    return config;
}

std::vector<std::string> output_paths(const RunConfig& config) {
    if (config.backend != BackendChoice::both) return {config.output_path};
    std::string stem = config.output_path;
    if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) stem.resize(stem.size() - 4);
    return {stem + ".fock.csv", stem + ".gaussian.csv"};
}

int execute(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        const auto paths = output_paths(config);
        if (config.backend != BackendChoice::both) {
            const Backend b = config.backend == BackendChoice::fock ? Backend::fock : Backend::gaussian;
            write_atomically(run_one(config, b), paths[0]);
            out << "wrote " << paths[0] << "\n";
            return 0;
        }
        const ScanResult fock = run_one(config, Backend::fock);
        const ScanResult gauss = run_one(config, Backend::gaussian);
        write_atomically(fock, paths[0]);
        write_atomically(gauss, paths[1]);
        out << "wrote " << paths[0] << "\n" << "wrote " << paths[1] << "\n";
        const double dev = backend_deviation(fock, gauss);
        if (!(dev <= kCrossBackendTolerance)) {
            err << "fconv: backends disagree: max deviation " << format_double(dev) << " exceeds "
                << format_double(kCrossBackendTolerance) << "\n";
            return 3;
        }
        return 0;
    } catch (const Error& e) {
        err << "fconv: error: " << e.what() << "\n";
        return 1;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_args(argc, argv);
    } catch (const UsageError& e) {
        if (e.exit_code() == 0) {
            out << e.what();
            return 0;
        }
        err << "fconv: " << e.what();
        if (std::string_view(e.what()).ends_with('\n') == false) err << "\n";
        return e.exit_code();
    }
    return execute(config, out, err);
}

}  // namespace fconv::cli
