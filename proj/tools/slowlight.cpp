// slowlight: command-line front end for the slow-light pulse toolkit.
//
// Every subcommand reads and writes the CSV formats of slowlight/io.hpp.
// Exit codes: 0 ok, 2 validation, 3 numeric guard, 4 I/O.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <future>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "slowlight/analysis.hpp"
#include "slowlight/error.hpp"
#include "slowlight/io.hpp"
#include "slowlight/scenario.hpp"

namespace fs = std::filesystem;
using namespace slowlight;

namespace {

struct ChannelOptions {
    std::optional<double> peak;
    std::optional<double> background;
    std::optional<double> fwhm_khz;
    std::optional<double> gamma_khz;
    std::optional<double> z;
    double scale = 1.0;
    std::optional<std::string> transmission;
    std::optional<double> extrapolation;
    bool no_phase = false;

    void attach(CLI::App* cmd) {
        cmd->add_option("--peak", peak, "Peak transmission of the EIT window");
        cmd->add_option("--background", background, "Far-detuned background transmission");
        cmd->add_option("--fwhm-khz", fwhm_khz, "Window FWHM above the background, kHz");
        cmd->add_option("--gamma-khz", gamma_khz, "EIT half-linewidth, kHz");
        cmd->add_option("--z", z, "Normalized propagation length");
        cmd->add_option("--scale", scale, "Peak intensity transmission scale (analytic model)");
        cmd->add_option("--transmission", transmission,
                        "Measured transmission CSV (detuning_hz,transmission)");
        cmd->add_option("--extrapolation", extrapolation,
                        "Transmission outside the tabulated range");
        cmd->add_flag("--no-phase", no_phase, "Drop the model phase (amplitude-only channel)");
    }

    std::optional<EitMedium> medium() const {
        const bool calibrated = peak || background || fwhm_khz;
        const bool analytic = gamma_khz || z;
        if (calibrated && analytic) {
            fail_validation("channel: give either --peak/--background/--fwhm-khz or --gamma-khz/--z");
        }
        if (calibrated) {
            if (!peak || !background || !fwhm_khz) {
                fail_validation("channel: --peak, --background and --fwhm-khz go together");
            }
            return calibrate_from_transmission(*peak, *background, *fwhm_khz * 1e3);
        }
        if (analytic) {
            if (!gamma_khz || !z) fail_validation("channel: --gamma-khz and --z go together");
            return EitMedium(*gamma_khz * 1e3, *z, scale);
        }
        return std::nullopt;
    }

    std::optional<MeasuredTransmission> table() const {
        if (!transmission) return std::nullopt;
        return io::read_transmission(fs::path(*transmission), extrapolation);
    }

    Channel channel() const {
        const auto m = medium();
        const auto t = table();
        const std::optional<EitMedium> phase = no_phase ? std::nullopt : m;
        if (t) return Channel::hybrid(*t, phase);
        if (!m) fail_validation("channel: no medium given (use --peak/... or --gamma-khz/--z)");
        return Channel(*m, phase);
    }
};

void print_metrics(const PulseMetrics& m) {
    std::cout << std::setprecision(9) << "delay_us = " << m.delay * 1e6 << '\n'
              << "loss = " << m.loss << '\n'
              << "nrmse = " << m.nrmse << '\n'
              << "fwhm_us = " << m.fwhm_time * 1e6 << '\n';
}

int report(const Error& e) {
    std::cerr << "error[" << to_string(e.kind()) << "]: " << e.what() << '\n';
    return static_cast<int>(e.kind());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Slow-light pulse propagation, compensation and decomposition"};
    app.require_subcommand(1);

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Synthesize a Gaussian or AMG probe pulse");
    std::string kind = "gaussian";
    std::optional<double> t0_us;
    std::optional<double> fwhm_us;
    double depth = 1.0;
    double mod_khz = 0.0;
    double center_us = 0.0;
    std::optional<std::size_t> grid_n;
    std::optional<double> grid_dt_ns;
    std::string synth_out;
    synth_cmd->add_option("--kind", kind, "gaussian or amg")->check(CLI::IsMember({"gaussian", "amg"}));
    synth_cmd->add_option("--t0-us", t0_us, "Gaussian parameter T0 (intensity half width), us");
    synth_cmd->add_option("--fwhm-us", fwhm_us, "Intensity FWHM, us (alternative to --t0-us)");
    synth_cmd->add_option("--depth", depth, "Modulation depth A");
    synth_cmd->add_option("--mod-khz", mod_khz, "Modulation frequency, kHz");
    synth_cmd->add_option("--center-us", center_us, "Pulse center, us");
    synth_cmd->add_option("--n", grid_n, "Grid sample count (with --dt-ns)");
    synth_cmd->add_option("--dt-ns", grid_dt_ns, "Grid spacing, ns (with --n)");
    synth_cmd->add_option("--out", synth_out, "Output intensity CSV (default: stdout)");

    // calibrate
    auto* cal_cmd = app.add_subcommand("calibrate", "Fit the EIT model to a transmission window");
    double cal_peak = 0.0;
    double cal_background = 0.0;
    double cal_fwhm_khz = 0.0;
    cal_cmd->add_option("--peak", cal_peak, "Peak transmission")->required();
    cal_cmd->add_option("--background", cal_background, "Background transmission")->required();
    cal_cmd->add_option("--fwhm-khz", cal_fwhm_khz, "Window FWHM, kHz")->required();

    // propagate
    auto* prop_cmd = app.add_subcommand("propagate", "Send a pulse through the channel");
    ChannelOptions prop_channel;
    std::string prop_in;
    std::string prop_out;
    std::string prop_spectrum;
    bool strict = false;
    prop_channel.attach(prop_cmd);
    prop_cmd->add_option("--in", prop_in, "Input intensity CSV")->required();
    prop_cmd->add_option("--out", prop_out, "Output intensity CSV")->required();
    prop_cmd->add_option("--spectrum-out", prop_spectrum, "Output complex spectrum CSV");
    prop_cmd->add_flag("--strict", strict, "Fail (exit 3) when the circular-wrap guard trips");

    // compensate
    auto* comp_cmd = app.add_subcommand("compensate", "Recover a pulse from its output spectrum");
    ChannelOptions comp_channel;
    std::string comp_spectrum;
    std::string comp_out;
    std::string comp_intensity;
    std::string comp_gain;
    std::string comp_source = "model";
    double comp_floor = CompensationConfig{}.floor;
    comp_channel.attach(comp_cmd);
    comp_cmd->add_option("--spectrum", comp_spectrum, "Output complex spectrum CSV")->required();
    comp_cmd->add_option("--out", comp_out, "Recovered intensity CSV")->required();
    comp_cmd->add_option("--intensity-out", comp_intensity, "Compensated intensity spectrum CSV");
    comp_cmd->add_option("--gain-out", comp_gain, "Required intensity gain spectrum CSV");
    comp_cmd->add_option("--floor", comp_floor, "Minimum transmission used as divisor");
    comp_cmd->add_option("--source", comp_source, "model or measured")
        ->check(CLI::IsMember({"model", "measured"}));

    // decompose
    auto* dec_cmd = app.add_subcommand("decompose", "Split an AMG output into carrier and sidebands");
    std::string dec_out_spec;
    std::string dec_in_spec;
    double dec_mod_khz = 0.0;
    std::string dec_dir;
    dec_cmd->add_option("--out-spectrum", dec_out_spec, "Output complex spectrum CSV")->required();
    dec_cmd->add_option("--in-spectrum", dec_in_spec, "Input complex spectrum CSV")->required();
    dec_cmd->add_option("--mod-khz", dec_mod_khz, "Modulation frequency, kHz")->required();
    dec_cmd->add_option("--dir", dec_dir, "Directory for component intensity CSVs");

    // metrics
    auto* met_cmd = app.add_subcommand("metrics", "Delay, loss and distortion of a pulse");
    std::string met_out;
    std::string met_in;
    met_cmd->add_option("--out", met_out, "Output intensity CSV")->required();
    met_cmd->add_option("--in", met_in, "Reference (input) intensity CSV")->required();

    // run
    auto* run_cmd = app.add_subcommand("run", "Run bundled scenarios or scenario files");
    std::vector<std::string> run_targets;
    std::string run_root = ".";
    bool run_list = false;
    std::string run_print;
    run_cmd->add_option("scenarios", run_targets, "Bundled names (fig2a ... fig4, all) or .ini files");
    run_cmd->add_option("--out-dir", run_root, "Root directory for report bundles");
    run_cmd->add_flag("--list", run_list, "List bundled scenarios");
    run_cmd->add_option("--print", run_print, "Print the config of a bundled scenario");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error[validation]: " << e.what() << '\n';
        return static_cast<int>(ErrorKind::Validation);
    }

    try {
        if (*synth_cmd) {
            if (t0_us.has_value() == fwhm_us.has_value()) {
                fail_validation("synth: give exactly one of --t0-us or --fwhm-us");
            }
            const double t0 = t0_us ? *t0_us * 1e-6 : *fwhm_us * 1e-6 / 2.0;
            const PulseSpec spec = kind == "amg"
                                       ? PulseSpec::amg(t0, depth, mod_khz * 1e3, center_us * 1e-6)
                                       : PulseSpec::gaussian(t0, center_us * 1e-6);
            if (grid_n.has_value() != grid_dt_ns.has_value()) {
                fail_validation("synth: --n and --dt-ns go together");
            }
            const SamplingGrid grid = grid_n ? SamplingGrid::centered(*grid_n, *grid_dt_ns * 1e-9, spec.center)
                                             : default_grid(spec);
            const IntensityTrace trace = intensity_of(synth(spec, grid));
            if (synth_out.empty()) {
                io::write_trace(std::cout, trace);
            } else {
                io::write_trace(fs::path(synth_out), trace);
            }
        } else if (*cal_cmd) {
            const EitMedium m = calibrate_from_transmission(cal_peak, cal_background, cal_fwhm_khz * 1e3);
            std::cout << std::setprecision(9) << "gamma_eit_hz = " << m.gamma_eit() << '\n'
                      << "gamma_eit_khz = " << m.gamma_eit() / 1e3 << '\n'
                      << "z = " << m.z() << '\n'
                      << "scale = " << m.scale() << '\n'
                      << "group_delay_us = " << group_delay(m, 0.0) * 1e6 << '\n';
        } else if (*prop_cmd) {
            const Waveform input = amplitude_from_intensity(io::read_trace(fs::path(prop_in)));
            const Channel ch = prop_channel.channel();
            const Spectrum s_out = propagate_spectrum(dft(input), ch);
            const Propagation p = propagate_waveform(input, ch);
            io::write_trace(fs::path(prop_out), intensity_of(p.output));
            if (!prop_spectrum.empty()) io::write_spectrum(fs::path(prop_spectrum), s_out);
            if (p.wrap_warning()) {
                const std::string msg = "output energy fraction " + io::format_double(p.edge_energy_fraction) +
                                        " in the outer 5% of the window (circular wrap risk)";
                if (strict) fail_numeric(msg);
                std::cerr << "warning: " << msg << '\n';
            }
        } else if (*comp_cmd) {
            const Spectrum s_out = io::read_spectrum(fs::path(comp_spectrum));
            CompensationConfig cfg;
            cfg.floor = comp_floor;
            cfg.source = comp_source == "measured" ? TransmissionSource::Measured : TransmissionSource::Model;
            std::vector<double> t;
            if (cfg.source == TransmissionSource::Measured) {
                const auto table = comp_channel.table();
                if (!table) fail_validation("compensate: --source measured needs --transmission");
                t = Channel::hybrid(*table, std::nullopt).transmission_on(s_out.grid());
            } else {
                const auto m = comp_channel.medium();
                if (!m) fail_validation("compensate: --source model needs --peak/... or --gamma-khz/--z");
                t = Channel::amplitude_only(*m).transmission_on(s_out.grid());
            }
            io::write_trace(fs::path(comp_out), intensity_of(recover_waveform(s_out, t, cfg)));
            if (!comp_intensity.empty()) {
                io::write_profile(fs::path(comp_intensity), s_out.grid(),
                                  compensate_intensity_spectrum(intensity_spectrum(s_out), t, cfg),
                                  "intensity");
            }
            if (!comp_gain.empty()) {
                io::write_profile(fs::path(comp_gain), s_out.grid(), export_gain_spectrum(t, cfg),
                                  "intensity_gain");
            }
        } else if (*dec_cmd) {
            const Spectrum s_out = io::read_spectrum(fs::path(dec_out_spec));
            const Spectrum s_in = io::read_spectrum(fs::path(dec_in_spec));
            const ComponentDecomposition c = decompose_components(s_out, s_in, dec_mod_khz * 1e3);
            std::cout << std::setprecision(9) << "carrier_delay_us = " << c.carrier_delay * 1e6 << '\n'
                      << "left_delay_us = " << c.left_delay * 1e6 << '\n'
                      << "right_delay_us = " << c.right_delay * 1e6 << '\n';
            if (!dec_dir.empty()) {
                const fs::path dir(dec_dir);
                fs::create_directories(dir);
                io::write_trace(dir / "component_reference.csv", intensity_of(c.reference));
                io::write_trace(dir / "component_carrier.csv", intensity_of(c.carrier));
                io::write_trace(dir / "component_left.csv", intensity_of(c.left));
                io::write_trace(dir / "component_right.csv", intensity_of(c.right));
            }
        } else if (*met_cmd) {
            const Waveform out = amplitude_from_intensity(io::read_trace(fs::path(met_out)));
            const Waveform in = amplitude_from_intensity(io::read_trace(fs::path(met_in)));
            print_metrics(measure_metrics(out, in));
        } else if (*run_cmd) {
            if (run_list) {
                for (const auto& n : builtin_scenario_names()) std::cout << n << '\n';
                return 0;
            }
            if (!run_print.empty()) {
                const auto text = builtin_scenario_text(run_print);
                if (!text) fail_validation("unknown bundled scenario '" + run_print + "'");
                std::cout << *text;
                return 0;
            }
            if (run_targets.empty()) fail_validation("run: name at least one scenario (or --list)");

            std::vector<Scenario> scenarios;
            for (const auto& target : run_targets) {
                if (target == "all") {
                    for (const auto& n : builtin_scenario_names()) scenarios.push_back(builtin_scenario(n));
                } else if (builtin_scenario_text(target)) {
                    scenarios.push_back(builtin_scenario(target));
                } else {
                    scenarios.push_back(load_scenario(fs::path(target)));
                }
            }

            // Each scenario writes only into its own directory.
            std::vector<std::future<ScenarioReport>> jobs;
            for (const auto& s : scenarios) {
                jobs.push_back(std::async(std::launch::async,
                                          [&s, &run_root] { return run_scenario(s, fs::path(run_root)); }));
            }
            std::vector<ScenarioReport> reports;
            std::optional<Error> first_error;
            for (auto& job : jobs) {
                try {
                    reports.push_back(job.get());
                } catch (const Error& e) {
                    if (!first_error) first_error = e;
                }
            }
            if (first_error) throw *first_error;

            std::cout << std::setprecision(6);
            for (const auto& r : reports) {
                std::cout << r.name << ": delay_us=" << r.output.delay * 1e6
                          << " recovered_delay_us=" << r.recovered.delay * 1e6
                          << " loss=" << r.output.loss << " nrmse=" << r.output.nrmse;
                if (r.components) {
                    std::cout << " carrier_us=" << r.components->carrier_delay * 1e6
                              << " left_us=" << r.components->left_delay * 1e6
                              << " right_us=" << r.components->right_delay * 1e6;
                }
                std::cout << " -> " << r.directory.string() << '\n';
                if (r.edge_energy_fraction > kEdgeEnergyLimit) {
                    std::cerr << "warning: " << r.name << ": circular wrap risk (edge energy fraction "
                              << r.edge_energy_fraction << ")\n";
                }
            }
        }
    } catch (const Error& e) {
        return report(e);
    } catch (const fs::filesystem_error& e) {
        return report(Error(ErrorKind::Io, e.what()));
    }
    return 0;
}
