#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slowlight/analysis.hpp"
#include "slowlight/medium.hpp"
#include "slowlight/propagation.hpp"
#include "slowlight/signal.hpp"

namespace slowlight {

/// How the channel of a scenario is assembled. The analytic medium supplies
/// the phase (and the amplitude, unless a transmission table is given).
struct ChannelSpec {
    enum class MediumModel { None, Calibrated, Analytic };

    MediumModel medium = MediumModel::Calibrated;
    double peak = 0.615;
    double background = 0.10;
    double fwhm = 350e3;  // Hz
    double gamma_eit = 0.0;  // Hz, analytic only
    double z = 0.0;
    double scale = 1.0;

    std::optional<std::filesystem::path> transmission_file;
    std::optional<double> extrapolation;
    bool model_phase = true;

    std::optional<EitMedium> build_medium() const;
    std::optional<MeasuredTransmission> load_transmission() const;
};

/// One reproducible pipeline run: synthesize, propagate, compensate,
/// decompose, measure.
struct Scenario {
    std::string name;
    PulseSpec pulse;
    ChannelSpec channel;
    std::optional<std::size_t> grid_n;
    std::optional<double> grid_dt;  // s
    CompensationConfig compensation;
    std::optional<bool> decompose;  // default: AMG pulses only
    std::filesystem::path output_dir;

    SamplingGrid grid() const;
};

/// Parses a `[section]` / `key = value` document. Errors are
/// Error(Validation) prefixed with `source:line:`. Relative paths resolve
/// against `base_dir`.
Scenario parse_scenario(std::string_view text, std::string_view source,
                        const std::filesystem::path& base_dir = {});
Scenario load_scenario(const std::filesystem::path& file);

std::vector<std::string> builtin_scenario_names();
/// Config text of a bundled scenario, or nullopt for an unknown name.
std::optional<std::string_view> builtin_scenario_text(std::string_view name);
Scenario builtin_scenario(std::string_view name);

struct ScenarioReport {
    std::string name;
    SamplingGrid grid;
    std::optional<EitMedium> medium;
    PulseMetrics output;
    PulseMetrics recovered;
    std::optional<ComponentDecomposition> components;
    double edge_energy_fraction = 0.0;
    std::filesystem::path directory;
};

/// Runs the scenario and writes the report bundle into
/// `out_root / scenario.output_dir`:
///   input.csv output.csv recovered.csv              (time_s,value intensity)
///   input_spectrum.csv output_spectrum.csv          (detuning_hz,re,im)
///   compensated_intensity_spectrum.csv transmission.csv gain_spectrum.csv
///   component_{reference,carrier,left,right}.csv    (when decomposed)
///   metrics.json
/// Identical scenarios produce byte-identical bundles.
ScenarioReport run_scenario(const Scenario& scenario, const std::filesystem::path& out_root);

}  // namespace slowlight
