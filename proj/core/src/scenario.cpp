#include "slowlight/scenario.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "slowlight/error.hpp"
#include "slowlight/io.hpp"

namespace slowlight {

namespace {

// Reference parameter set: T0 = 6.5 us, delta = 700 kHz, A = 1, channel calibrated
// to the 61.5% / 10% / 350 kHz transmission window.
constexpr std::string_view kCalibratedChannel = R"(
[channel]
medium = calibrated
peak = 0.615
background = 0.10
fwhm_khz = 350

[compensation]
floor = 0.001
source = model
)";

struct Builtin {
    std::string_view name;
    std::string_view pulse;
    std::string_view analysis;
};

constexpr std::array<Builtin, 5> kBuiltins{{
    {"fig2a", "[pulse]\nkind = gaussian\nt0_us = 6.5\n", "[analysis]\ndecompose = false\n"},
    {"fig2b", "[pulse]\nkind = amg\nt0_us = 6.5\ndepth = 1\nmod_khz = 700\n",
     "[analysis]\ndecompose = false\n"},
    {"fig3a", "[pulse]\nkind = gaussian\nt0_us = 6.5\n", "[analysis]\ndecompose = false\n"},
    {"fig3b", "[pulse]\nkind = amg\nt0_us = 6.5\ndepth = 1\nmod_khz = 700\n",
     "[analysis]\ndecompose = false\n"},
    {"fig4", "[pulse]\nkind = amg\nt0_us = 6.5\ndepth = 1\nmod_khz = 700\n",
     "[analysis]\ndecompose = true\n"},
}};

std::map<std::string, std::string, std::less<>> make_builtin_texts() {
    std::map<std::string, std::string, std::less<>> out;
    for (const auto& b : kBuiltins) {
        std::string text = "# bundled scenario " + std::string(b.name) + "\n[scenario]\nname = " +
                           std::string(b.name) + "\n\n" + std::string(b.pulse) +
                           std::string(kCalibratedChannel) + "\n" + std::string(b.analysis) +
                           "\n[output]\ndir = " + std::string(b.name) + "\n";
        out.emplace(std::string(b.name), std::move(text));
    }
    return out;
}

const std::map<std::string, std::string, std::less<>>& builtin_texts() {
    static const auto texts = make_builtin_texts();
    return texts;
}

// ---- INI document ---------------------------------------------------------

struct Entry {
    std::string value;
    std::size_t line = 0;
};

struct Section {
    std::size_t line = 0;
    std::map<std::string, Entry, std::less<>> entries;
};

const std::map<std::string_view, std::vector<std::string_view>> kSchema{
    {"scenario", {"name"}},
    {"pulse", {"kind", "t0_us", "fwhm_us", "depth", "mod_khz", "center_us"}},
    {"channel",
     {"medium", "peak", "background", "fwhm_khz", "gamma_khz", "z", "scale", "transmission_file",
      "extrapolation", "phase"}},
    {"grid", {"n", "dt_ns"}},
    {"compensation", {"floor", "source"}},
    {"analysis", {"decompose"}},
    {"output", {"dir"}},
};

// Field names used in module error messages, mapped to the config key that
// sets them.
const std::map<std::string_view, std::pair<std::string_view, std::string_view>> kFieldKeys{
    {"pulse.t0", {"pulse", "t0_us"}},
    {"pulse.depth", {"pulse", "depth"}},
    {"pulse.mod_freq", {"pulse", "mod_khz"}},
    {"pulse.center", {"pulse", "center_us"}},
    {"medium.gamma_eit", {"channel", "gamma_khz"}},
    {"medium.z", {"channel", "z"}},
    {"medium.scale", {"channel", "scale"}},
    {"calibrate.peak", {"channel", "peak"}},
    {"calibrate.background", {"channel", "background"}},
    {"calibrate.fwhm", {"channel", "fwhm_khz"}},
    {"transmission.extrapolation", {"channel", "extrapolation"}},
    {"compensation.floor", {"compensation", "floor"}},
    {"grid.n", {"grid", "n"}},
    {"grid.dt", {"grid", "dt_ns"}},
};

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class Document {
public:
    Document(std::string_view text, std::string_view source) : source_(source) {
        std::size_t line_no = 0;
        Section* current = nullptr;
        std::size_t pos = 0;
        while (pos <= text.size()) {
            const auto eol = text.find('\n', pos);
            std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
            pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
            ++line_no;

            if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
                line = line.substr(0, hash);
            }
            line = trim(line);
            if (line.empty()) continue;

            if (line.front() == '[') {
                if (line.back() != ']') fail(line_no, "unterminated section header");
                const std::string name(trim(line.substr(1, line.size() - 2)));
                if (!kSchema.contains(name)) fail(line_no, "unknown section [" + name + "]");
                if (sections_.contains(name)) fail(line_no, "duplicate section [" + name + "]");
                current = &sections_[name];
                current->line = line_no;
                current_name_ = name;
                continue;
            }

            const auto eq = line.find('=');
            if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
            if (current == nullptr) fail(line_no, "key outside of any section");
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            const auto& allowed = kSchema.at(current_name_);
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                fail(line_no, "unknown key '" + key + "' in [" + current_name_ + "]");
            }
            if (current->entries.contains(key)) {
                fail(line_no, "duplicate key '" + key + "' in [" + current_name_ + "]");
            }
            current->entries.emplace(key, Entry{value, line_no});
        }
    }

    const Entry* find(std::string_view section, std::string_view key) const {
        const auto s = sections_.find(section);
        if (s == sections_.end()) return nullptr;
        const auto e = s->second.entries.find(key);
        return e == s->second.entries.end() ? nullptr : &e->second;
    }

    std::optional<std::string> text(std::string_view section, std::string_view key) const {
        if (const Entry* e = find(section, key)) return e->value;
        return std::nullopt;
    }

    std::optional<double> number(std::string_view section, std::string_view key) const {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        double v = 0.0;
        const auto* first = e->value.data();
        const auto* last = first + e->value.size();
        const auto [ptr, ec] = std::from_chars(first, last, v);
        if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
            fail(e->line, std::string(section) + "." + std::string(key) + ": not a number: '" +
                              e->value + "'");
        }
        return v;
    }

    std::optional<bool> flag(std::string_view section, std::string_view key) const {
        const Entry* e = find(section, key);
        if (!e) return std::nullopt;
        if (e->value == "true" || e->value == "yes" || e->value == "1") return true;
        if (e->value == "false" || e->value == "no" || e->value == "0") return false;
        fail(e->line, std::string(section) + "." + std::string(key) + ": expected true/false, got '" +
                          e->value + "'");
    }

    std::size_t line_of(std::string_view section, std::string_view key) const {
        if (const Entry* e = find(section, key)) return e->line;
        const auto s = sections_.find(section);
        return s == sections_.end() ? 0 : s->second.line;
    }

    [[noreturn]] void fail(std::size_t line, const std::string& what) const {
        fail_validation(source_ + ":" + std::to_string(line) + ": " + what);
    }

    // Re-raises a module error at the config line that set the offending field.
    template <typename Fn>
    auto located(std::string_view section, Fn&& fn) const {
        try {
            return fn();
        } catch (const Error& e) {
            const std::string_view msg = e.what();
            std::size_t line = line_of(section, "");
            if (const auto colon = msg.find(':'); colon != std::string_view::npos) {
                if (const auto it = kFieldKeys.find(msg.substr(0, colon)); it != kFieldKeys.end()) {
                    line = line_of(it->second.first, it->second.second);
                }
            }
            throw Error(e.kind(), source_ + ":" + std::to_string(line) + ": " + std::string(msg));
        }
    }

private:
    std::string source_;
    std::map<std::string, Section, std::less<>> sections_;
    std::string current_name_;
};

PulseSpec parse_pulse(const Document& doc) {
    const std::string kind = doc.text("pulse", "kind").value_or("");
    PulseSpec spec;
    if (kind == "gaussian") {
        spec.kind = PulseKind::Gaussian;
    } else if (kind == "amg") {
        spec.kind = PulseKind::Amg;
    } else {
        doc.fail(doc.line_of("pulse", "kind"),
                 "pulse.kind: expected 'gaussian' or 'amg', got '" + kind + "'");
    }

    const auto t0_us = doc.number("pulse", "t0_us");
    const auto fwhm_us = doc.number("pulse", "fwhm_us");
    if (t0_us.has_value() == fwhm_us.has_value()) {
        doc.fail(doc.line_of("pulse", ""), "pulse: give exactly one of t0_us or fwhm_us");
    }
    spec.t0 = t0_us ? *t0_us * 1e-6 : *fwhm_us * 1e-6 / 2.0;
    spec.center = doc.number("pulse", "center_us").value_or(0.0) * 1e-6;
    if (spec.kind == PulseKind::Amg) {
        spec.mod_depth = doc.number("pulse", "depth").value_or(1.0);
        spec.mod_freq = doc.number("pulse", "mod_khz").value_or(0.0) * 1e3;
    }
    doc.located("pulse", [&] { spec.validate(); });
    return spec;
}

ChannelSpec parse_channel(const Document& doc, const std::filesystem::path& base_dir) {
    ChannelSpec ch;
    const std::string medium = doc.text("channel", "medium").value_or("calibrated");
    if (medium == "calibrated") {
        ch.medium = ChannelSpec::MediumModel::Calibrated;
        ch.peak = doc.number("channel", "peak").value_or(ch.peak);
        ch.background = doc.number("channel", "background").value_or(ch.background);
        ch.fwhm = doc.number("channel", "fwhm_khz").value_or(ch.fwhm / 1e3) * 1e3;
    } else if (medium == "analytic") {
        ch.medium = ChannelSpec::MediumModel::Analytic;
        const auto gamma = doc.number("channel", "gamma_khz");
        const auto z = doc.number("channel", "z");
        if (!gamma || !z) {
            doc.fail(doc.line_of("channel", "medium"),
                     "channel: analytic medium needs gamma_khz and z");
        }
        ch.gamma_eit = *gamma * 1e3;
        ch.z = *z;
        ch.scale = doc.number("channel", "scale").value_or(1.0);
    } else if (medium == "none") {
        ch.medium = ChannelSpec::MediumModel::None;
    } else {
        doc.fail(doc.line_of("channel", "medium"),
                 "channel.medium: expected calibrated, analytic or none, got '" + medium + "'");
    }

    if (const auto file = doc.text("channel", "transmission_file")) {
        std::filesystem::path p(*file);
        ch.transmission_file = p.is_relative() ? base_dir / p : p;
    }
    ch.extrapolation = doc.number("channel", "extrapolation");

    const std::string phase = doc.text("channel", "phase").value_or("model");
    if (phase != "model" && phase != "none") {
        doc.fail(doc.line_of("channel", "phase"),
                 "channel.phase: expected 'model' or 'none', got '" + phase + "'");
    }
    ch.model_phase = phase == "model";

    if (ch.medium == ChannelSpec::MediumModel::None) {
        if (!ch.transmission_file || ch.model_phase) {
            doc.fail(doc.line_of("channel", "medium"),
                     "channel: medium = none requires transmission_file and phase = none");
        }
    }
    doc.located("channel", [&] { (void)ch.build_medium(); });
    return ch;
}

}  // namespace

std::optional<EitMedium> ChannelSpec::build_medium() const {
    switch (medium) {
        case MediumModel::Calibrated: return calibrate_from_transmission(peak, background, fwhm);
        case MediumModel::Analytic: return EitMedium(gamma_eit, z, scale);
        case MediumModel::None: break;
    }
    return std::nullopt;
}

std::optional<MeasuredTransmission> ChannelSpec::load_transmission() const {
    if (!transmission_file) return std::nullopt;
    return io::read_transmission(*transmission_file, extrapolation);
}

SamplingGrid Scenario::grid() const {
    if (grid_n && grid_dt) return SamplingGrid::centered(*grid_n, *grid_dt, pulse.center);
    return default_grid(pulse);
}

Scenario parse_scenario(std::string_view text, std::string_view source,
                        const std::filesystem::path& base_dir) {
    const Document doc(text, source);
    Scenario s;
    s.name = doc.text("scenario", "name").value_or(std::string(source));
    s.pulse = parse_pulse(doc);
    s.channel = parse_channel(doc, base_dir);

    const auto n = doc.number("grid", "n");
    const auto dt_ns = doc.number("grid", "dt_ns");
    if (n.has_value() != dt_ns.has_value()) {
        doc.fail(doc.line_of("grid", ""), "grid: give both n and dt_ns, or neither");
    }
    if (n) {
        if (!(*n >= 0.0) || *n != std::floor(*n)) {
            doc.fail(doc.line_of("grid", "n"), "grid.n: must be a whole number");
        }
        s.grid_n = static_cast<std::size_t>(*n);
        s.grid_dt = *dt_ns * 1e-9;
        doc.located("grid", [&] { (void)s.grid(); });
    }

    s.compensation.floor = doc.number("compensation", "floor").value_or(s.compensation.floor);
    const std::string source_name = doc.text("compensation", "source").value_or("model");
    if (source_name == "model") {
        s.compensation.source = TransmissionSource::Model;
        if (s.channel.medium == ChannelSpec::MediumModel::None) {
            doc.fail(doc.line_of("compensation", "source"),
                     "compensation.source: model needs a channel medium");
        }
    } else if (source_name == "measured") {
        s.compensation.source = TransmissionSource::Measured;
        if (!s.channel.transmission_file) {
            doc.fail(doc.line_of("compensation", "source"),
                     "compensation.source: measured needs channel.transmission_file");
        }
    } else {
        doc.fail(doc.line_of("compensation", "source"),
                 "compensation.source: expected 'model' or 'measured', got '" + source_name + "'");
    }
    doc.located("compensation", [&] { s.compensation.validate(); });

    s.decompose = doc.flag("analysis", "decompose");
    if (s.decompose.value_or(false) && s.pulse.kind != PulseKind::Amg) {
        doc.fail(doc.line_of("analysis", "decompose"),
                 "analysis.decompose: component decomposition needs an amg pulse");
    }
    s.output_dir = doc.text("output", "dir").value_or(s.name);
    return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
    std::ifstream is(file, std::ios::binary);
    if (!is) fail_io("cannot open scenario '" + file.string() + "'");
    std::ostringstream buf;
    buf << is.rdbuf();
    Scenario s = parse_scenario(buf.str(), file.string(), file.parent_path());
    if (s.name == file.string()) s.name = file.stem().string();
    if (s.output_dir == file.string()) s.output_dir = s.name;
    return s;
}

std::vector<std::string> builtin_scenario_names() {
    std::vector<std::string> names;
    for (const auto& b : kBuiltins) names.emplace_back(b.name);
    return names;
}

std::optional<std::string_view> builtin_scenario_text(std::string_view name) {
    const auto& texts = builtin_texts();
    const auto it = texts.find(name);
    if (it == texts.end()) return std::nullopt;
    return std::string_view(it->second);
}

Scenario builtin_scenario(std::string_view name) {
    const auto text = builtin_scenario_text(name);
    if (!text) fail_validation("unknown bundled scenario '" + std::string(name) + "'");
    return parse_scenario(*text, "builtin:" + std::string(name));
}

namespace {

nlohmann::ordered_json metrics_json(const PulseMetrics& m) {
    return {{"delay_s", m.delay}, {"loss", m.loss}, {"nrmse", m.nrmse}, {"fwhm_s", m.fwhm_time}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail_io("cannot open '" + path.string() + "' for writing");
    os << text;
    if (!os) fail_io("write to '" + path.string() + "' failed");
}

}  // namespace

ScenarioReport run_scenario(const Scenario& scenario, const std::filesystem::path& out_root) {
    const SamplingGrid grid = scenario.grid();
    const Waveform input = synth(scenario.pulse, grid);

    const std::optional<EitMedium> medium = scenario.channel.build_medium();
    const std::optional<MeasuredTransmission> table = scenario.channel.load_transmission();
    const std::optional<EitMedium> phase = scenario.channel.model_phase ? medium : std::nullopt;
    const Channel channel = table ? Channel::hybrid(*table, phase) : Channel(*medium, phase);

    const Spectrum s_in = dft(input);
    const Spectrum s_out = propagate_spectrum(s_in, channel);
    const Waveform output = idft(s_out);

    std::vector<double> transmission;
    if (scenario.compensation.source == TransmissionSource::Measured) {
        transmission = Channel::hybrid(*table, std::nullopt).transmission_on(grid);
    } else {
        transmission = Channel::amplitude_only(*medium).transmission_on(grid);
    }
    const Waveform recovered = recover_waveform(s_out, transmission, scenario.compensation);
    const std::vector<double> compensated =
        compensate_intensity_spectrum(intensity_spectrum(s_out), transmission, scenario.compensation);
    const std::vector<double> gain = export_gain_spectrum(transmission, scenario.compensation);

    ScenarioReport report{scenario.name,
                          grid,
                          medium,
                          measure_metrics(output, input),
                          measure_metrics(recovered, input),
                          std::nullopt,
                          edge_energy_fraction(output),
                          out_root / scenario.output_dir};
    if (scenario.decompose.value_or(scenario.pulse.kind == PulseKind::Amg)) {
        report.components = decompose_components(s_out, s_in, scenario.pulse.mod_freq);
    }

    const auto& dir = report.directory;
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) fail_io("cannot create '" + dir.string() + "': " + ec.message());

    io::write_trace(dir / "input.csv", intensity_of(input));
    io::write_trace(dir / "output.csv", intensity_of(output));
    io::write_trace(dir / "recovered.csv", intensity_of(recovered));
    io::write_spectrum(dir / "input_spectrum.csv", s_in);
    io::write_spectrum(dir / "output_spectrum.csv", s_out);
    io::write_profile(dir / "compensated_intensity_spectrum.csv", grid, compensated, "intensity");
    io::write_profile(dir / "transmission.csv", grid, transmission, "transmission");
    io::write_profile(dir / "gain_spectrum.csv", grid, gain, "intensity_gain");

    nlohmann::ordered_json j;
    j["scenario"] = scenario.name;
    j["pulse"] = {{"kind", scenario.pulse.kind == PulseKind::Amg ? "amg" : "gaussian"},
                  {"t0_s", scenario.pulse.t0},
                  {"depth", scenario.pulse.mod_depth},
                  {"mod_freq_hz", scenario.pulse.mod_freq},
                  {"center_s", scenario.pulse.center}};
    j["grid"] = {{"n", grid.size()}, {"dt_s", grid.dt()}, {"t_start_s", grid.t_start()}};
    if (medium) {
        j["medium"] = {{"gamma_eit_hz", medium->gamma_eit()},
                       {"z", medium->z()},
                       {"scale", medium->scale()},
                       {"group_delay_carrier_s", group_delay(*medium, 0.0)}};
        if (scenario.pulse.kind == PulseKind::Amg) {
            j["medium"]["group_delay_sideband_s"] = group_delay(*medium, scenario.pulse.mod_freq);
        }
    } else {
        j["medium"] = nullptr;
    }
    j["output"] = metrics_json(report.output);
    j["recovered"] = metrics_json(report.recovered);
    if (report.components) {
        const auto& c = *report.components;
        io::write_trace(dir / "component_reference.csv", intensity_of(c.reference));
        io::write_trace(dir / "component_carrier.csv", intensity_of(c.carrier));
        io::write_trace(dir / "component_left.csv", intensity_of(c.left));
        io::write_trace(dir / "component_right.csv", intensity_of(c.right));
        j["components"] = {{"carrier_delay_s", c.carrier_delay},
                           {"left_delay_s", c.left_delay},
                           {"right_delay_s", c.right_delay}};
    }
    j["edge_energy_fraction"] = report.edge_energy_fraction;
    j["wrap_warning"] = report.edge_energy_fraction > kEdgeEnergyLimit;
    write_text(dir / "metrics.json", j.dump(2) + "\n");
    return report;
}

}  // namespace slowlight
