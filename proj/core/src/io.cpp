#include "slowlight/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "slowlight/error.hpp"

namespace slowlight::io {

namespace {

constexpr double kSpacingTolerance = 1e-6;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

struct GridHint {
    std::optional<double> dt;
    std::optional<double> t_start;
};

struct Table {
    GridHint hint;
    std::vector<std::vector<double>> columns;
    std::vector<std::size_t> lines;  // source line of each row
};

[[noreturn]] void fail_at(std::string_view source, std::size_t line, const std::string& what) {
    fail_validation(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

double parse_number(std::string_view text, std::string_view source, std::size_t line) {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        fail_at(source, line, "not a finite number: '" + std::string(text) + "'");
    }
    return v;
}

void parse_hint(std::string_view comment, GridHint& hint, std::string_view source,
                std::size_t line) {
    std::istringstream tokens{std::string(comment)};
    std::string token;
    while (tokens >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) continue;
        const std::string_view key(token.data(), eq);
        const std::string_view value(token.data() + eq + 1, token.size() - eq - 1);
        if (key == "dt_s") hint.dt = parse_number(value, source, line);
        if (key == "t_start_s") hint.t_start = parse_number(value, source, line);
    }
}

Table read_table(std::istream& is, std::string_view header, std::string_view source) {
    const std::size_t width = static_cast<std::size_t>(std::count(header.begin(), header.end(), ',')) + 1;
    Table table;
    table.columns.resize(width);

    bool seen_header = false;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(is, raw)) {
        ++line;
        const std::string_view text = trim(raw);
        if (text.empty()) continue;
        if (text.front() == '#') {
            if (!seen_header) parse_hint(text.substr(1), table.hint, source, line);
            continue;
        }
        if (!seen_header) {
            if (text != header) {
                fail_at(source, line, "expected header '" + std::string(header) + "', got '" +
                                          std::string(text) + "'");
            }
            seen_header = true;
            continue;
        }
        std::size_t column = 0;
        std::size_t pos = 0;
        while (true) {
            const auto comma = text.find(',', pos);
            const auto field = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
            if (column >= width) fail_at(source, line, "too many columns");
            table.columns[column++].push_back(parse_number(field, source, line));
            if (comma == std::string_view::npos) break;
            pos = comma + 1;
        }
        if (column != width) {
            fail_at(source, line, "expected " + std::to_string(width) + " columns, got " +
                                      std::to_string(column));
        }
        table.lines.push_back(line);
    }
    if (!seen_header) fail_validation(std::string(source) + ": missing header '" + std::string(header) + "'");
    return table;
}

void write_hint(std::ostream& os, const SamplingGrid& grid) {
    os << "# dt_s=" << format_double(grid.dt()) << " t_start_s=" << format_double(grid.t_start())
       << '\n';
}

// Grid for a column of uniformly spaced coordinates. `coordinate(grid, i)`
// gives the lattice position of row i.
template <typename Coordinate>
SamplingGrid grid_from_axis(const Table& table, const std::vector<double>& axis,
                            SamplingGrid estimate, Coordinate coordinate,
                            std::string_view source) {
    SamplingGrid grid = estimate;
    if (table.hint.dt) {
        grid = SamplingGrid(axis.size(), *table.hint.dt, table.hint.t_start.value_or(estimate.t_start()));
    }
    const double step = coordinate(grid, 1) - coordinate(grid, 0);
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (std::abs(axis[i] - coordinate(grid, i)) > kSpacingTolerance * std::abs(step)) {
            fail_at(source, table.lines[i], "axis is not uniformly spaced (row " +
                                                std::to_string(i) + ")");
        }
    }
    return grid;
}

template <typename Fn>
void with_output(const std::filesystem::path& path, Fn&& fn) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail_io("cannot open '" + path.string() + "' for writing");
    fn(os);
    os.flush();
    if (!os) fail_io("write to '" + path.string() + "' failed");
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail_io("cannot open '" + path.string() + "' for reading");
    return is;
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) fail_numeric("cannot format number");
    return std::string(buf, ptr);
}

void write_trace(std::ostream& os, const IntensityTrace& trace) {
    const SamplingGrid& grid = trace.grid();
    write_hint(os, grid);
    os << "time_s,value\n";
    for (std::size_t i = 0; i < trace.size(); ++i) {
        os << format_double(grid.time(i)) << ',' << format_double(trace[i]) << '\n';
    }
}

IntensityTrace read_trace(std::istream& is, std::string_view source) {
    const Table table = read_table(is, "time_s,value", source);
    const auto& t = table.columns[0];
    if (t.size() < 2) fail_validation(std::string(source) + ": need at least 2 samples");
    const double dt_est = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    if (!(dt_est > 0.0)) fail_validation(std::string(source) + ": time column must increase");

    try {
        const SamplingGrid estimate(t.size(), dt_est, t.front());
        const SamplingGrid grid = grid_from_axis(
            table, t, estimate, [](const SamplingGrid& g, std::size_t i) { return g.time(i); },
            source);
        return IntensityTrace(grid, table.columns[1]);
    } catch (const Error& e) {
        if (std::string_view(e.what()).starts_with(source)) throw;
        fail_validation(std::string(source) + ": " + e.what());
    }
}

void write_spectrum(std::ostream& os, const Spectrum& s) {
    write_hint(os, s.grid());
    os << "detuning_hz,re,im\n";
    for (std::size_t k = 0; k < s.size(); ++k) {
        os << format_double(s.detuning(k)) << ',' << format_double(s[k].real()) << ','
           << format_double(s[k].imag()) << '\n';
    }
}

Spectrum read_spectrum(std::istream& is, std::string_view source) {
    const Table table = read_table(is, "detuning_hz,re,im", source);
    const auto& d = table.columns[0];
    if (d.size() < 2) fail_validation(std::string(source) + ": need at least 2 bins");
    const double df_est = (d.back() - d.front()) / static_cast<double>(d.size() - 1);
    if (!(df_est > 0.0)) fail_validation(std::string(source) + ": detuning column must increase");

    try {
        const std::size_t n = d.size();
        const double dt_est = 1.0 / (static_cast<double>(n) * df_est);
        const SamplingGrid estimate = SamplingGrid::centered(n, dt_est, 0.0);
        const SamplingGrid grid = grid_from_axis(
            table, d, estimate, [](const SamplingGrid& g, std::size_t k) { return g.detuning(k); },
            source);
        std::vector<Complex> samples(n);
        for (std::size_t k = 0; k < n; ++k) samples[k] = {table.columns[1][k], table.columns[2][k]};
        return Spectrum(grid, std::move(samples));
    } catch (const Error& e) {
        if (std::string_view(e.what()).starts_with(source)) throw;
        fail_validation(std::string(source) + ": " + e.what());
    }
}

void write_profile(std::ostream& os, const SamplingGrid& grid, std::span<const double> values,
                   std::string_view column) {
    if (values.size() != grid.size()) fail_validation("profile: value count does not match grid");
    write_hint(os, grid);
    os << "detuning_hz," << column << '\n';
    for (std::size_t k = 0; k < values.size(); ++k) {
        os << format_double(grid.detuning(k)) << ',' << format_double(values[k]) << '\n';
    }
}

void write_transmission(std::ostream& os, const MeasuredTransmission& t) {
    os << "detuning_hz,transmission\n";
    for (const auto& p : t.points()) {
        os << format_double(p.detuning) << ',' << format_double(p.transmission) << '\n';
    }
}

MeasuredTransmission read_transmission(std::istream& is, std::optional<double> extrapolation,
                                       std::string_view source) {
    const Table table = read_table(is, "detuning_hz,transmission", source);
    std::vector<TransmissionPoint> points;
    points.reserve(table.lines.size());
    for (std::size_t i = 0; i < table.lines.size(); ++i) {
        points.push_back({table.columns[0][i], table.columns[1][i]});
    }
    try {
        double fallback = 0.0;
        if (!points.empty()) {
            fallback = std::min(points.front().transmission, points.back().transmission);
        }
        return MeasuredTransmission(std::move(points), extrapolation.value_or(fallback));
    } catch (const Error& e) {
        fail_validation(std::string(source) + ": " + e.what());
    }
}

void write_trace(const std::filesystem::path& path, const IntensityTrace& trace) {
    with_output(path, [&](std::ostream& os) { write_trace(os, trace); });
}

IntensityTrace read_trace(const std::filesystem::path& path) {
    auto is = open_input(path);
    return read_trace(is, path.string());
}

void write_spectrum(const std::filesystem::path& path, const Spectrum& s) {
    with_output(path, [&](std::ostream& os) { write_spectrum(os, s); });
}

Spectrum read_spectrum(const std::filesystem::path& path) {
    auto is = open_input(path);
    return read_spectrum(is, path.string());
}

void write_profile(const std::filesystem::path& path, const SamplingGrid& grid,
                   std::span<const double> values, std::string_view column) {
    with_output(path, [&](std::ostream& os) { write_profile(os, grid, values, column); });
}

void write_transmission(const std::filesystem::path& path, const MeasuredTransmission& t) {
    with_output(path, [&](std::ostream& os) { write_transmission(os, t); });
}

MeasuredTransmission read_transmission(const std::filesystem::path& path,
                                       std::optional<double> extrapolation) {
    auto is = open_input(path);
    return read_transmission(is, extrapolation, path.string());
}

}  // namespace slowlight::io
