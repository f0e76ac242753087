#include <sstream>

#include "doctest.h"
#include "oracles.hpp"
#include "slowlight/error.hpp"
#include "slowlight/io.hpp"

using namespace slowlight;

namespace {

template <typename Write>
std::string render(Write&& write) {
    std::ostringstream os;
    write(os);
    return os.str();
}

}  // namespace

TEST_CASE("io: number formatting round-trips") {
    oracle::Rng rng(5);
    for (int i = 0; i < 1000; ++i) {
        const double v = rng.uniform(-1.0, 1.0) * rng.log_uniform(1e-300, 1e300);
        CHECK(std::stod(io::format_double(v)) == v);
    }
    CHECK(io::format_double(0.1) == "0.1");
    CHECK(io::format_double(350000.0) == "350000");
}

TEST_CASE("io: trace write-read-write is byte identical") {
    const PulseSpec spec = PulseSpec::amg(6.5e-6, 1.0, 700e3, 0.3e-6);
    const IntensityTrace trace = intensity_of(synth_amg(spec, default_grid(spec)));
    const std::string first = render([&](std::ostream& os) { io::write_trace(os, trace); });
    std::istringstream is(first);
    const IntensityTrace back = io::read_trace(is);
    CHECK(back.grid() == trace.grid());
    CHECK(render([&](std::ostream& os) { io::write_trace(os, back); }) == first);
}

TEST_CASE("io: spectrum write-read-write is byte identical") {
    const PulseSpec spec = PulseSpec::gaussian(3e-6, -1e-6);
    const Spectrum s = dft(synth_gaussian(spec, default_grid(spec)));
    const std::string first = render([&](std::ostream& os) { io::write_spectrum(os, s); });
    std::istringstream is(first);
    const Spectrum back = io::read_spectrum(is);
    CHECK(back.grid() == s.grid());
    for (std::size_t k = 0; k < s.size(); ++k) CHECK(back[k] == s[k]);
    CHECK(render([&](std::ostream& os) { io::write_spectrum(os, back); }) == first);
}

TEST_CASE("io: traces without a grid comment") {
    std::istringstream is("time_s,value\n0,0\n1e-6,1\n2e-6,4\n3e-6,9\n4e-6,4\n5e-6,1\n6e-6,0\n7e-6,0\n");
    const IntensityTrace t = io::read_trace(is);
    CHECK(t.size() == 8);
    CHECK(t.grid().dt() == doctest::Approx(1e-6));
    CHECK(t[3] == 9.0);

    std::istringstream uneven("time_s,value\n0,0\n1e-6,1\n2e-6,4\n3e-6,9\n4e-6,4\n5.1e-6,1\n6e-6,0\n7e-6,0\n");
    CHECK_THROWS_AS(io::read_trace(uneven), Error);
    std::istringstream negative("time_s,value\n0,0\n1e-6,-1\n2e-6,4\n3e-6,9\n4e-6,4\n5e-6,1\n6e-6,0\n7e-6,0\n");
    CHECK_THROWS_AS(io::read_trace(negative), Error);
    std::istringstream no_header("0,0\n1,1\n");
    CHECK_THROWS_AS(io::read_trace(no_header), Error);
    std::istringstream junk("time_s,value\n0,abc\n");
    try {
        io::read_trace(junk, "junk.csv");
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("junk.csv:2:") == 0);
        CHECK(e.kind() == ErrorKind::Validation);
    }
}

TEST_CASE("io: measured transmission files") {
    const std::string text =
        "detuning_hz,transmission\n-3e5,0.12\n-1e5,0.4\n0,0.61\n1e5,0.41\n3e5,0.11\n";
    std::istringstream is(text);
    const MeasuredTransmission t = io::read_transmission(is);
    CHECK(t.points().size() == 5);
    CHECK(t.extrapolation_value() == 0.11);
    const std::string written = render([&](std::ostream& os) { io::write_transmission(os, t); });
    std::istringstream reread(written);
    CHECK(render([&](std::ostream& os) { io::write_transmission(os, io::read_transmission(reread)); }) ==
          written);

    std::istringstream again(text);
    CHECK(io::read_transmission(again, 0.05).extrapolation_value() == 0.05);

    std::istringstream descending("detuning_hz,transmission\n0,0.1\n-1,0.2\n-2,0.3\n-3,0.1\n");
    CHECK_THROWS_AS(io::read_transmission(descending), Error);
    std::istringstream wrong_header("freq,transmission\n0,0.1\n");
    CHECK_THROWS_AS(io::read_transmission(wrong_header), Error);
}

TEST_CASE("io: missing files are I/O errors") {
    try {
        io::read_trace(std::filesystem::path("/nonexistent/trace.csv"));
        FAIL("expected I/O error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}
