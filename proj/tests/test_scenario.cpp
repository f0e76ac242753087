#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "slowlight/error.hpp"
#include "slowlight/io.hpp"
#include "slowlight/scenario.hpp"

using namespace slowlight;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("slowlight_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string error_of(std::string_view text) {
    try {
        parse_scenario(text, "cfg.ini");
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("scenario: bundled scenarios parse") {
    const auto names = builtin_scenario_names();
    CHECK(names == std::vector<std::string>{"fig2a", "fig2b", "fig3a", "fig3b", "fig4"});
    for (const auto& n : names) {
        const Scenario s = builtin_scenario(n);
        CHECK(s.name == n);
        CHECK(s.pulse.t0 == doctest::Approx(6.5e-6));
    }
    CHECK(builtin_scenario("fig4").decompose == true);
    CHECK(builtin_scenario("fig2b").pulse.kind == PulseKind::Amg);
    CHECK_FALSE(builtin_scenario_text("fig9").has_value());
    CHECK_THROWS_AS(builtin_scenario("fig9"), Error);
}

TEST_CASE("scenario: validation errors cite the config line") {
    const std::string bad_depth =
        "[pulse]\nkind = amg\nt0_us = 6.5\ndepth = 2\nmod_khz = 700\n";
    const std::string msg = error_of(bad_depth);
    CHECK(msg.find("cfg.ini:4:") == 0);
    CHECK(msg.find("pulse.depth") != std::string::npos);

    CHECK(error_of("[pulse]\nkind = square\nt0_us = 1\n").find("cfg.ini:2:") == 0);
    CHECK(error_of("[pulse]\nkind = gaussian\nt0_us = 6.5\ncolour = red\n").find("cfg.ini:4:") == 0);
    CHECK(error_of("[pulses]\n").find("cfg.ini:1:") == 0);
    CHECK(error_of("[pulse]\nkind = gaussian\nt0_us = abc\n").find("cfg.ini:3:") == 0);
    CHECK(error_of("[pulse]\nkind = gaussian\nt0_us = 6.5\n[channel]\npeak = 0.1\nbackground = 0.2\n")
              .find("cfg.ini:6:") == 0);
    CHECK(error_of("[pulse]\nkind = gaussian\nt0_us = 6.5\n[grid]\nn = 1000\ndt_ns = 50\n")
              .find("cfg.ini:5:") == 0);
    CHECK(error_of("[pulse]\nkind = gaussian\nt0_us = 6.5\n[analysis]\ndecompose = true\n")
              .find("cfg.ini:5:") == 0);
    CHECK(error_of("[pulse]\nkind = gaussian\nt0_us = 6.5\n[compensation]\nsource = measured\n")
              .find("cfg.ini:5:") == 0);
}

TEST_CASE("scenario: intensity-FWHM pulse and explicit grid") {
    const Scenario s = parse_scenario(
        "[pulse]\nkind = gaussian\nfwhm_us = 6.5\n[grid]\nn = 4096\ndt_ns = 60\n[output]\ndir = x\n",
        "cfg.ini");
    CHECK(s.pulse.t0 == doctest::Approx(3.25e-6));
    CHECK(s.grid().size() == 4096);
    CHECK(s.grid().dt() == doctest::Approx(60e-9));
    CHECK(s.output_dir == "x");
}

TEST_CASE("scenario: fig2a and fig4 bundles") {
    const fs::path root = scratch("bundles");
    const ScenarioReport a = run_scenario(builtin_scenario("fig2a"), root);
    CHECK(a.output.delay == doctest::Approx(0.539e-6).epsilon(0.02));
    CHECK_FALSE(a.components.has_value());
    for (const char* f : {"input.csv", "output.csv", "recovered.csv", "input_spectrum.csv",
                          "output_spectrum.csv", "compensated_intensity_spectrum.csv",
                          "transmission.csv", "gain_spectrum.csv", "metrics.json"}) {
        CHECK(fs::exists(root / "fig2a" / f));
    }

    const ScenarioReport d = run_scenario(builtin_scenario("fig4"), root);
    REQUIRE(d.components.has_value());
    CHECK(d.components->carrier_delay > 0.0);
    CHECK(d.components->left_delay < 0.0);
    CHECK(d.components->right_delay < 0.0);
    CHECK(fs::exists(root / "fig4" / "component_left.csv"));

    // Emitted transmission profile doubles as a measured-transmission file.
    const MeasuredTransmission table = io::read_transmission(root / "fig2a" / "transmission.csv");
    CHECK(table.points().size() == a.grid.size());
}

TEST_CASE("scenario: bundles are byte deterministic") {
    const fs::path r1 = scratch("det1");
    const fs::path r2 = scratch("det2");
    run_scenario(builtin_scenario("fig3b"), r1);
    run_scenario(builtin_scenario("fig3b"), r2);
    for (const auto& entry : fs::directory_iterator(r1 / "fig3b")) {
        CHECK(slurp(entry.path()) == slurp(r2 / "fig3b" / entry.path().filename()));
    }
}

TEST_CASE("scenario: hybrid channel from a transmission file") {
    const fs::path root = scratch("hybrid");
    run_scenario(builtin_scenario("fig2b"), root);
    fs::copy_file(root / "fig2b" / "transmission.csv", root / "measured.csv");

    std::ofstream(root / "hybrid.ini")
        << "[scenario]\nname = hybrid\n[pulse]\nkind = amg\nt0_us = 6.5\ndepth = 1\nmod_khz = 700\n"
           "[channel]\nmedium = calibrated\ntransmission_file = measured.csv\nphase = model\n"
           "[compensation]\nsource = measured\n";
    const Scenario s = load_scenario(root / "hybrid.ini");
    CHECK(s.name == "hybrid");
    const ScenarioReport hybrid = run_scenario(s, root);
    const ScenarioReport model = run_scenario(builtin_scenario("fig2b"), root / "again");
    // The table samples the model on the same lattice, so the runs agree.
    CHECK(hybrid.output.delay == doctest::Approx(model.output.delay).epsilon(1e-9));
    CHECK(hybrid.recovered.delay == doctest::Approx(model.recovered.delay).epsilon(1e-9));

    std::ofstream(root / "bad.ini") << "[pulse]\nkind = gaussian\nt0_us = 6.5\n"
                                       "[channel]\nmedium = none\ntransmission_file = measured.csv\n";
    CHECK_THROWS_AS(load_scenario(root / "bad.ini"), Error);
}
