#include "doctest.h"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

#include "mvfill/waveform.hpp"

using namespace mvfill;

namespace {

bool has(const std::vector<std::string>& messages, const std::string& needle)
{
    return std::ranges::any_of(messages, [&](const std::string& m) { return m.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("kind tokens")
{
    for (auto k : {WaveformKind::DC, WaveformKind::PP, WaveformKind::RP}) {
        CHECK(parse_waveform_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_waveform_kind("dc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_waveform_kind(""), std::invalid_argument);
}

TEST_CASE("instantaneous current")
{
    CHECK(instantaneous_current(Waveform::dc(300.0), 12345.6) == 300.0);

    const auto pp = Waveform::pulsed(300.0, 0.010, 0.010);
    CHECK(instantaneous_current(pp, 0.015) == 0.0);
    CHECK(instantaneous_current(pp, 0.005) == 300.0);
    CHECK(instantaneous_current(pp, 1.005) == 300.0);

    const auto rp = Waveform::reverse_pulsed(300.0, 0.020, 900.0, 0.001);
    CHECK(instantaneous_current(rp, 0.0205) == -900.0);
    CHECK(instantaneous_current(rp, 0.0100) == 300.0);
}

TEST_CASE("mean current")
{
    CHECK(mean_current(Waveform::dc(300.0)) == 300.0);
    CHECK(mean_current(Waveform::pulsed(300.0, 0.01, 0.01)) == doctest::Approx(150.0).epsilon(1e-14));
    CHECK(mean_current(Waveform::reverse_pulsed(300.0, 0.020, 900.0, 0.001)) ==
          doctest::Approx(242.85714285714286).epsilon(1e-12));
}

TEST_CASE("mean current equals the time average over a period")
{
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        Waveform w = u(rng) < 0.5 ? Waveform::pulsed(100.0 + 500.0 * u(rng), 0.001 + u(rng), 0.001 + u(rng))
                                  : Waveform::reverse_pulsed(100.0 + 500.0 * u(rng), 0.001 + u(rng),
                                                             1000.0 * u(rng) + 1.0, 0.001 + 0.2 * u(rng));
        const int samples = 200000;
        const double dt = w.period() / samples;
        double sum = 0.0;
        for (int i = 0; i < samples; ++i) sum += instantaneous_current(w, (i + 0.5) * dt);
        CHECK(sum / samples == doctest::Approx(mean_current(w)).epsilon(2e-3).scale(1000.0));
    }
}

TEST_CASE("segments")
{
    const auto dc = segments(Waveform::dc(300.0));
    REQUIRE(dc.size() == 1);
    CHECK(dc[0].kind == SegmentKind::Forward);

    const auto pp = segments(Waveform::pulsed(300.0, 0.01, 0.02));
    REQUIRE(pp.size() == 2);
    CHECK(pp[1].kind == SegmentKind::Off);
    CHECK(pp[1].duration == 0.02);
    CHECK(pp[1].current == 0.0);

    const auto rp = segments(Waveform::reverse_pulsed(300.0, 0.02, 900.0, 0.001));
    REQUIRE(rp.size() == 2);
    CHECK(rp[1].kind == SegmentKind::Reverse);
    CHECK(rp[1].current == -900.0);
}

TEST_CASE("validation")
{
    CHECK(validate_waveform(Waveform::dc(300.0)).ok());
    CHECK(validate_waveform(Waveform::dc(300.0)).warnings.empty());

    const auto pp = validate_waveform(Waveform::pulsed(300.0, 0.01, 0.0));
    CHECK_FALSE(pp.ok());
    CHECK(has(pp.errors, "PP requires t_off > 0"));

    const auto rp = validate_waveform(Waveform::reverse_pulsed(300.0, 0.01, 3000.0, 0.001));
    CHECK(rp.ok());
    CHECK(has(rp.warnings, "net dissolution"));

    const auto rp_ok = validate_waveform(Waveform::reverse_pulsed(300.0, 0.02, 900.0, 0.001));
    CHECK(rp_ok.ok());
    CHECK(rp_ok.warnings.empty());

    CHECK_FALSE(validate_waveform(Waveform::dc(-1.0)).ok());
    CHECK_FALSE(validate_waveform(Waveform::reverse_pulsed(300.0, 0.02, 0.0, 0.001)).ok());
}

TEST_CASE("schedules repeat every period")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::vector<Waveform> shapes{Waveform::dc(300.0), Waveform::pulsed(300.0, 0.01, 0.01),
                                       Waveform::reverse_pulsed(300.0, 0.02, 900.0, 0.001)};
    for (const auto& w : shapes) {
        for (int trial = 0; trial < 1000; ++trial) {
            const double t = 100.0 * u(rng);
            for (int k : {1, 7, 250}) CHECK(instantaneous_current(w, t + k * w.period()) == instantaneous_current(w, t));
        }
    }
}

TEST_CASE("mean current equals the segment integral")
{
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 500; ++trial) {
        const Waveform w = trial % 2 ? Waveform::pulsed(1000.0 * u(rng) + 1.0, u(rng) + 1e-4, u(rng) + 1e-4)
                                     : Waveform::reverse_pulsed(1000.0 * u(rng) + 1.0, u(rng) + 1e-4,
                                                                3000.0 * u(rng) + 1.0, u(rng) + 1e-4);
        double integral = 0.0;
        for (const auto& s : segments(w)) integral += s.current * s.duration;
        CHECK(mean_current(w) == doctest::Approx(integral / w.period()).epsilon(1e-12).scale(w.i_forward));
    }
}
