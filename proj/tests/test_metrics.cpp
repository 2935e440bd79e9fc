#include "doctest.h"

#include <vector>

#include "mvfill/metrics.hpp"
#include "mvfill/viasim.hpp"

using namespace mvfill;

namespace {

SimResult result_with(const ViaGeometry& g, double radius, double t)
{
    SimResult r;
    r.geometry = g;
    r.final_state = SimState::initial(g);
    std::fill(r.final_state.radius.begin(), r.final_state.radius.end(), radius);
    r.final_state.t = t;
    return r;
}

SimResult rung(double aspect, Outcome outcome)
{
    SimResult r;
    r.geometry.radius = 50e-6;
    r.geometry.depth = aspect * 100e-6;
    r.outcome = outcome;
    return r;
}

}  // namespace

TEST_CASE("outcome tokens")
{
    CHECK(to_string(Outcome::Filled) == "FILLED");
    CHECK(to_string(Outcome::Underfilled) == "UNDERFILLED");
    CHECK(to_string(Outcome::Voided) == "VOIDED");
    CHECK(to_string(Outcome::SeedStarved) == "SEED_STARVED");
}

TEST_CASE("throwing power")
{
    ViaGeometry g;
    auto uniform = result_with(g, 40e-6, 100.0);
    CHECK(throwing_power(uniform) == doctest::Approx(1.0));

    auto fresh = result_with(g, g.radius, 100.0);
    CHECK_FALSE(throwing_power(fresh).has_value());

    auto graded = result_with(g, 40e-6, 100.0);
    graded.final_state.radius.back() = 45e-6;
    CHECK(*throwing_power(graded) == doctest::Approx(0.5));

    // measured at the deepest seeded cell
    g.seed_coverage = 0.5;
    auto seeded = result_with(g, 40e-6, 100.0);
    seeded.final_state.radius[99] = 30e-6;
    CHECK(*throwing_power(seeded) == doctest::Approx(2.0));
}

TEST_CASE("fill fraction")
{
    ViaGeometry g;
    CHECK(fill_fraction(SimState::initial(g), g) == 0.0);

    auto half = SimState::initial(g);
    std::fill(half.radius.begin(), half.radius.end(), g.radius / 2);
    CHECK(fill_fraction(half, g) == doctest::Approx(0.75).epsilon(1e-14));

    auto closed = SimState::initial(g);
    std::fill(closed.radius.begin(), closed.radius.end(), 0.0);
    CHECK(fill_fraction(closed, g) == doctest::Approx(1.0).epsilon(1e-14));

    auto bottom = SimState::initial(g);
    bottom.bottom_volume = 0.1 * std::numbers::pi * g.radius * g.radius * g.depth;
    CHECK(fill_fraction(bottom, g) == doctest::Approx(0.1));

    auto over = closed;
    over.bottom_volume = 1e-12;
    CHECK(fill_fraction(over, g) == 1.0);
}

TEST_CASE("mean deposition rate")
{
    ViaGeometry g;
    CHECK(mean_deposition_rate(result_with(g, g.radius, 3600.0)) == 0.0);
    CHECK(mean_deposition_rate(result_with(g, g.radius, 0.0)) == 0.0);

    Electrolyte e;
    const double v = faraday_velocity(e, 100.0);
    const auto hour = result_with(g, g.radius - v * 3600.0, 3600.0);
    CHECK(mean_deposition_rate(hour) == doctest::Approx(13.231794710050243).epsilon(1e-9));
    CHECK(mean_deposition_rate(hour) == doctest::Approx(13.23).epsilon(2e-2));
}

TEST_CASE("mean deposition rate is linear in current at low fill")
{
    SimConfig cfg;
    cfg.field.power = 125.0;
    cfg.field.kappa = 20.0;
    cfg.t_end = 150.0;
    double per_amp = 0.0;
    for (double i : {50.0, 100.0, 200.0}) {
        cfg.waveform = Waveform::dc(i);
        const auto r = run_simulation(cfg);
        CHECK(r.metrics.fill_fraction <= 0.05);
        const double rate = r.metrics.mean_rate_um_h / i;
        if (per_amp == 0.0) per_amp = rate;
        CHECK(rate == doctest::Approx(per_amp).epsilon(2e-2));
    }
}

TEST_CASE("evaluate metrics")
{
    ViaGeometry g;
    auto r = result_with(g, 40e-6, 1800.0);
    r.outcome = Outcome::Filled;
    r.fill_time = 1800.0;
    r.final_state.bottom_thickness = 3e-6;
    const auto m = evaluate_metrics(r);
    CHECK(m.outcome == Outcome::Filled);
    CHECK(*m.fill_time == 1800.0);
    CHECK(m.bottom_thickness_um == doctest::Approx(3.0));
    CHECK(m.fill_fraction == doctest::Approx(1.0 - 0.64));
    CHECK(*m.throwing_power == doctest::Approx(1.0));
}

TEST_CASE("aspect ratio ladder")
{
    std::vector<SimResult> ladder{rung(1.0, Outcome::Filled), rung(2.0, Outcome::Filled),
                                  rung(3.0, Outcome::SeedStarved)};
    auto out = max_fillable_aspect_ratio(ladder);
    CHECK(*out.max_filled == doctest::Approx(2.0));
    CHECK_FALSE(out.non_monotone);

    std::vector<SimResult> failed{rung(1.0, Outcome::Voided), rung(2.0, Outcome::Underfilled)};
    CHECK_FALSE(max_fillable_aspect_ratio(failed).max_filled.has_value());

    std::vector<SimResult> single{rung(1.0, Outcome::Filled)};
    CHECK(*max_fillable_aspect_ratio(single).max_filled == doctest::Approx(1.0));

    std::vector<SimResult> gap{rung(3.0, Outcome::Filled), rung(1.0, Outcome::Filled), rung(2.0, Outcome::Voided)};
    out = max_fillable_aspect_ratio(gap);
    CHECK(*out.max_filled == doctest::Approx(3.0));
    CHECK(out.non_monotone);

    CHECK_FALSE(max_fillable_aspect_ratio({}).max_filled.has_value());
}
