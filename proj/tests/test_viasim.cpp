#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "mvfill/viasim.hpp"

using namespace mvfill;

namespace {

constexpr double kPi = std::numbers::pi;

// AR 2:1 copper via with the streaming coefficient used by the shipped defaults.
SimConfig base_config(double power, double kappa = 20.0)
{
    SimConfig cfg;
    cfg.field.power = power;
    cfg.field.kappa = kappa;
    cfg.waveform = Waveform::dc(300.0);
    return cfg;
}

double deposited_volume(const SimState& s, const ViaGeometry& g)
{
    double v = s.bottom_volume;
    for (double r : s.radius) v += kPi * (g.radius * g.radius - r * r) * g.cell_size();
    return v;
}

double charge_volume(const SimState& s, const Electrolyte& e)
{
    return s.q_total * e.molar_mass / (e.charge * PhysicalConstants::F * e.density);
}

double charge_volume_error(const SimResult& r, const Electrolyte& e)
{
    const double v = deposited_volume(r.final_state, r.geometry);
    const double q = charge_volume(r.final_state, e);
    return std::abs(v - q) / q;
}

}  // namespace

TEST_CASE("geometry helpers")
{
    ViaGeometry g;
    CHECK(g.aspect_ratio() == 2.0);
    CHECK(g.cell_size() == doctest::Approx(1e-6));
    CHECK(g.deepest_seeded_cell() == 199);
    CHECK(g.bottom_seeded());
    g.seed_coverage = 0.5;
    CHECK(g.deepest_seeded_cell() == 99);
    CHECK(g.seeded(99));
    CHECK_FALSE(g.seeded(100));
    CHECK_FALSE(g.bottom_seeded());
}

TEST_CASE("configuration invariants")
{
    SimConfig cfg;
    CHECK_NOTHROW(check(cfg));
    auto bad = cfg;
    bad.geometry.seed_coverage = 0.0;
    CHECK_THROWS_AS(check(bad), std::invalid_argument);
    bad = cfg;
    bad.geometry.cells = 4;
    CHECK_THROWS_AS(check(bad), std::invalid_argument);
    bad = cfg;
    bad.waveform = Waveform::pulsed(300.0, 0.01, 0.0);
    CHECK_THROWS_WITH_AS(check(bad), doctest::Contains("PP requires t_off > 0"), std::invalid_argument);
    bad = cfg;
    bad.field.power = -5.0;
    CHECK_THROWS_AS(run_simulation(bad), std::invalid_argument);
}

TEST_CASE("concentration without a sink")
{
    const auto cfg = base_config(125.0);
    const auto solve = solve_concentration_profile(SimState::initial(cfg.geometry), cfg, 0.0);
    CHECK_FALSE(solve.pinched);
    CHECK(solve.open_cells == 200);
    for (double c : solve.conc) CHECK(c == 1.0);
    CHECK(solve.bottom_conc == 1.0);
}

TEST_CASE("concentration in a straight via follows the cosh shape")
{
    SimConfig cfg = base_config(0.0, 0.0);
    // every wall cell seeded, floor bare: inert bottom
    cfg.geometry.seed_coverage = 1.0 - 0.25 / cfg.geometry.cells;
    const double r = cfg.geometry.radius, L = cfg.geometry.depth, D = cfg.electrolyte.diffusivity;
    const double dx = cfg.geometry.cell_size();
    for (double k : {1e-5, 1e-6}) {
        const auto solve = solve_concentration_profile(SimState::initial(cfg.geometry), cfg, k);
        // c ~ cosh(m (L - x)) whatever the film, so the bottom/mouth cell ratio is exact
        const double m = std::sqrt(2.0 * k / (D * r));
        const double exact = std::cosh(m * dx / 2) / std::cosh(m * (L - dx / 2));
        const double ratio = solve.conc.back() / solve.conc.front();
        CAPTURE(k);
        CHECK(ratio == doctest::Approx(exact).epsilon(5e-3));
        CHECK(ratio == doctest::Approx(1.0 / std::cosh(m * L)).epsilon(2e-2));
        CHECK(solve.balance_error <= 1e-8);
    }
}

TEST_CASE("closed mouth is reported as pinched")
{
    const auto cfg = base_config(125.0);
    auto s = SimState::initial(cfg.geometry);
    s.radius[0] = 0.0;
    const auto solve = solve_concentration_profile(s, cfg, 1e-6);
    CHECK(solve.pinched);
    CHECK(solve.open_cells == 0);
    CHECK(open_cell_count(s, cfg) == 0);

    s.radius[0] = cfg.geometry.radius;
    s.radius[50] = 0.0;
    const auto partial = solve_concentration_profile(s, cfg, 1e-6);
    CHECK_FALSE(partial.pinched);
    CHECK(partial.open_cells == 50);
    CHECK(partial.conc[50] == 0.0);
    CHECK(partial.conc[199] == 0.0);
    CHECK(partial.bottom_conc == 0.0);
}

TEST_CASE("advance geometry")
{
    auto cfg = base_config(125.0);
    const auto fresh = SimState::initial(cfg.geometry);

    SUBCASE("idle leaves everything but time")
    {
        const auto next = advance_geometry(fresh, cfg, 12.5, 0.0);
        CHECK(next.t == 12.5);
        CHECK(next.radius == fresh.radius);
        CHECK(next.q_total == 0.0);
        CHECK(next.bottom_thickness == 0.0);
    }
    SUBCASE("uniform concentration grows conformally")
    {
        const auto next = advance_geometry(fresh, cfg, 100.0, 300.0);
        for (double r : next.radius) CHECK(r == next.radius[0]);
        CHECK(next.radius[0] < fresh.radius[0]);
    }
    SUBCASE("single cell, 100 A/m2 for 1000 s")
    {
        cfg.geometry.cells = 1;
        const auto one = SimState::initial(cfg.geometry);
        const auto next = advance_geometry(one, cfg, 1000.0, 100.0);
        CHECK(one.radius[0] - next.radius[0] == doctest::Approx(3.675498530569512e-06).epsilon(1e-12));
    }
    SUBCASE("dissolution never removes the substrate")
    {
        const auto next = advance_geometry(fresh, cfg, 10.0, -900.0);
        CHECK(next.radius == fresh.radius);
        CHECK(next.q_total == 0.0);
    }
    SUBCASE("dissolution removes deposit up to the original wall")
    {
        auto plated = advance_geometry(fresh, cfg, 100.0, 300.0);
        const auto back = advance_geometry(plated, cfg, 1000.0, -300.0);
        for (double r : back.radius) CHECK(r == doctest::Approx(cfg.geometry.radius).epsilon(1e-15));
        CHECK(back.bottom_thickness == doctest::Approx(0.0).scale(1e-12));
        CHECK(std::abs(back.q_total) <= 1e-9 * plated.q_total);
    }
    SUBCASE("clamped overshoot is logged")
    {
        auto s = fresh;
        s.radius[3] = 0.6e-6;  // just above the closure threshold
        const auto next = advance_geometry(s, cfg, 100.0, 300.0);
        CHECK(next.radius[3] == 0.0);
        CHECK(next.clamped_volume > 0.0);
    }
    SUBCASE("unseeded cells do not plate")
    {
        cfg.geometry.seed_coverage = 0.5;
        const auto next = advance_geometry(fresh, cfg, 100.0, 300.0);
        CHECK(next.radius[10] < fresh.radius[10]);
        CHECK(next.radius[150] == fresh.radius[150]);
        CHECK(next.bottom_thickness == 0.0);
    }
}

TEST_CASE("charge and volume agree step by step")
{
    auto cfg = base_config(125.0);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = SimState::initial(cfg.geometry);
        for (int step = 0; step < 200; ++step) {
            for (auto& c : s.conc) c = u(rng);
            s.bottom_conc = u(rng);
            const double current = u(rng) < 0.8 ? 300.0 : -900.0;
            advance_geometry_in_place(s, cfg, 5.0 * u(rng), current);
        }
        const double q = charge_volume(s, cfg.electrolyte);
        // clamped overshoot never carries charge, so it is logged apart from the balance
        CHECK(deposited_volume(s, cfg.geometry) == doctest::Approx(q).epsilon(1e-9));
    }
}

TEST_CASE("pinch detection")
{
    const auto cfg = base_config(125.0);
    auto s = SimState::initial(cfg.geometry);
    CHECK_FALSE(check_pinch_off(s, cfg).has_value());

    s.radius[0] = 0.0;
    s.t = 42.0;
    const auto pinch = check_pinch_off(s, cfg);
    REQUIRE(pinch.has_value());
    CHECK(pinch->cell == 0);
    CHECK(pinch->t == 42.0);

    std::fill(s.radius.begin(), s.radius.end(), 0.0);
    CHECK_FALSE(check_pinch_off(s, cfg).has_value());

    // closed above cells that are themselves nearly filled: not a void
    std::fill(s.radius.begin(), s.radius.end(), 0.1 * cfg.geometry.radius);
    s.radius[20] = 0.0;
    CHECK_FALSE(check_pinch_off(s, cfg).has_value());
}

TEST_CASE("tiny current underfills by Faraday bookkeeping")
{
    SimConfig cfg = base_config(125.0);
    cfg.waveform = Waveform::dc(1.0);
    cfg.t_end = 100.0;
    const auto result = run_simulation(cfg);
    CHECK(result.outcome == Outcome::Underfilled);
    const auto& g = cfg.geometry;
    const double v = faraday_velocity(cfg.electrolyte, 1.0);
    const double expected = v * cfg.t_end * (2.0 * kPi * g.radius * g.depth + kPi * g.radius * g.radius)
                            / (kPi * g.radius * g.radius * g.depth);
    CHECK(result.metrics.fill_fraction == doctest::Approx(expected).epsilon(1e-3));
    CHECK(result.snapshots.size() == static_cast<std::size_t>(cfg.snapshot_count));
    CHECK(result.snapshots.front().t == 0.0);
    CHECK(result.snapshots.back().t == cfg.t_end);
}

TEST_CASE("without megasonic the via does not fill")
{
    const auto cfg = base_config(0.0);
    const auto result = run_simulation(cfg);
    CHECK((result.outcome == Outcome::Voided || result.outcome == Outcome::Underfilled));
    REQUIRE(result.metrics.throwing_power.has_value());
    CHECK(*result.metrics.throwing_power < 0.2);
    CHECK(*result.metrics.throwing_power <= 1.0 + 1e-9);
    CHECK(result.diagnostics.max_balance_error <= 1e-8);
    CHECK(charge_volume_error(result, cfg.electrolyte) <= 5e-3);
    for (std::size_t j = 1; j < result.snapshots.size(); ++j) {
        SimState a, b;
        a.radius = result.snapshots[j - 1].radius;
        b.radius = result.snapshots[j].radius;
        CHECK(fill_fraction(b, cfg.geometry) >= fill_fraction(a, cfg.geometry));
    }
}

TEST_CASE("megasonic streaming fills the 2:1 via")
{
    const auto cfg = base_config(125.0);
    const auto result = run_simulation(cfg);
    CHECK(result.outcome == Outcome::Filled);
    REQUIRE(result.fill_time.has_value());
    CHECK(*result.fill_time < cfg.t_end);
    CHECK(result.metrics.fill_fraction >= cfg.fill_frac_target);
    CHECK(result.diagnostics.max_balance_error <= 1e-8);
    CHECK(charge_volume_error(result, cfg.electrolyte) <= 5e-3);
    // the profile is never superconformal under this transport model
    CHECK(*result.metrics.throwing_power <= 1.0 + 1e-9);

    SUBCASE("grid convergence")
    {
        auto fine = cfg;
        fine.geometry.cells = 400;
        const auto refined = run_simulation(fine);
        CHECK(refined.outcome == Outcome::Filled);
        CHECK(std::abs(refined.metrics.fill_fraction - result.metrics.fill_fraction)
              <= 2e-3 * result.metrics.fill_fraction);
    }
}

TEST_CASE("shallow seed starves the bottom")
{
    auto cfg = base_config(125.0);
    cfg.geometry.seed_coverage = 0.5;
    const auto result = run_simulation(cfg);
    CHECK(result.outcome == Outcome::SeedStarved);
    CHECK(result.final_state.radius.back() == cfg.geometry.radius);
    CHECK(result.final_state.bottom_thickness == 0.0);
}

TEST_CASE("pulsed schedules take at least ten steps per active segment")
{
    auto cfg = base_config(125.0);
    cfg.waveform = Waveform::pulsed(300.0, 0.5, 0.5);
    cfg.t_end = 10.0;
    const auto pp = run_simulation(cfg);
    // 10 forward periods, >= 10 steps each, plus one per off window
    CHECK(pp.diagnostics.steps >= 10 * 10 + 10);

    cfg.waveform = Waveform::reverse_pulsed(300.0, 0.8, 900.0, 0.2);
    const auto rp = run_simulation(cfg);
    CHECK(rp.diagnostics.steps >= 10 * 10 * 2);
    for (const auto& snap : rp.snapshots) {
        for (double r : snap.radius) CHECK(r <= cfg.geometry.radius);
    }
    CHECK(charge_volume_error(rp, cfg.electrolyte) <= 5e-3);
}

TEST_CASE("identical configurations give identical results")
{
    auto cfg = base_config(250.0);
    cfg.waveform = Waveform::reverse_pulsed(300.0, 0.02, 900.0, 0.001);
    cfg.t_end = 60.0;
    const auto a = run_simulation(cfg);
    const auto b = run_simulation(cfg);
    REQUIRE(a.snapshots.size() == b.snapshots.size());
    for (std::size_t j = 0; j < a.snapshots.size(); ++j) {
        CHECK(a.snapshots[j].t == b.snapshots[j].t);
        CHECK(a.snapshots[j].radius == b.snapshots[j].radius);
        CHECK(a.snapshots[j].conc == b.snapshots[j].conc);
    }
    CHECK(a.final_state.q_total == b.final_state.q_total);
}
