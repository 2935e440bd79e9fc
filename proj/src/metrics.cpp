#include "mvfill/metrics.hpp"

#include <algorithm>
#include <numbers>

#include "mvfill/viasim.hpp"

namespace mvfill {

std::string_view to_string(Outcome outcome)
{
    switch (outcome) {
    case Outcome::Filled: return "FILLED";
    case Outcome::Underfilled: return "UNDERFILLED";
    case Outcome::Voided: return "VOIDED";
    case Outcome::SeedStarved: return "SEED_STARVED";
    }
    return "?";
}

std::optional<double> throwing_power(const SimResult& result)
{
    const auto& g = result.geometry;
    const auto& r = result.final_state.radius;
    const int deepest = g.deepest_seeded_cell();
    if (r.empty() || deepest < 0) return std::nullopt;
    const double mouth = g.radius - r.front();
    if (!(mouth > 0.0)) return std::nullopt;
    return (g.radius - r[static_cast<std::size_t>(deepest)]) / mouth;
}

double fill_fraction(const SimState& state, const ViaGeometry& geometry)
{
    const double r0 = geometry.radius;
    // Four partial sums break the add dependency chain on the hot path.
    const auto& r = state.radius;
    double part[4] = {0.0, 0.0, 0.0, 0.0};
    std::size_t i = 0;
    for (; i + 4 <= r.size(); i += 4) {
        for (std::size_t k = 0; k < 4; ++k) part[k] += r[i + k] * r[i + k];
    }
    for (; i < r.size(); ++i) part[0] += r[i] * r[i];
    const double open_area = (part[0] + part[1]) + (part[2] + part[3]);
    const double cells = static_cast<double>(state.radius.size());
    const double deposited = std::numbers::pi * (r0 * r0 * cells - open_area) * geometry.cell_size()
                             + state.bottom_volume;
    const double initial = std::numbers::pi * r0 * r0 * geometry.depth;
    return std::clamp(deposited / initial, 0.0, 1.0);
}

double mean_deposition_rate(const SimResult& result)
{
    const auto& s = result.final_state;
    if (s.radius.empty() || !(s.t > 0.0)) return 0.0;
    const double thickness = result.geometry.radius - s.radius.front();
    return thickness / s.t * 1.0e6 * 3600.0;
}

MetricsReport evaluate_metrics(const SimResult& result)
{
    MetricsReport m;
    m.throwing_power = throwing_power(result);
    m.fill_fraction = fill_fraction(result.final_state, result.geometry);
    m.mean_rate_um_h = mean_deposition_rate(result);
    m.fill_time = result.fill_time;
    m.outcome = result.outcome;
    m.bottom_thickness_um = result.final_state.bottom_thickness * 1.0e6;
    return m;
}

AspectRatioLadder max_fillable_aspect_ratio(std::span<const SimResult> results)
{
    std::vector<std::pair<double, bool>> rungs;
    rungs.reserve(results.size());
    for (const auto& r : results) {
        rungs.emplace_back(r.geometry.aspect_ratio(), r.outcome == Outcome::Filled);
    }
    std::sort(rungs.begin(), rungs.end());

    AspectRatioLadder ladder;
    bool failed_below = false;
    for (const auto& [ratio, filled] : rungs) {
        if (filled) {
            ladder.max_filled = ratio;
            if (failed_below) ladder.non_monotone = true;
        } else {
            failed_below = true;
        }
    }
    return ladder;
}

}  // namespace mvfill
