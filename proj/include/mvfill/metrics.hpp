#pragma once

#include <optional>
#include <span>
#include <string_view>

namespace mvfill {

enum class Outcome { Filled, Underfilled, Voided, SeedStarved };

/// "FILLED", "UNDERFILLED", "VOIDED", "SEED_STARVED".
std::string_view to_string(Outcome outcome);

struct MetricsReport {
    std::optional<double> throwing_power;  // bottom / mouth sidewall thickness
    double fill_fraction = 0.0;
    double mean_rate_um_h = 0.0;           // mouth sidewall growth rate
    std::optional<double> fill_time;       // s
    Outcome outcome = Outcome::Underfilled;
    double bottom_thickness_um = 0.0;
};

struct SimResult;
struct SimState;
struct ViaGeometry;

/// Sidewall thickness at the deepest seeded cell over sidewall thickness at the
/// mouth, at terminal state. Empty when the mouth carries no deposit.
std::optional<double> throwing_power(const SimResult& result);

/// Deposited volume (sidewalls plus bottom disc) over the initial via volume, clamped to [0, 1].
double fill_fraction(const SimState& state, const ViaGeometry& geometry);

/// Terminal mouth sidewall thickness over elapsed time, in um/h.
double mean_deposition_rate(const SimResult& result);

MetricsReport evaluate_metrics(const SimResult& result);

struct AspectRatioLadder {
    std::optional<double> max_filled;
    bool non_monotone = false;  // a FILLED rung sits above a failed one
};

/// Largest aspect ratio among FILLED results, taken from each result's geometry.
AspectRatioLadder max_fillable_aspect_ratio(std::span<const SimResult> results);

}  // namespace mvfill
