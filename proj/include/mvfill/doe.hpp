#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mvfill/viasim.hpp"

namespace mvfill {

struct DoeFactors {
    std::vector<Waveform> waveforms;
    std::vector<double> powers{0.0, 125.0, 250.0, 500.0};   // W
    std::vector<double> angles{0.0, 15.0, 30.0, 45.0};      // degrees
    SimConfig base;

    /// DC, PP and RP at the default schedules.
    static std::vector<Waveform> default_waveforms();
};

void check(const DoeFactors& factors);

struct DoeRow {
    WaveformKind waveform;
    double power;
    double angle;
    std::string outcome;  // Outcome token, or "ERROR"
    std::string error;    // message when outcome is ERROR
    std::optional<double> fill_time;
    double fill_fraction = 0.0;
    std::optional<double> throwing_power;
    double mean_rate_um_h = 0.0;
};

struct DoeTable {
    std::vector<DoeRow> rows;  // sorted by (waveform, power, angle)
};

/// Runs every factor combination. Cells execute on up to `threads` workers
/// (0 picks the hardware concurrency); the row order never depends on it.
DoeTable run_full_factorial(const DoeFactors& factors, unsigned threads = 0);

struct DoeAggregate {
    int cells = 0;
    int filled = 0;
    double fill_success_rate = 0.0;
    std::optional<double> mean_throwing_power;  // over FILLED rows with a defined ratio
};

struct DoeSummary {
    std::map<WaveformKind, DoeAggregate> by_waveform;
    std::map<double, DoeAggregate> by_power;
    bool dc_sufficient = false;
    bool angle_invariant = false;
};

DoeSummary summarize(const DoeTable& table);

}  // namespace mvfill
