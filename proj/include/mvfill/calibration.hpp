#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mvfill/viasim.hpp"

namespace mvfill {

struct KappaTrial {
    double kappa;
    Outcome outcome;
    std::optional<double> throwing_power;
    double fill_fraction;
};

struct KappaCalibration {
    std::vector<KappaTrial> trials;
    double kappa = 0.0;        // selected value
    bool in_window = false;    // selected trial is FILLED with TP inside the target window
    double tp_low = 4.0;
    double tp_high = 6.0;
};

/// Sweeps kappa over [lo, hi] in `step` increments on `base` (UNIFORM profile,
/// no angle dependence). Picks the smallest kappa that fills with throwing power
/// inside [tp_low, tp_high]; failing that, the FILLED trial with the largest
/// throwing power; failing that, the largest kappa.
KappaCalibration calibrate_kappa(const SimConfig& base, double lo = 0.5, double hi = 20.0, double step = 0.5,
                                 double tp_low = 4.0, double tp_high = 6.0);

/// Calibration file body: a [field] section with the chosen kappa, the sweep
/// table as comments.
std::string calibration_file(const KappaCalibration& cal, const SimConfig& base);

}  // namespace mvfill
