#include "mvfill/calibration.hpp"

#include <cmath>
#include <cstdio>

namespace mvfill {

KappaCalibration calibrate_kappa(const SimConfig& base, double lo, double hi, double step, double tp_low,
                                 double tp_high)
{
    KappaCalibration cal;
    cal.tp_low = tp_low;
    cal.tp_high = tp_high;
    const int count = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (int i = 0; i < count; ++i) {
        SimConfig cfg = base;
        cfg.field.kappa = lo + i * step;
        cfg.field.profile = StreamingProfile::Uniform;
        cfg.field.angle_model = AngleModel::None;
        const auto r = run_simulation(cfg);
        cal.trials.push_back({cfg.field.kappa, r.outcome, r.metrics.throwing_power, r.metrics.fill_fraction});
    }

    const KappaTrial* best = nullptr;
    for (const auto& t : cal.trials) {
        const bool filled = t.outcome == Outcome::Filled;
        if (filled && t.throwing_power && *t.throwing_power >= tp_low && *t.throwing_power <= tp_high) {
            cal.kappa = t.kappa;
            cal.in_window = true;
            return cal;
        }
        if (filled && t.throwing_power && (!best || *t.throwing_power > *best->throwing_power)) best = &t;
    }
    cal.kappa = best ? best->kappa : cal.trials.back().kappa;
    return cal;
}

std::string calibration_file(const KappaCalibration& cal, const SimConfig& base)
{
    std::string out;
    char line[160];
    out += "# Streaming-enhancement calibration (mvfill_calibrate).\n";
    std::snprintf(line, sizeof line,
                  "# Scenario: r0 = %g um, L = %g um, %s %g A/m^2, P = %g W, f = %g Hz, UNIFORM, angle NONE.\n",
                  base.geometry.radius * 1e6, base.geometry.depth * 1e6, std::string(to_string(base.waveform.kind)).c_str(),
                  base.waveform.i_forward, base.field.power, base.field.frequency);
    out += line;
    std::snprintf(line, sizeof line, "# Target: FILLED with throwing power in [%g, %g].\n", cal.tp_low, cal.tp_high);
    out += line;
    out += "#\n#   kappa  outcome       fill_fraction  throwing_power\n";
    for (const auto& t : cal.trials) {
        std::snprintf(line, sizeof line, "#   %5.2f  %-12s  %.6f       %s\n", t.kappa, std::string(to_string(t.outcome)).c_str(),
                      t.fill_fraction, t.throwing_power ? std::to_string(*t.throwing_power).c_str() : "-");
        out += line;
    }
    out += "#\n";
    if (cal.in_window) {
        out += "# Selected: smallest kappa meeting the target.\n";
    } else {
        out += "# No kappa in the sweep meets the target. Selected: the FILLED trial with the\n"
               "# largest throwing power.\n";
    }
    std::snprintf(line, sizeof line, "\n[field]\nkappa = %g\n", cal.kappa);
    out += line;
    return out;
}

}  // namespace mvfill
