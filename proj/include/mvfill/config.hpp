#pragma once

// Line-oriented run configuration:
//
//   # comment
//   [geometry]
//   radius_um = 50
//   depth_um = 200
//
// Sections: electrolyte, geometry, field, flow, waveform.DC, waveform.PP,
// waveform.RP, sim, doe. Every physical key carries its unit in the name.
// Missing keys keep their defaults; unknown sections or keys are errors.

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mvfill/doe.hpp"
#include "mvfill/viasim.hpp"

namespace mvfill {

/// Streaming coefficient chosen by the calibration sweep (see
/// calibration/kappa.cfg); the [field] default.
inline constexpr double kCalibratedKappa = 20.0;

class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, std::string key, const std::string& message);
    int line() const { return line_; }        // 0 when not tied to a line
    const std::string& key() const { return key_; }

private:
    int line_;
    std::string key_;
};

struct RunConfig {
    Electrolyte electrolyte;
    ViaGeometry geometry;
    MegasonicField field = default_field();
    FlowConditions flow;
    std::array<Waveform, 3> waveforms = default_waveforms();  // indexed by WaveformKind
    WaveformKind sim_waveform = WaveformKind::DC;
    double t_end = 14400.0;
    double dr_max_frac = 0.005;
    double c_tol = 1.0e-10;
    double r_close_frac = 0.01;
    double fill_frac_target = 0.98;
    int snapshots = 200;
    std::vector<WaveformKind> doe_waveforms{WaveformKind::DC, WaveformKind::PP, WaveformKind::RP};
    std::vector<double> doe_powers{0.0, 125.0, 250.0, 500.0};
    std::vector<double> doe_angles{0.0, 15.0, 30.0, 45.0};
    std::filesystem::path out_dir = ".";

    static MegasonicField default_field();
    static std::array<Waveform, 3> default_waveforms();
    const Waveform& waveform(WaveformKind kind) const { return waveforms[static_cast<std::size_t>(kind)]; }

    /// Single-run configuration using the waveform selected in [sim].
    SimConfig sim_config() const;
    DoeFactors doe_factors() const;

    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config_text(std::string_view text);
RunConfig parse_config(const std::filesystem::path& path);

/// Effective configuration in the input format; parses back to an equal RunConfig
/// (out_dir excepted).
std::string dump_config(const RunConfig& cfg);

}  // namespace mvfill
