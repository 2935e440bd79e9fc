#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mvfill {

enum class WaveformKind { DC, PP, RP };

std::string_view to_string(WaveformKind kind);
/// Accepts the exact tokens "DC", "PP", "RP"; throws std::invalid_argument otherwise.
WaveformKind parse_waveform_kind(std::string_view token);

/// Current densities are kinetic-limit values, i.e. the deposition current a
/// wall would carry at bulk concentration.
struct Waveform {
    WaveformKind kind = WaveformKind::DC;
    double i_forward = 300.0;  // A/m^2
    double t_forward = 1.0;    // s
    double t_off = 0.0;        // s, PP only
    double i_reverse = 0.0;    // A/m^2 magnitude, RP only
    double t_reverse = 0.0;    // s, RP only

    double period() const { return t_forward + t_off + t_reverse; }

    static Waveform dc(double i_forward);
    static Waveform pulsed(double i_forward, double t_on, double t_off);
    static Waveform reverse_pulsed(double i_forward, double t_forward, double i_reverse, double t_reverse);

    bool operator==(const Waveform&) const = default;
};

enum class SegmentKind { Forward, Off, Reverse };

struct Segment {
    SegmentKind kind;
    double duration;  // s
    double current;   // signed A/m^2
};

/// Non-empty segments of one period in schedule order.
std::vector<Segment> segments(const Waveform& w);

double instantaneous_current(const Waveform& w, double t);
double mean_current(const Waveform& w);

struct WaveformReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

WaveformReport validate_waveform(const Waveform& w);

}  // namespace mvfill
