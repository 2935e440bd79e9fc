#include "mvfill/waveform.hpp"

#include <cmath>
#include <stdexcept>

namespace mvfill {

std::string_view to_string(WaveformKind kind)
{
    switch (kind) {
    case WaveformKind::DC: return "DC";
    case WaveformKind::PP: return "PP";
    case WaveformKind::RP: return "RP";
    }
    return "?";
}

WaveformKind parse_waveform_kind(std::string_view token)
{
    if (token == "DC") return WaveformKind::DC;
    if (token == "PP") return WaveformKind::PP;
    if (token == "RP") return WaveformKind::RP;
    throw std::invalid_argument("unknown waveform kind '" + std::string(token) + "' (expected DC, PP or RP)");
}

Waveform Waveform::dc(double i_forward)
{
    return Waveform{WaveformKind::DC, i_forward, 1.0, 0.0, 0.0, 0.0};
}

Waveform Waveform::pulsed(double i_forward, double t_on, double t_off)
{
    return Waveform{WaveformKind::PP, i_forward, t_on, t_off, 0.0, 0.0};
}

Waveform Waveform::reverse_pulsed(double i_forward, double t_forward, double i_reverse, double t_reverse)
{
    return Waveform{WaveformKind::RP, i_forward, t_forward, 0.0, i_reverse, t_reverse};
}

std::vector<Segment> segments(const Waveform& w)
{
    std::vector<Segment> out;
    out.push_back({SegmentKind::Forward, w.t_forward, w.i_forward});
    if (w.t_off > 0.0) {
        out.push_back({SegmentKind::Off, w.t_off, 0.0});
    }
    if (w.t_reverse > 0.0) {
        out.push_back({SegmentKind::Reverse, w.t_reverse, -w.i_reverse});
    }
    return out;
}

double instantaneous_current(const Waveform& w, double t)
{
    if (w.kind == WaveformKind::DC) {
        return w.i_forward;
    }
    const double tau = std::fmod(t, w.period());
    if (tau < w.t_forward) {
        return w.i_forward;
    }
    if (tau < w.t_forward + w.t_off) {
        return 0.0;
    }
    return -w.i_reverse;
}

double mean_current(const Waveform& w)
{
    if (w.kind == WaveformKind::DC) {
        return w.i_forward;
    }
    return (w.i_forward * w.t_forward - w.i_reverse * w.t_reverse) / w.period();
}

WaveformReport validate_waveform(const Waveform& w)
{
    WaveformReport report;
    auto fail = [&](std::string msg) { report.errors.push_back(std::move(msg)); };

    if (!(w.i_forward > 0.0)) fail("i_forward must be > 0");
    if (!(w.t_forward > 0.0)) fail("t_forward must be > 0");
    if (w.t_off < 0.0) fail("t_off must be >= 0");
    if (w.i_reverse < 0.0) fail("i_reverse must be >= 0");
    if (w.t_reverse < 0.0) fail("t_reverse must be >= 0");

    switch (w.kind) {
    case WaveformKind::DC:
        if (w.t_off != 0.0) fail("DC requires t_off = 0");
        if (w.t_reverse != 0.0) fail("DC requires t_reverse = 0");
        if (w.i_reverse != 0.0) fail("DC requires i_reverse = 0");
        break;
    case WaveformKind::PP:
        if (!(w.t_off > 0.0)) fail("PP requires t_off > 0");
        if (w.i_reverse != 0.0) fail("PP requires i_reverse = 0");
        if (w.t_reverse != 0.0) fail("PP requires t_reverse = 0");
        break;
    case WaveformKind::RP:
        if (!(w.t_reverse > 0.0)) fail("RP requires t_reverse > 0");
        if (!(w.i_reverse > 0.0)) fail("RP requires i_reverse > 0");
        break;
    }
    if (!(w.period() > 0.0)) fail("period must be > 0");

    if (report.ok() && mean_current(w) <= 0.0) {
        report.warnings.push_back("net dissolution: mean current <= 0");
    }
    return report;
}

}  // namespace mvfill
