#include "mvfill/hydro.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mvfill {

namespace {

void require(bool ok, const char* what)
{
    if (!ok) {
        throw std::invalid_argument(what);
    }
}

}  // namespace

void check(const FlowConditions& flow)
{
    require(flow.velocity > 0.0, "flow.velocity: must satisfy > 0");
    require(flow.distance > 0.0, "flow.distance: must satisfy > 0");
}

void check(const MegasonicField& field)
{
    require(field.frequency > 0.0, "field.frequency: must satisfy > 0");
    require(field.power >= 0.0, "field.power: must satisfy >= 0");
    require(field.angle_deg >= 0.0 && field.angle_deg < 90.0, "field.angle: must satisfy 0 <= angle < 90");
    require(field.kappa >= 0.0, "field.kappa: must satisfy >= 0");
    require(field.p_ref > 0.0, "field.p_ref: must satisfy > 0");
}

double hydrodynamic_delta(const Electrolyte& elec, const FlowConditions& flow)
{
    // Printed with nu/(U x) under the root, which is dimensionless; nu x / U is
    // the laminar-layer form with units of length.
    return 0.16 * std::sqrt(elec.viscosity * flow.distance / flow.velocity);
}

double acoustic_delta(const Electrolyte& elec, const MegasonicField& field)
{
    const double omega = 2.0 * std::numbers::pi * field.frequency;
    return std::sqrt(2.0 * elec.viscosity / omega);
}

bool acoustic_regime(const MegasonicField& field)
{
    return field.power > 0.0 && field.frequency >= kAcousticThresholdHz;
}

double effective_delta(const Electrolyte& elec, const MegasonicField& field, const FlowConditions& flow)
{
    return acoustic_regime(field) ? acoustic_delta(elec, field) : hydrodynamic_delta(elec, flow);
}

double streaming_enhancement(const MegasonicField& field, double xi)
{
    if (!(xi >= 0.0 && xi <= 1.0)) {
        throw std::domain_error("streaming_enhancement: normalized depth outside [0, 1]");
    }
    if (field.power <= 0.0 || field.kappa <= 0.0) {
        return 1.0;
    }
    double p_eff = field.power;
    if (field.angle_model == AngleModel::Cosine) {
        p_eff *= std::cos(field.angle_deg * std::numbers::pi / 180.0);
    }
    const double base = 1.0 + field.kappa * std::sqrt(p_eff / field.p_ref);
    if (field.profile == StreamingProfile::Uniform) {
        return base;
    }
    return 1.0 + (base - 1.0) * (1.0 - xi);
}

}  // namespace mvfill
