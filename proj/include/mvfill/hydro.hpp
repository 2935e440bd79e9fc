#pragma once

#include "mvfill/physchem.hpp"

namespace mvfill {

struct FlowConditions {
    double velocity = 0.1;   // free-stream U, m/s
    double distance = 0.01;  // distance from leading edge x, m

    bool operator==(const FlowConditions&) const = default;
};

enum class AngleModel { None, Cosine };
enum class StreamingProfile { Uniform, LinearDecay };

struct MegasonicField {
    double frequency = 1.0e6;  // Hz
    double power = 125.0;      // electrical W
    double angle_deg = 0.0;    // incidence, [0, 90)
    double kappa = 0.0;        // streaming enhancement coefficient
    double p_ref = 500.0;      // W
    AngleModel angle_model = AngleModel::None;
    StreamingProfile profile = StreamingProfile::Uniform;

    bool operator==(const MegasonicField&) const = default;
};

/// Below this frequency the acoustic layer model is not used (cavitating regime).
inline constexpr double kAcousticThresholdHz = 5.0e5;

void check(const FlowConditions& flow);
void check(const MegasonicField& field);

/// Laminar film 0.16 sqrt(nu x / U).
double hydrodynamic_delta(const Electrolyte& elec, const FlowConditions& flow);

/// Acoustic (Stokes) layer sqrt(2 nu / omega); independent of power and angle.
double acoustic_delta(const Electrolyte& elec, const MegasonicField& field);

/// Acoustic layer when the field is on (P > 0, f >= 500 kHz), hydrodynamic otherwise.
double effective_delta(const Electrolyte& elec, const MegasonicField& field, const FlowConditions& flow);

bool acoustic_regime(const MegasonicField& field);

/// Multiplier on in-via diffusivity at normalized depth xi in [0, 1].
double streaming_enhancement(const MegasonicField& field, double xi);

}  // namespace mvfill
