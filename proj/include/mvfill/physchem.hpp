#pragma once

// Electrochemical primitives for the Cu2+/Cu couple: equilibrium potential,
// activity, transport-limited current, Faraday growth and the first-order
// wall kinetics closure.

namespace mvfill {

struct PhysicalConstants {
    static constexpr double R = 8.314462618;   // J/(mol K)
    static constexpr double F = 96485.33212;   // C/mol
};

struct Electrolyte {
    double c_bulk = 1200.0;        // mol/m^3 (300 g/l CuSO4.5H2O)
    double diffusivity = 5.0e-10;  // m^2/s
    double viscosity = 1.0e-6;     // kinematic, m^2/s
    int charge = 2;
    double gamma = 1.0;            // activity coefficient
    double temperature = 298.15;   // K
    double e0 = 0.337;             // V vs SHE
    double molar_mass = 0.06355;   // kg/mol
    double density = 8960.0;       // kg/m^3
    double i0 = 1.0;               // A/m^2
    double alpha = 0.5;

    bool operator==(const Electrolyte&) const = default;
};

/// Throws std::invalid_argument naming the first violated field.
void check(const Electrolyte& elec);

/// E = E0 + RT/(zF) ln(a_ox/a_red). Throws std::domain_error on non-positive activity.
double nernst_potential(const Electrolyte& elec, double a_ox, double a_red);

double ionic_activity(const Electrolyte& elec, double concentration);

/// z F D c_bulk / delta, in A/m^2.
double limiting_current_density(const Electrolyte& elec, double delta);

/// Signed deposit front velocity i M / (z F rho); negative i dissolves.
double faraday_velocity(const Electrolyte& elec, double current_density);

/// First-order wall rate constant k such that z F k c_bulk equals the kinetic-limit current.
double wall_rate_constant(const Electrolyte& elec, double kinetic_current);

/// Cathodic Butler-Volmer branch, eta <= 0.
double butler_volmer_kinetic_current(const Electrolyte& elec, double eta);

}  // namespace mvfill
