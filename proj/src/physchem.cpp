#include "mvfill/physchem.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mvfill {

namespace {

void require(bool ok, const char* field, const char* rule)
{
    if (!ok) {
        throw std::invalid_argument(std::string("electrolyte.") + field + ": must satisfy " + rule);
    }
}

}  // namespace

void check(const Electrolyte& elec)
{
    require(elec.c_bulk > 0.0, "c_bulk", "> 0");
    require(elec.diffusivity > 0.0, "diffusivity", "> 0");
    require(elec.viscosity > 0.0, "viscosity", "> 0");
    require(elec.charge >= 1, "charge", ">= 1");
    require(elec.gamma > 0.0, "gamma", "> 0");
    require(elec.temperature > 0.0, "temperature", "> 0");
    require(elec.molar_mass > 0.0, "molar_mass", "> 0");
    require(elec.density > 0.0, "density", "> 0");
    require(elec.i0 >= 0.0, "i0", ">= 0");
    require(elec.alpha > 0.0 && elec.alpha < 1.0, "alpha", "0 < alpha < 1");
}

double nernst_potential(const Electrolyte& elec, double a_ox, double a_red)
{
    if (!(a_ox > 0.0) || !(a_red > 0.0)) {
        throw std::domain_error("nernst_potential: activities must be positive");
    }
    const double thermal = PhysicalConstants::R * elec.temperature / (elec.charge * PhysicalConstants::F);
    return elec.e0 + thermal * std::log(a_ox / a_red);
}

double ionic_activity(const Electrolyte& elec, double concentration)
{
    if (!(concentration >= 0.0)) {
        throw std::domain_error("ionic_activity: concentration must be non-negative");
    }
    return elec.gamma * concentration;
}

double limiting_current_density(const Electrolyte& elec, double delta)
{
    if (!(delta > 0.0)) {
        throw std::domain_error("limiting_current_density: boundary layer thickness must be positive");
    }
    return elec.charge * PhysicalConstants::F * elec.diffusivity * elec.c_bulk / delta;
}

double faraday_velocity(const Electrolyte& elec, double current_density)
{
    return current_density * elec.molar_mass / (elec.charge * PhysicalConstants::F * elec.density);
}

double wall_rate_constant(const Electrolyte& elec, double kinetic_current)
{
    return kinetic_current / (elec.charge * PhysicalConstants::F * elec.c_bulk);
}

double butler_volmer_kinetic_current(const Electrolyte& elec, double eta)
{
    if (eta > 0.0) {
        throw std::domain_error("butler_volmer_kinetic_current: anodic overpotential not supported");
    }
    const double exponent = -elec.alpha * elec.charge * PhysicalConstants::F * eta
                            / (PhysicalConstants::R * elec.temperature);
    return elec.i0 * std::exp(exponent);
}

}  // namespace mvfill
