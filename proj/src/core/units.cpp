#include "core/units.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace qr::units {

namespace {

// Factor taking one unit of `u` to hartree.
double to_hartree_factor(EnergyUnit u)
{
    switch (u) {
        case EnergyUnit::hartree: return 1.0;
        case EnergyUnit::neV: return 1e-9 / hartree_in_eV;
    }
    throw ConfigError("unknown energy unit");
}

double to_bohr_factor(LengthUnit u)
{
    switch (u) {
        case LengthUnit::bohr: return 1.0;
        case LengthUnit::nm: return 1.0 / bohr_in_nm;
    }
    throw ConfigError("unknown length unit");
}

} // namespace

double convert_energy(double value, EnergyUnit from, EnergyUnit to)
{
    if (from == to)
        return value;
    return value * to_hartree_factor(from) / to_hartree_factor(to);
}

double convert_length(double value, LengthUnit from, LengthUnit to)
{
    if (from == to)
        return value;
    return value * to_bohr_factor(from) / to_bohr_factor(to);
}

EnergyUnit parse_energy_unit(std::string_view name)
{
    if (name == "hartree")
        return EnergyUnit::hartree;
    if (name == "neV")
        return EnergyUnit::neV;
    throw ConfigError("unknown energy unit '" + std::string(name) + "' (expected 'hartree' or 'neV')");
}

LengthUnit parse_length_unit(std::string_view name)
{
    if (name == "a0")
        return LengthUnit::bohr;
    if (name == "nm")
        return LengthUnit::nm;
    throw ConfigError("unknown length unit '" + std::string(name) + "' (expected 'a0' or 'nm')");
}

const char* energy_unit_name(EnergyUnit u)
{
    return u == EnergyUnit::hartree ? "hartree" : "neV";
}

const char* length_unit_name(LengthUnit u)
{
    return u == LengthUnit::bohr ? "a0" : "nm";
}

double kappa_of_energy(const Particle& p, double energy_hartree)
{
    if (!(p.mass > 0))
        throw ConfigError("particle mass must be positive");
    if (!(energy_hartree >= 0))
        throw DomainError("kappa_of_energy requires E >= 0");
    return std::sqrt(2.0 * p.mass * energy_hartree);
}

double energy_of_kappa(const Particle& p, double kappa)
{
    if (!(p.mass > 0))
        throw ConfigError("particle mass must be positive");
    if (!(kappa >= 0))
        throw DomainError("energy_of_kappa requires kappa >= 0");
    return kappa * kappa / (2.0 * p.mass);
}

} // namespace qr::units
