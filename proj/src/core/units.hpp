#pragma once

#include <string_view>

// Unit handling. All internal computations run in Hartree atomic units
// (hbar = m_e = a0 = 1); these helpers convert at the API boundary only.
namespace qr::units {

// CODATA 2018 conversion factors, kept as exact decimal constants.
inline constexpr double hartree_in_eV = 27.211386245988; // 1 Eh in eV
inline constexpr double bohr_in_nm = 0.0529177210903;    // 1 a0 in nm
inline constexpr double amu_in_me = 1822.888486209;      // 1 u in electron masses

// Atomic hydrogen mass, 1.00782503 u, in electron masses. Callers that need a
// different isotope or species pass their own Particle instead.
inline constexpr double hydrogen_mass_amu = 1.00782503;
inline constexpr double hydrogen_mass_me = hydrogen_mass_amu * amu_in_me;

enum class EnergyUnit { hartree, neV };
enum class LengthUnit { bohr, nm };

double convert_energy(double value, EnergyUnit from, EnergyUnit to);
double convert_length(double value, LengthUnit from, LengthUnit to);

// Accepts "hartree" and "neV"; throws ConfigError otherwise.
EnergyUnit parse_energy_unit(std::string_view name);
// Accepts "a0" and "nm"; throws ConfigError otherwise.
LengthUnit parse_length_unit(std::string_view name);

const char* energy_unit_name(EnergyUnit u);
const char* length_unit_name(LengthUnit u);

struct Particle {
    double mass; // electron masses; must be positive
};

// kappa = sqrt(2 m E)/hbar in 1/a0; E in hartree, E >= 0 required.
double kappa_of_energy(const Particle& p, double energy_hartree);
// Inverse of the above: E = kappa^2/(2 m) in hartree.
double energy_of_kappa(const Particle& p, double kappa);

} // namespace qr::units
