#pragma once

#include "core/potential.hpp"
#include "core/units.hpp"

// One scattering configuration: particle + potential + energy, in atomic
// units. The wave equation solved downstream is psi''(z) + F(z) psi(z) = 0
// with F = 2 m (E - V); V < 0 and E > 0 keep F positive everywhere, so z = 0
// is a cliff rather than a classical turning point.
namespace qr {

class ScatteringProblem {
public:
    ScatteringProblem(PotentialPtr potential, units::Particle particle, double energy_hartree);

    static ScatteringProblem from_kappa(PotentialPtr potential, units::Particle particle,
                                        double kappa);

    const PotentialModel& potential() const { return *potential_; }
    PotentialPtr potential_ptr() const { return potential_; }
    units::Particle particle() const { return particle_; }

    double energy() const { return energy_; }       // hartree
    double kappa() const { return kappa_; }         // sqrt(2 m E), 1/a0
    double ell() const { return ell_; }             // sqrt(2 m C4), a0
    double kappa_ell() const { return kappa_ * ell_; }

    double f(double z) const;   // 2 m (E - V(z)) > 0
    double df(double z) const;  // -2 m V'(z)
    double d2f(double z) const; // -2 m V''(z)

    // Reduced de Broglie wavelength 1/k_dB = F^{-1/2}.
    double de_broglie(double z) const;

    // Dimensionless WKB quality factor
    //   Q = lambda^{3/2} (lambda^{1/2})'' = -F''/(4 F^2) + 5 F'^2/(16 F^3),
    // with lambda the reduced de Broglie wavelength. Q <= 0 in attractive
    // wells; the transformed wall potential downstream is Vbold = -kappa ell Q.
    double badlands(double z) const;

private:
    PotentialPtr potential_;
    units::Particle particle_;
    double energy_, kappa_, ell_;
};

} // namespace qr
