#include "core/problem.hpp"

#include <cmath>

#include "core/error.hpp"

namespace qr {

ScatteringProblem::ScatteringProblem(PotentialPtr potential, units::Particle particle,
                                     double energy_hartree)
    : potential_(std::move(potential)), particle_(particle), energy_(energy_hartree)
{
    if (!potential_)
        throw ConfigError("scattering problem needs a potential");
    if (!(particle_.mass > 0))
        throw ConfigError("particle mass must be positive");
    if (!(energy_ > 0))
        throw ConfigError("scattering energy must be positive");
    kappa_ = units::kappa_of_energy(particle_, energy_);
    ell_ = ell_from_c4(potential_->c4(), particle_.mass);
}

ScatteringProblem ScatteringProblem::from_kappa(PotentialPtr potential, units::Particle particle,
                                                double kappa)
{
    if (!(kappa > 0))
        throw ConfigError("kappa must be positive");
    return ScatteringProblem(std::move(potential), particle,
                             units::energy_of_kappa(particle, kappa));
}

double ScatteringProblem::f(double z) const
{
    return 2.0 * particle_.mass * (energy_ - potential_->v(z));
}

double ScatteringProblem::df(double z) const
{
    return -2.0 * particle_.mass * potential_->dv(z);
}

double ScatteringProblem::d2f(double z) const
{
    return -2.0 * particle_.mass * potential_->d2v(z);
}

double ScatteringProblem::de_broglie(double z) const
{
    return 1.0 / std::sqrt(f(z));
}

double ScatteringProblem::badlands(double z) const
{
    const double F = f(z);
    const double F1 = df(z);
    const double F2 = d2f(z);
    return -F2 / (4.0 * F * F) + 5.0 * F1 * F1 / (16.0 * F * F * F);
}

} // namespace qr
