#pragma once

#include <vector>

#include "core/liouville.hpp"
#include "core/problem.hpp"

// WKB gauge: the distinguished Liouville coordinate in which a quantum-
// reflection well becomes a finite repulsive wall. With phi the WKB phase
// and s = sqrt(kappa ell),
//
//   zbold(z) = phi(z)/s,  Ebold = kappa ell,  Vbold(z) = -kappa ell Q(z),
//
// so the transformed equation reads psi'' + (Ebold - Vbold) psi = 0 in zbold
// with unit-scaled asymptotics on both sides.
namespace qr {

// phi(z) = kappa z - int_z^inf (k_dB - kappa) dy, so phi' = k_dB = sqrt(F)
// and phi(z) -> kappa z as z -> inf. The tail integral is evaluated after
// the substitution y -> 1/y, which turns the far -C4/z^4 falloff into a
// quadratic integrand near the origin.
double wkb_phase(const ScatteringProblem& problem, double z, double rel_tol = 1e-13);

// zbold(z) with closed-form first to third derivatives assembled from F,
// F', F''. Domain (0, inf); inverse by warm-started Newton.
LiouvilleMap wkb_map(const ScatteringProblem& problem);

struct GaugePoint {
    double z;      // original coordinate, a0
    double z_bold; // transformed coordinate, dimensionless
    double v_bold; // transformed potential, dimensionless
};

struct GaugeProfile {
    double e_bold;    // transformed energy = kappa ell
    double kappa_ell; // same value, kept explicit for serialization
    std::vector<GaugePoint> points;
};

GaugeProfile wkb_gauge(const ScatteringProblem& problem, const std::vector<double>& z_grid);

// Energy-independent shape of the transformed -C4/z^4 wall:
//   Vbold(u) = 5/(8 cosh^3 2u),
//   zbold(u) = zbold0 + int_0^u sqrt(2 cosh 2v) dv,
// where u = ln(z/z_peak) and zbold0 = Gamma(3/4)^2/sqrt(pi). Vbold is even in
// u and zbold - zbold0 is odd; both are enforced bit-exactly by evaluating at
// |u| and reflecting.
struct UniversalPoint {
    double u;
    double z_bold;
    double v_bold;
};

std::vector<UniversalPoint> universal_curve(const std::vector<double>& u);

double universal_zbold0(); // Gamma(3/4)^2 / sqrt(pi)

// Inversion of the monotone zbold(u) by Newton; used for overlap checks
// between computed gauge profiles and the universal shape.
double universal_u_of_zbold(double z_bold);
double universal_vbold_of_zbold(double z_bold);

} // namespace qr
