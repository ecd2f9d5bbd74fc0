#include "core/wkb.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <numbers>

#include "core/error.hpp"
#include "core/quadrature.hpp"

namespace qr {

double wkb_phase(const ScatteringProblem& problem, double z, double rel_tol)
{
    if (!(z > 0))
        throw DomainError("wkb_phase needs z > 0");
    const double kappa = problem.kappa();
    const double two_m = 2.0 * problem.particle().mass;
    // int_z^inf (sqrt(F(y)) - kappa) dy with y = 1/t; the integrand tends to
    // zero quadratically at t = 0 and the open Gauss rule never evaluates
    // the endpoint itself. sqrt(F) - kappa is expanded as
    // -2 m V / (sqrt(F) + kappa), which stays fully accurate where
    // |V| << E and the direct difference would cancel.
    auto integrand = [&problem, kappa, two_m](double t) {
        const double y = 1.0 / t;
        const double dk = -two_m * problem.potential().v(y) / (std::sqrt(problem.f(y)) + kappa);
        return dk / (t * t);
    };
    const double tail = quad::adaptive_gauss(integrand, 0.0, 1.0 / z, rel_tol, 0.0);
    return kappa * z - tail;
}

LiouvilleMap wkb_map(const ScatteringProblem& problem)
{
    const double s = std::sqrt(problem.kappa_ell());
    // Copy the problem so the map owns its own state.
    ScatteringProblem pr = problem;
    // Forward evaluations cluster tightly (ODE right-hand sides, inverse
    // iterations), so the tail integral is advanced from the last evaluated
    // point instead of recomputed from scratch. Copies share the cache. A
    // full recomputation on any long jump and every 64 hops keeps the
    // accumulated panel error at the level of the direct quadrature. Like
    // the rest of the gauge machinery, one instance is single-threaded.
    struct PhaseTail { double z = 0.0, tail = 0.0; int hops = -1; };
    auto cache = std::make_shared<PhaseTail>();
    auto f = [pr, s, cache](double z) {
        if (!(z > 0))
            throw DomainError("wkb_phase needs z > 0");
        const double kappa = pr.kappa();
        const double two_m = 2.0 * pr.particle().mass;
        auto integrand = [&pr, kappa, two_m](double t) {
            const double y = 1.0 / t;
            const double dk = -two_m * pr.potential().v(y) / (std::sqrt(pr.f(y)) + kappa);
            return dk / (t * t);
        };
        if (cache->hops >= 0 && cache->hops < 64 && z > 0.5 * cache->z && z < 2.0 * cache->z) {
            const double abs_tol = 1e-13 * (1.0 + std::abs(cache->tail));
            cache->tail += quad::adaptive_gauss(integrand, 1.0 / cache->z, 1.0 / z, 1e-13, abs_tol);
            ++cache->hops;
        } else {
            cache->tail = quad::adaptive_gauss(integrand, 0.0, 1.0 / z, 1e-13, 0.0);
            cache->hops = 0;
        }
        cache->z = z;
        return (kappa * z - cache->tail) / s;
    };
    auto f1 = [pr, s](double z) { return std::sqrt(pr.f(z)) / s; };
    auto f2 = [pr, s](double z) { return pr.df(z) / (2.0 * std::sqrt(pr.f(z))) / s; };
    auto f3 = [pr, s](double z) {
        const double F = pr.f(z);
        const double F1 = pr.df(z);
        const double rootF = std::sqrt(F);
        return (pr.d2f(z) / (2.0 * rootF) - F1 * F1 / (4.0 * F * rootF)) / s;
    };
    return LiouvilleMap(f, f1, f2, f3, 0.0, std::numeric_limits<double>::infinity());
}

GaugeProfile wkb_gauge(const ScatteringProblem& problem, const std::vector<double>& z_grid)
{
    GaugeProfile profile;
    profile.e_bold = problem.kappa_ell();
    profile.kappa_ell = profile.e_bold;
    profile.points.reserve(z_grid.size());
    const double s = std::sqrt(problem.kappa_ell());
    for (double z : z_grid) {
        GaugePoint p;
        p.z = z;
        p.z_bold = wkb_phase(problem, z) / s;
        p.v_bold = -problem.kappa_ell() * problem.badlands(z);
        profile.points.push_back(p);
    }
    return profile;
}

namespace {

// int_0^a sqrt(2 cosh 2v) dv for a >= 0, by 16-point Gauss-Legendre panels
// no wider than 0.25. The integrand is entire, so the panels are accurate to
// machine precision.
double universal_arc(double a)
{
    if (a == 0)
        return 0.0;
    const auto& rule = quad::gauss_legendre(16);
    const int n_panels = static_cast<int>(std::ceil(a / 0.25));
    const double h = a / n_panels;
    double total = 0;
    for (int p = 0; p < n_panels; ++p) {
        const double lo = p * h;
        const double mid = lo + 0.5 * h;
        double s = 0;
        for (int i = 0; i < rule.order(); ++i)
            s += rule.weights()[i] * std::sqrt(2.0 * std::cosh(2.0 * (mid + 0.5 * h * rule.nodes()[i])));
        total += s * 0.5 * h;
    }
    return total;
}

double universal_vbold_of_u(double u)
{
    const double c = std::cosh(2.0 * std::abs(u));
    return 5.0 / (8.0 * c * c * c);
}

} // namespace

double universal_zbold0()
{
    const double g = std::tgamma(0.75);
    return g * g / std::sqrt(std::numbers::pi);
}

std::vector<UniversalPoint> universal_curve(const std::vector<double>& u)
{
    const double z0 = universal_zbold0();
    std::vector<UniversalPoint> out;
    out.reserve(u.size());
    for (double ui : u) {
        UniversalPoint p;
        p.u = ui;
        const double arc = universal_arc(std::abs(ui));
        p.z_bold = ui >= 0 ? z0 + arc : z0 - arc;
        p.v_bold = universal_vbold_of_u(ui);
        out.push_back(p);
    }
    return out;
}

double universal_u_of_zbold(double z_bold)
{
    const double z0 = universal_zbold0();
    const double target = z_bold - z0;
    // zbold - zbold0 is odd in u; reduce to target >= 0.
    const double mag = std::abs(target);
    // For large u the arc grows like e^u, giving a log initial guess.
    double u = mag < 1.0 ? mag / std::sqrt(2.0) : std::log1p(mag);
    for (int it = 0; it < 80; ++it) {
        const double val = universal_arc(u) - mag;
        const double der = std::sqrt(2.0 * std::cosh(2.0 * u));
        const double du = val / der;
        u -= du;
        if (u < 0)
            u = 0;
        if (std::abs(du) < 1e-14 * std::max(1.0, u))
            return target >= 0 ? u : -u;
    }
    throw NumericError("universal curve inversion did not converge");
}

double universal_vbold_of_zbold(double z_bold)
{
    return universal_vbold_of_u(universal_u_of_zbold(z_bold));
}

} // namespace qr
