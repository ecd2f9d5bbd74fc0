#include "core/ode.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"

namespace qr::ode {

namespace {

// Dormand-Prince RK5(4)7M coefficients. The fifth-order solution propagates;
// e[] are the coefficients of the embedded fourth-order error estimate.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct Deriv {
    Cx dpsi;  // psi'
    Cx ddpsi; // psi'' = -F psi
};

inline Deriv rhs(const std::function<double(double)>& F, double x, const WaveState& y)
{
    return {y.dpsi, -F(x) * y.psi};
}

inline double sq_abs(const Cx& v)
{
    return v.real() * v.real() + v.imag() * v.imag();
}

} // namespace

WaveState integrate_wave(const std::function<double(double)>& F, double x0, double x1,
                         WaveState y0, double rel_tol, double abs_tol,
                         std::size_t max_steps, IntegrationStats* stats,
                         const Observer& observer)
{
    if (!(x1 > x0))
        throw ConfigError("integrate_wave needs x1 > x0");
    if (!(rel_tol > 0) || !(rel_tol < 1e-2) || !(abs_tol > 0) || !(abs_tol < 1e-2))
        throw ConfigError("integration tolerances must lie in (0, 1e-2)");

    IntegrationStats local;
    IntegrationStats& st = stats ? *stats : local;

    WaveState y = y0;
    double x = x0;

    // First step from the local wavelength; the controller adapts from here.
    const double f0 = std::abs(F(x0));
    double h = 0.1 / std::max(std::sqrt(f0), 1.0 / (x1 - x0));
    h = std::min(h, x1 - x0);

    Deriv k1 = rhs(F, x, y);
    st.rhs_evals += 2; // F(x0) above plus k1

    while (x < x1) {
        if (st.accepted + st.rejected >= max_steps)
            throw NumericError("integrate_wave: step budget exhausted");
        if (!(h > std::abs(x) * 1e-15 + 1e-290))
            throw NumericError("integrate_wave: step size underflow");
        if (x + h > x1)
            h = x1 - x;

        auto stage = [&](double frac, const Cx& wp, const Cx& wd) {
            WaveState s{y.psi + h * wp, y.dpsi + h * wd};
            return rhs(F, x + frac * h, s);
        };
        const Deriv k2 = stage(c2, a21 * k1.dpsi, a21 * k1.ddpsi);
        const Deriv k3 = stage(c3, a31 * k1.dpsi + a32 * k2.dpsi, a31 * k1.ddpsi + a32 * k2.ddpsi);
        const Deriv k4 = stage(c4, a41 * k1.dpsi + a42 * k2.dpsi + a43 * k3.dpsi,
                               a41 * k1.ddpsi + a42 * k2.ddpsi + a43 * k3.ddpsi);
        const Deriv k5 = stage(c5, a51 * k1.dpsi + a52 * k2.dpsi + a53 * k3.dpsi + a54 * k4.dpsi,
                               a51 * k1.ddpsi + a52 * k2.ddpsi + a53 * k3.ddpsi + a54 * k4.ddpsi);
        const Deriv k6 = stage(1.0,
                               a61 * k1.dpsi + a62 * k2.dpsi + a63 * k3.dpsi + a64 * k4.dpsi
                                   + a65 * k5.dpsi,
                               a61 * k1.ddpsi + a62 * k2.ddpsi + a63 * k3.ddpsi + a64 * k4.ddpsi
                                   + a65 * k5.ddpsi);

        WaveState ynew{
            y.psi + h * (b1 * k1.dpsi + b3 * k3.dpsi + b4 * k4.dpsi + b5 * k5.dpsi + b6 * k6.dpsi),
            y.dpsi
                + h * (b1 * k1.ddpsi + b3 * k3.ddpsi + b4 * k4.ddpsi + b5 * k5.ddpsi
                       + b6 * k6.ddpsi)};
        const Deriv k7 = rhs(F, x + h, ynew); // FSAL
        st.rhs_evals += 6;

        const Cx err_psi = h
            * (e1 * k1.dpsi + e3 * k3.dpsi + e4 * k4.dpsi + e5 * k5.dpsi + e6 * k6.dpsi
               + e7 * k7.dpsi);
        const Cx err_dpsi = h
            * (e1 * k1.ddpsi + e3 * k3.ddpsi + e4 * k4.ddpsi + e5 * k5.ddpsi + e6 * k6.ddpsi
               + e7 * k7.ddpsi);

        const double sc_psi = abs_tol + rel_tol * std::sqrt(std::max(sq_abs(y.psi), sq_abs(ynew.psi)));
        const double sc_dpsi =
            abs_tol + rel_tol * std::sqrt(std::max(sq_abs(y.dpsi), sq_abs(ynew.dpsi)));
        const double err = std::sqrt(
            0.5 * (sq_abs(err_psi) / (sc_psi * sc_psi) + sq_abs(err_dpsi) / (sc_dpsi * sc_dpsi)));

        if (err <= 1.0) {
            x += h;
            y = ynew;
            k1 = k7;
            ++st.accepted;
            if (observer)
                observer(x, y);
        } else {
            ++st.rejected;
        }
        const double factor = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return y;
}

} // namespace qr::ode
