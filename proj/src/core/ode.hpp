#pragma once

#include <complex>
#include <cstddef>
#include <functional>

// Adaptive integration of the complex linear oscillator psi''(x) + F(x) psi = 0
// written as the first-order pair (psi, psi'). Embedded Dormand-Prince 5(4)
// pair with standard step-size control; F may vary by many orders of
// magnitude across the interval, which the controller absorbs through the
// step size.
namespace qr::ode {

using Cx = std::complex<double>;

struct WaveState {
    Cx psi;
    Cx dpsi;
};

struct IntegrationStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

// Called after every accepted step with the current position and state.
using Observer = std::function<void(double x, const WaveState&)>;

// Integrates from x0 to x1 (x1 > x0). Throws NumericError when the step
// budget is exhausted or the step size underflows.
WaveState integrate_wave(const std::function<double(double)>& F, double x0, double x1,
                         WaveState y0, double rel_tol, double abs_tol,
                         std::size_t max_steps, IntegrationStats* stats = nullptr,
                         const Observer& observer = {});

} // namespace qr::ode
