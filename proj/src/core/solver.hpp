#pragma once

#include <complex>
#include <vector>

#include "core/liouville.hpp"
#include "core/problem.hpp"

// One-way scattering off an attractive well. The physical boundary condition
// is a purely infalling wave on the cliff side (the atom that reaches the
// surface never returns); integrating that condition outward and splitting
// the far field into incoming and outgoing waves yields the reflection and
// transmission amplitudes.
//
// Channel waves use WKB-flux normalization w_pm = F^{-1/4} exp(±i phi), whose
// Wronskian-based flux is independent of position, so |r|^2 + |t|^2 = 1 holds
// exactly for the true solution and the numerical unitarity defect measures
// integration error alone.
namespace qr {

struct SolverConfig {
    double rel_tol = 1e-11;
    double abs_tol = 1e-30;
    // Auto-placement: the inner matching point goes where |kappa ell Q| drops
    // below this threshold on the cliff side, the outer one where both
    // |kappa ell Q| and |V|/E do so on the far side.
    double badlands_threshold = 1e-6;
    // Explicit matching points (a0); values > 0 bypass auto-placement.
    double z_inner = 0;
    double z_outer = 0;
    std::size_t max_steps = 2'000'000;

    void validate() const;
};

struct ScatteringAmplitudes {
    std::complex<double> r, t;
    double big_r = 0, big_t = 0;   // |r|^2 and |t|^2
    double unitarity_defect = 0;   // |R + T - 1|
    double wronskian_drift = 0;    // max relative drift of W(psi*, psi)
    double z_inner = 0, z_outer = 0;
    std::size_t steps = 0;
};

// Wronskian psi1 psi2' - psi1' psi2 of two complex solutions at one point.
std::complex<double> wronskian(std::complex<double> psi1, std::complex<double> dpsi1,
                               std::complex<double> psi2, std::complex<double> dpsi2);

// Matching points actually used for a given configuration.
std::pair<double, double> matching_points(const ScatteringProblem& problem,
                                          const SolverConfig& config);

ScatteringAmplitudes solve_one_way(const ScatteringProblem& problem,
                                   const SolverConfig& config = {});

struct ScanRow {
    double kappa = 0;
    double kappa_ell = 0;
    double big_r = 0;
    double big_t = 0;
    double unitarity_defect = 0;
    double wronskian_drift = 0;
};

// Independent solves per kappa; `threads` > 1 distributes rows over a worker
// pool. Row order and values are identical for any thread count.
std::vector<ScanRow> reflection_scan(const PotentialPtr& potential, units::Particle particle,
                                     const std::vector<double>& kappas,
                                     const SolverConfig& config = {}, int threads = 1);

// Low-energy reflection obeys R -> 1 - 4 kappa b as kappa -> 0. The fit runs
// on y = (1 - R)/(4 kappa) as a linear function of kappa and reports the
// intercept b; only rows with kappa * b_est < 1e-2 enter, and at least four
// such rows are required.
struct BFit {
    double b = 0;         // intercept, a0
    double slope = 0;     // d y / d kappa at kappa -> 0
    double residual = 0;  // rms of fit residuals relative to b
    int points_used = 0;
    double kappa_min = 0, kappa_max = 0; // window of rows used
};

BFit extract_b(const std::vector<ScanRow>& scan);

// Solves the problem twice: once as given and once after the Liouville map
// (transformed equation, transformed boundary data), mapping the final state
// back before the far-field split. Exact invariance means r = rt and t = tt
// up to integration error.
struct GaugeCheck {
    std::complex<double> r, t;   // original
    std::complex<double> rt, tt; // through the transformed frame
    double dr = 0, dt = 0;       // |r - rt|, |t - tt|
    double z_inner = 0, z_outer = 0;
};

GaugeCheck check_gauge_invariance(const ScatteringProblem& problem, const LiouvilleMap& map,
                                  const SolverConfig& config = {});

} // namespace qr
