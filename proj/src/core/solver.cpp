#include "core/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "core/error.hpp"
#include "core/ode.hpp"
#include "core/wkb.hpp"

namespace qr {

using ode::Cx;
using ode::WaveState;

void SolverConfig::validate() const
{
    if (!(rel_tol > 0) || !(rel_tol < 1e-2))
        throw ConfigError("rel_tol must lie in (0, 1e-2)");
    if (!(abs_tol > 0) || !(abs_tol < 1e-2))
        throw ConfigError("abs_tol must lie in (0, 1e-2)");
    if (!(badlands_threshold > 0) || !(badlands_threshold < 1e-2))
        throw ConfigError("badlands_threshold must lie in (0, 1e-2)");
    const bool inner_set = z_inner > 0, outer_set = z_outer > 0;
    if (inner_set != outer_set)
        throw ConfigError("set both matching points explicitly or neither");
    if (inner_set && !(z_inner < z_outer))
        throw ConfigError("explicit matching points need z_inner < z_outer");
    if (max_steps == 0)
        throw ConfigError("max_steps must be positive");
}

std::complex<double> wronskian(std::complex<double> psi1, std::complex<double> dpsi1,
                               std::complex<double> psi2, std::complex<double> dpsi2)
{
    return psi1 * dpsi2 - dpsi1 * psi2;
}

namespace {

// WKB channel wave w_pm = F^{-1/4} exp(pm i phi) and its derivative at one
// point, from F, F' and the phase there.
struct ChannelBasis {
    Cx wm, dwm; // infalling (moving toward the wall)
    Cx wp, dwp; // outgoing
};

ChannelBasis channel_basis(const ScatteringProblem& pr, double z, double phi)
{
    const double F = pr.f(z);
    const double F1 = pr.df(z);
    const double amp = std::pow(F, -0.25);
    const double damp = -0.25 * F1 * std::pow(F, -1.25);
    const double root = std::sqrt(F); // amp * root = F^{1/4}
    const Cx em = std::polar(1.0, -phi);
    const Cx ep = std::polar(1.0, phi);
    ChannelBasis b;
    b.wm = amp * em;
    b.dwm = (Cx(damp, 0) - Cx(0, amp * root)) * em;
    b.wp = amp * ep;
    b.dwp = (Cx(damp, 0) + Cx(0, amp * root)) * ep;
    return b;
}

double abs_vbold(const ScatteringProblem& pr, double z)
{
    return std::abs(pr.kappa_ell() * pr.badlands(z));
}

// Peak of |kappa ell Q| on a coarse log grid around z0 = sqrt(ell/kappa);
// the auto-placement marches outward from here.
double badlands_peak(const ScatteringProblem& pr)
{
    const double z0 = std::sqrt(pr.ell() / pr.kappa());
    double best_z = z0, best = -1.0;
    constexpr int n = 241;
    for (int i = 0; i < n; ++i) {
        const double ex = -4.0 + 8.0 * i / (n - 1);
        const double z = z0 * std::pow(10.0, ex);
        const double val = abs_vbold(pr, z);
        if (val > best) {
            best = val;
            best_z = z;
        }
    }
    return best_z;
}

std::pair<double, double> auto_matching_points(const ScatteringProblem& pr, double threshold)
{
    const double z_peak = badlands_peak(pr);

    double z_in = z_peak;
    for (int i = 0; abs_vbold(pr, z_in) >= threshold; ++i) {
        if (i > 20000)
            throw NumericError("matching-point search stalled on the cliff side");
        z_in *= 0.85;
    }

    double z_out = z_peak;
    const double E = pr.energy();
    for (int i = 0;
         abs_vbold(pr, z_out) >= threshold || std::abs(pr.potential().v(z_out)) / E >= threshold;
         ++i) {
        if (i > 20000)
            throw NumericError("matching-point search stalled on the far side");
        z_out *= 1.2;
    }
    return {z_in, z_out};
}

struct RawSolution {
    WaveState state;   // at z_outer
    double drift = 0;  // max relative Wronskian drift
    std::size_t steps = 0;
};

// Integrates psi'' + F psi = 0 from x0 to x1 watching the conserved flux
// Wronskian W(psi*, psi) = 2i Im(conj(psi) psi').
RawSolution integrate_with_drift(const std::function<double(double)>& F, double x0, double x1,
                                 WaveState y0, const SolverConfig& cfg)
{
    RawSolution out;
    const double w0 = std::imag(std::conj(y0.psi) * y0.dpsi);
    double max_drift = 0;
    auto observer = [&max_drift, w0](double, const WaveState& y) {
        const double w = std::imag(std::conj(y.psi) * y.dpsi);
        max_drift = std::max(max_drift, std::abs(w - w0));
    };
    ode::IntegrationStats stats;
    out.state = ode::integrate_wave(F, x0, x1, y0, cfg.rel_tol, cfg.abs_tol, cfg.max_steps,
                                    &stats, observer);
    out.drift = std::abs(w0) > 0 ? max_drift / std::abs(w0) : max_drift;
    out.steps = stats.accepted;
    return out;
}

struct FarField {
    Cx r, t;
};

// Splits the state at z_outer into the channel basis: psi = c- w- + c+ w+.
// The infalling component c- is the incident amplitude, so r = c+/c- and
// t = 1/c- for a unit transmitted wave at the inner end.
FarField split_far_field(const ChannelBasis& b, const WaveState& y)
{
    const Cx two_i(0.0, 2.0);
    const Cx c_minus = wronskian(b.wp, b.dwp, y.psi, y.dpsi) / (-two_i);
    const Cx c_plus = wronskian(b.wm, b.dwm, y.psi, y.dpsi) / two_i;
    return {c_plus / c_minus, 1.0 / c_minus};
}

ScatteringAmplitudes amplitudes_from(const FarField& ff, const RawSolution& raw, double z_in,
                                     double z_out)
{
    ScatteringAmplitudes amp;
    amp.r = ff.r;
    amp.t = ff.t;
    amp.big_r = std::norm(ff.r);
    amp.big_t = std::norm(ff.t);
    amp.unitarity_defect = std::abs(amp.big_r + amp.big_t - 1.0);
    amp.wronskian_drift = raw.drift;
    amp.z_inner = z_in;
    amp.z_outer = z_out;
    amp.steps = raw.steps;
    return amp;
}

} // namespace

std::pair<double, double> matching_points(const ScatteringProblem& problem,
                                          const SolverConfig& config)
{
    config.validate();
    if (config.z_inner > 0)
        return {config.z_inner, config.z_outer};
    return auto_matching_points(problem, config.badlands_threshold);
}

ScatteringAmplitudes solve_one_way(const ScatteringProblem& problem, const SolverConfig& config)
{
    const auto [z_in, z_out] = matching_points(problem, config);

    const double phi_in = wkb_phase(problem, z_in);
    const double phi_out = wkb_phase(problem, z_out);

    // Unit-amplitude infalling channel wave at the inner matching point.
    const ChannelBasis inner = channel_basis(problem, z_in, phi_in);
    WaveState y0{inner.wm, inner.dwm};

    auto F = [&problem](double z) { return problem.f(z); };
    const RawSolution raw = integrate_with_drift(F, z_in, z_out, y0, config);

    const ChannelBasis outer = channel_basis(problem, z_out, phi_out);
    return amplitudes_from(split_far_field(outer, raw.state), raw, z_in, z_out);
}

std::vector<ScanRow> reflection_scan(const PotentialPtr& potential, units::Particle particle,
                                     const std::vector<double>& kappas,
                                     const SolverConfig& config, int threads)
{
    config.validate();
    if (!potential)
        throw ConfigError("reflection_scan needs a potential");
    for (double k : kappas)
        if (!(k > 0))
            throw ConfigError("reflection_scan: kappa values must be positive");
    if (threads < 1)
        threads = 1;

    std::vector<ScanRow> rows(kappas.size());
    auto run_row = [&](std::size_t i) {
        const auto problem = ScatteringProblem::from_kappa(potential, particle, kappas[i]);
        const auto amp = solve_one_way(problem, config);
        rows[i] = {problem.kappa(), problem.kappa_ell(), amp.big_r, amp.big_t,
                   amp.unitarity_defect, amp.wronskian_drift};
    };

    const std::size_t n = kappas.size();
    if (threads == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            run_row(i);
        return rows;
    }

    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n)
                return;
            try {
                run_row(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error)
                    first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const int n_workers = std::min<std::size_t>(threads, n);
    pool.reserve(n_workers);
    for (int i = 0; i < n_workers; ++i)
        pool.emplace_back(worker);
    for (auto& th : pool)
        th.join();
    if (first_error)
        std::rethrow_exception(first_error);
    return rows;
}

BFit extract_b(const std::vector<ScanRow>& scan)
{
    if (scan.size() < 4)
        throw NumericError("extract_b: need at least four scan rows");

    // First-pass estimate from the smallest kappa anchors the window cut.
    const auto* anchor = &scan.front();
    for (const auto& row : scan)
        if (row.kappa < anchor->kappa)
            anchor = &row;
    const double b_est = (1.0 - anchor->big_r) / (4.0 * anchor->kappa);
    if (!(b_est > 0))
        throw NumericError("extract_b: scan rows are not in the quantum-reflection regime");

    std::vector<std::pair<double, double>> pts; // (kappa, y)
    for (const auto& row : scan) {
        if (row.kappa * b_est < 1e-2)
            pts.push_back({row.kappa, (1.0 - row.big_r) / (4.0 * row.kappa)});
    }
    if (pts.size() < 4)
        throw NumericError("extract_b: need at least four rows with kappa*b < 1e-2; "
                           "rerun the scan with smaller kappa");

    // Linear least squares y = b + slope * kappa.
    double sk = 0, sy = 0, skk = 0, sky = 0;
    const double n = static_cast<double>(pts.size());
    for (const auto& [k, y] : pts) {
        sk += k;
        sy += y;
        skk += k * k;
        sky += k * y;
    }
    const double det = n * skk - sk * sk;
    if (det == 0)
        throw NumericError("extract_b: degenerate kappa grid");
    BFit fit;
    fit.slope = (n * sky - sk * sy) / det;
    fit.b = (sy - fit.slope * sk) / n;
    double ss = 0;
    fit.kappa_min = pts.front().first;
    fit.kappa_max = pts.front().first;
    for (const auto& [k, y] : pts) {
        const double resid = y - (fit.b + fit.slope * k);
        ss += resid * resid;
        fit.kappa_min = std::min(fit.kappa_min, k);
        fit.kappa_max = std::max(fit.kappa_max, k);
    }
    fit.residual = std::sqrt(ss / n) / std::abs(fit.b);
    fit.points_used = static_cast<int>(pts.size());
    return fit;
}

GaugeCheck check_gauge_invariance(const ScatteringProblem& problem, const LiouvilleMap& map,
                                  const SolverConfig& config)
{
    const auto [z_in, z_out] = matching_points(problem, config);
    map.require_increasing();
    if (!(map.lo() <= z_in) || !(map.hi() >= z_out))
        throw ConfigError("gauge check: map domain does not cover the integration interval");

    const double phi_in = wkb_phase(problem, z_in);
    const double phi_out = wkb_phase(problem, z_out);
    const ChannelBasis inner = channel_basis(problem, z_in, phi_in);
    const ChannelBasis outer = channel_basis(problem, z_out, phi_out);

    // Original frame.
    auto F = [&problem](double z) { return problem.f(z); };
    const RawSolution raw0 = integrate_with_drift(F, z_in, z_out, {inner.wm, inner.dwm}, config);
    const FarField ff0 = split_far_field(outer, raw0.state);

    // Transformed frame: psi_t = sqrt(f') psi, integrated in ztilde.
    const double zt_in = map(z_in);
    const double zt_out = map(z_out);
    if (!(zt_in < zt_out))
        throw ConfigError("gauge check: map image is not an increasing interval");

    const double d1_in = map.d1(z_in);
    const double d2_in = map.d2(z_in);
    const double root_in = std::sqrt(d1_in);
    WaveState yt0;
    yt0.psi = root_in * inner.wm;
    yt0.dpsi = d2_in / (2.0 * d1_in * root_in) * inner.wm + inner.dwm / root_in;

    TransformedF Ft(F, map);
    const RawSolution raw1 =
        integrate_with_drift([Ft](double zt) { return Ft(zt); }, zt_in, zt_out, yt0, config);

    // Back to the original frame at z_outer before splitting.
    const double d1_out = map.d1(z_out);
    const double d2_out = map.d2(z_out);
    const double root_out = std::sqrt(d1_out);
    WaveState back;
    back.psi = raw1.state.psi / root_out;
    back.dpsi = root_out * raw1.state.dpsi - d2_out / (2.0 * d1_out * root_out) * raw1.state.psi;
    const FarField ff1 = split_far_field(outer, back);

    GaugeCheck check;
    check.r = ff0.r;
    check.t = ff0.t;
    check.rt = ff1.r;
    check.tt = ff1.t;
    check.dr = std::abs(ff0.r - ff1.r);
    check.dt = std::abs(ff0.t - ff1.t);
    check.z_inner = z_in;
    check.z_outer = z_out;
    return check;
}

} // namespace qr
