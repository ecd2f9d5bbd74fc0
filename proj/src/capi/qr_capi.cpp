// C API shim over the C++ core. Every entry point catches exceptions, stores
// the message in a thread-local slot and maps the type to a status code.

#include "qr/qr.h"

#include <cstring>
#include <new>
#include <string>

#include "core/error.hpp"
#include "core/liouville.hpp"
#include "core/potential.hpp"
#include "core/problem.hpp"
#include "core/solver.hpp"
#include "core/units.hpp"
#include "core/wkb.hpp"

namespace {

thread_local std::string g_last_error;

qr_status fail(qr_status code, const char* what)
{
    g_last_error = what ? what : "unknown error";
    return code;
}

template <typename Fn>
qr_status guarded(Fn&& fn)
{
    try {
        fn();
        g_last_error.clear();
        return QR_OK;
    } catch (const qr::ConfigError& e) {
        return fail(QR_ERR_INVALID_ARGUMENT, e.what());
    } catch (const qr::DomainError& e) {
        return fail(QR_ERR_DOMAIN, e.what());
    } catch (const qr::IoError& e) {
        return fail(QR_ERR_IO, e.what());
    } catch (const qr::NumericError& e) {
        return fail(QR_ERR_NUMERIC, e.what());
    } catch (const std::bad_alloc&) {
        return fail(QR_ERR_NUMERIC, "out of memory");
    } catch (const std::exception& e) {
        return fail(QR_ERR_NUMERIC, e.what());
    }
}

qr_status require(bool ok, const char* what)
{
    return ok ? QR_OK : fail(QR_ERR_INVALID_ARGUMENT, what);
}

qr::SolverConfig to_config(const qr_solver_config* cfg)
{
    qr::SolverConfig out;
    if (cfg) {
        out.rel_tol = cfg->rel_tol;
        out.abs_tol = cfg->abs_tol;
        out.badlands_threshold = cfg->badlands_threshold;
        out.z_inner = cfg->z_inner;
        out.z_outer = cfg->z_outer;
        out.max_steps = cfg->max_steps;
    }
    return out;
}

} // namespace

struct qr_potential {
    qr::PotentialPtr impl;
};

struct qr_problem {
    const qr::ScatteringProblem impl;
};

extern "C" {

const char* qr_version(void)
{
    return QR_VERSION_STRING;
}

const char* qr_last_error(void)
{
    return g_last_error.c_str();
}

double qr_hydrogen_mass_me(void)
{
    return qr::units::hydrogen_mass_me;
}

double qr_amu_to_me(double amu)
{
    return amu * qr::units::amu_in_me;
}

qr_status qr_convert_energy(double value, const char* from_unit, const char* to_unit, double* out)
{
    if (qr_status s = require(from_unit && to_unit && out, "null argument"); s != QR_OK)
        return s;
    return guarded([&] {
        *out = qr::units::convert_energy(value, qr::units::parse_energy_unit(from_unit),
                                         qr::units::parse_energy_unit(to_unit));
    });
}

qr_status qr_convert_length(double value, const char* from_unit, const char* to_unit, double* out)
{
    if (qr_status s = require(from_unit && to_unit && out, "null argument"); s != QR_OK)
        return s;
    return guarded([&] {
        *out = qr::units::convert_length(value, qr::units::parse_length_unit(from_unit),
                                         qr::units::parse_length_unit(to_unit));
    });
}

qr_status qr_kappa_of_energy(double mass_me, double energy, const char* unit, double* kappa)
{
    if (qr_status s = require(unit && kappa, "null argument"); s != QR_OK)
        return s;
    return guarded([&] {
        const double e = qr::units::convert_energy(energy, qr::units::parse_energy_unit(unit),
                                                   qr::units::EnergyUnit::hartree);
        *kappa = qr::units::kappa_of_energy({mass_me}, e);
    });
}

qr_status qr_potential_c4(double c4, qr_potential** out)
{
    if (qr_status s = require(out != nullptr, "null argument"); s != QR_OK)
        return s;
    return guarded([&] { *out = new qr_potential{qr::make_pure_c4(c4)}; });
}

qr_status qr_potential_c4_ell(double ell_a0, double mass_me, qr_potential** out)
{
    if (qr_status s = require(out != nullptr, "null argument"); s != QR_OK)
        return s;
    return guarded([&] { *out = new qr_potential{qr::make_pure_c4_from_ell(ell_a0, mass_me)}; });
}

qr_status qr_potential_c3c4(double c3, double c4, qr_potential** out)
{
    if (qr_status s = require(out != nullptr, "null argument"); s != QR_OK)
        return s;
    return guarded([&] { *out = new qr_potential{qr::make_c3c4(c3, c4)}; });
}

qr_status qr_potential_c3c4_ell(double ell_a0, double lambda3_a0, double mass_me,
                                qr_potential** out)
{
    if (qr_status s = require(out != nullptr, "null argument"); s != QR_OK)
        return s;
    return guarded(
        [&] { *out = new qr_potential{qr::make_c3c4_from_ell(ell_a0, lambda3_a0, mass_me)}; });
}

qr_status qr_potential_table(const char* csv_path, double c3, double c4, qr_potential** out)
{
    if (qr_status s = require(csv_path && out, "null argument"); s != QR_OK)
        return s;
    return guarded([&] { *out = new qr_potential{qr::load_tabulated(csv_path, c3, c4)}; });
}

void qr_potential_free(qr_potential* pot)
{
    delete pot;
}

qr_status qr_potential_eval(const qr_potential* pot, double z, double* v, double* dv, double* d2v)
{
    if (qr_status s = require(pot != nullptr, "null potential"); s != QR_OK)
        return s;
    return guarded([&] {
        if (v)
            *v = pot->impl->v(z);
        if (dv)
            *dv = pot->impl->dv(z);
        if (d2v)
            *d2v = pot->impl->d2v(z);
    });
}

qr_status qr_potential_tails(const qr_potential* pot, double* c3, double* c4)
{
    if (qr_status s = require(pot != nullptr, "null potential"); s != QR_OK)
        return s;
    return guarded([&] {
        if (c3)
            *c3 = pot->impl->c3();
        if (c4)
            *c4 = pot->impl->c4();
    });
}

qr_status qr_potential_ell(const qr_potential* pot, double mass_me, double* ell_a0)
{
    if (qr_status s = require(pot && ell_a0, "null argument"); s != QR_OK)
        return s;
    return guarded([&] { *ell_a0 = qr::ell_from_c4(pot->impl->c4(), mass_me); });
}

qr_status qr_preset_ell(const char* label, double* ell_a0)
{
    if (qr_status s = require(label && ell_a0, "null argument"); s != QR_OK)
        return s;
    return guarded([&] { *ell_a0 = qr::preset_ell(label); });
}

size_t qr_preset_count(void)
{
    return qr::preset_table().size();
}

qr_status qr_preset_label(size_t index, const char** label)
{
    if (qr_status s = require(label != nullptr, "null argument"); s != QR_OK)
        return s;
    return guarded([&] {
        const auto& table = qr::preset_table();
        if (index >= table.size())
            throw qr::ConfigError("preset index out of range");
        *label = table[index].first.c_str();
    });
}

qr_status qr_problem_create(const qr_potential* pot, double mass_me, double energy,
                            const char* unit, qr_problem** out)
{
    if (qr_status s = require(pot && unit && out, "null argument"); s != QR_OK)
        return s;
    return guarded([&] {
        const double e = qr::units::convert_energy(energy, qr::units::parse_energy_unit(unit),
                                                   qr::units::EnergyUnit::hartree);
        *out = new qr_problem{qr::ScatteringProblem(pot->impl, {mass_me}, e)};
    });
}

qr_status qr_problem_create_kappa(const qr_potential* pot, double mass_me, double kappa,
                                  qr_problem** out)
{
    if (qr_status s = require(pot && out, "null argument"); s != QR_OK)
        return s;
    return guarded([&] {
        *out = new qr_problem{qr::ScatteringProblem::from_kappa(pot->impl, {mass_me}, kappa)};
    });
}

void qr_problem_free(qr_problem* prob)
{
    delete prob;
}

qr_status qr_problem_info(const qr_problem* prob, double* kappa, double* ell,
                          double* energy_hartree)
{
    if (qr_status s = require(prob != nullptr, "null problem"); s != QR_OK)
        return s;
    return guarded([&] {
        if (kappa)
            *kappa = prob->impl.kappa();
        if (ell)
            *ell = prob->impl.ell();
        if (energy_hartree)
            *energy_hartree = prob->impl.energy();
    });
}

qr_status qr_problem_f(const qr_problem* prob, double z, double* f)
{
    if (qr_status s = require(prob && f, "null argument"); s != QR_OK)
        return s;
    return guarded([&] { *f = prob->impl.f(z); });
}

qr_status qr_problem_de_broglie(const qr_problem* prob, double z, double* lambda)
{
    if (qr_status s = require(prob && lambda, "null argument"); s != QR_OK)
        return s;
    return guarded([&] { *lambda = prob->impl.de_broglie(z); });
}

qr_status qr_problem_badlands(const qr_problem* prob, double z, double* q)
{
    if (qr_status s = require(prob && q, "null argument"); s != QR_OK)
        return s;
    return guarded([&] { *q = prob->impl.badlands(z); });
}

qr_status qr_problem_wkb_phase(const qr_problem* prob, double z, double* phi)
{
    if (qr_status s = require(prob && phi, "null argument"); s != QR_OK)
        return s;
    return guarded([&] { *phi = qr::wkb_phase(prob->impl, z); });
}

qr_status qr_universal_curve(const double* u, size_t n, double* z_bold, double* v_bold)
{
    if (qr_status s = require((u && z_bold && v_bold) || n == 0, "null argument"); s != QR_OK)
        return s;
    return guarded([&] {
        const auto pts = qr::universal_curve(std::vector<double>(u, u + n));
        for (size_t i = 0; i < n; ++i) {
            z_bold[i] = pts[i].z_bold;
            v_bold[i] = pts[i].v_bold;
        }
    });
}

double qr_universal_zbold0(void)
{
    return qr::universal_zbold0();
}

qr_status qr_gauge_profile(const qr_problem* prob, const double* z, size_t n, double* z_bold,
                           double* v_bold, double* e_bold)
{
    if (qr_status s = require(prob && ((z && z_bold && v_bold) || n == 0), "null argument");
        s != QR_OK)
        return s;
    return guarded([&] {
        const auto profile = qr::wkb_gauge(prob->impl, std::vector<double>(z, z + n));
        for (size_t i = 0; i < n; ++i) {
            z_bold[i] = profile.points[i].z_bold;
            v_bold[i] = profile.points[i].v_bold;
        }
        if (e_bold)
            *e_bold = profile.e_bold;
    });
}

void qr_solver_config_init(qr_solver_config* cfg)
{
    if (!cfg)
        return;
    const qr::SolverConfig defaults;
    cfg->rel_tol = defaults.rel_tol;
    cfg->abs_tol = defaults.abs_tol;
    cfg->badlands_threshold = defaults.badlands_threshold;
    cfg->z_inner = defaults.z_inner;
    cfg->z_outer = defaults.z_outer;
    cfg->max_steps = defaults.max_steps;
}

qr_status qr_solve(const qr_problem* prob, const qr_solver_config* cfg, qr_amplitudes* out)
{
    if (qr_status s = require(prob && out, "null argument"); s != QR_OK)
        return s;
    return guarded([&] {
        const auto amp = qr::solve_one_way(prob->impl, to_config(cfg));
        out->r_re = amp.r.real();
        out->r_im = amp.r.imag();
        out->t_re = amp.t.real();
        out->t_im = amp.t.imag();
        out->big_r = amp.big_r;
        out->big_t = amp.big_t;
        out->unitarity_defect = amp.unitarity_defect;
        out->wronskian_drift = amp.wronskian_drift;
        out->z_inner = amp.z_inner;
        out->z_outer = amp.z_outer;
        out->steps = amp.steps;
    });
}

qr_status qr_reflection_scan(const qr_potential* pot, double mass_me, const double* kappas,
                             size_t n, const qr_solver_config* cfg, int threads,
                             qr_scan_row* rows)
{
    if (qr_status s = require(pot && (n == 0 || (kappas && rows)), "null argument"); s != QR_OK)
        return s;
    return guarded([&] {
        const auto result = qr::reflection_scan(pot->impl, {mass_me},
                                                std::vector<double>(kappas, kappas + n),
                                                to_config(cfg), threads);
        for (size_t i = 0; i < n; ++i) {
            rows[i] = {result[i].kappa,          result[i].kappa_ell,
                       result[i].big_r,          result[i].big_t,
                       result[i].unitarity_defect, result[i].wronskian_drift};
        }
    });
}

qr_status qr_extract_b(const qr_scan_row* rows, size_t n, qr_bfit* out)
{
    if (qr_status s = require(rows && out, "null argument"); s != QR_OK)
        return s;
    return guarded([&] {
        std::vector<qr::ScanRow> scan(n);
        for (size_t i = 0; i < n; ++i) {
            scan[i] = {rows[i].kappa, rows[i].kappa_ell,        rows[i].big_r,
                       rows[i].big_t, rows[i].unitarity_defect, rows[i].wronskian_drift};
        }
        const auto fit = qr::extract_b(scan);
        out->b = fit.b;
        out->slope = fit.slope;
        out->residual = fit.residual;
        out->points_used = fit.points_used;
        out->kappa_min = fit.kappa_min;
        out->kappa_max = fit.kappa_max;
    });
}

qr_status qr_check_gauge_invariance(const qr_problem* prob, qr_map_kind kind, double affine_a,
                                    double affine_b, const qr_solver_config* cfg,
                                    qr_gauge_check* out)
{
    if (qr_status s = require(prob && out, "null argument"); s != QR_OK)
        return s;
    return guarded([&] {
        qr::LiouvilleMap map = [&]() -> qr::LiouvilleMap {
            switch (kind) {
                case QR_MAP_IDENTITY: return qr::LiouvilleMap::identity();
                case QR_MAP_AFFINE: return qr::LiouvilleMap::affine(affine_a, affine_b);
                case QR_MAP_WKB: return qr::wkb_map(prob->impl);
            }
            throw qr::ConfigError("unknown map kind");
        }();
        const auto check = qr::check_gauge_invariance(prob->impl, map, to_config(cfg));
        out->r_re = check.r.real();
        out->r_im = check.r.imag();
        out->t_re = check.t.real();
        out->t_im = check.t.imag();
        out->rt_re = check.rt.real();
        out->rt_im = check.rt.imag();
        out->tt_re = check.tt.real();
        out->tt_im = check.tt.imag();
        out->dr = check.dr;
        out->dt = check.dt;
        out->z_inner = check.z_inner;
        out->z_outer = check.z_outer;
    });
}

} // extern "C"
