/*
 * qr: quantum reflection of cold atoms on attractive surface potentials.
 *
 * C interface to the solver library. All functions return a qr_status;
 * out-parameters are written only on QR_OK. Objects created by qr_*_create
 * functions are freed with the matching qr_*_free. Handles are immutable
 * after creation and may be shared across threads; each call runs
 * independently.
 *
 * Units: lengths in Bohr radii (a0), energies in hartree unless an explicit
 * unit string ("hartree" or "neV") is accepted, masses in electron masses,
 * kappa in 1/a0. Internally everything is Hartree atomic units.
 */
#ifndef QR_QR_H
#define QR_QR_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#define QR_VERSION_STRING "0.1.0"

typedef enum qr_status {
    QR_OK = 0,
    QR_ERR_INVALID_ARGUMENT = 1, /* bad pointer, malformed value, config error */
    QR_ERR_DOMAIN = 2,           /* evaluation outside a mathematical domain */
    QR_ERR_NUMERIC = 3,          /* accuracy or iteration budget exhausted, fit failure */
    QR_ERR_IO = 4                /* unreadable or malformed file */
} qr_status;

const char* qr_version(void);

/* Human-readable message for the most recent failure on the calling thread;
 * empty string if the last call succeeded. */
const char* qr_last_error(void);

/* ---------------- units ---------------- */

/* Atomic hydrogen mass (1.00782503 u) in electron masses. */
double qr_hydrogen_mass_me(void);

/* Mass conversion, atomic mass units to electron masses. */
double qr_amu_to_me(double amu);

/* Unit strings: "hartree", "neV" for energy; "a0", "nm" for length. */
qr_status qr_convert_energy(double value, const char* from_unit, const char* to_unit,
                            double* out);
qr_status qr_convert_length(double value, const char* from_unit, const char* to_unit,
                            double* out);

/* kappa = sqrt(2 m E)/hbar in 1/a0. */
qr_status qr_kappa_of_energy(double mass_me, double energy, const char* unit, double* kappa);

/* ---------------- potentials ---------------- */

typedef struct qr_potential qr_potential;

/* V = -C4/z^4; C4 in hartree a0^4. */
qr_status qr_potential_c4(double c4, qr_potential** out);
/* Same model parametrized by ell = sqrt(2 m C4)/hbar (a0). */
qr_status qr_potential_c4_ell(double ell_a0, double mass_me, qr_potential** out);
/* V = -C4/(z^3 (z + lambda3)), lambda3 = C4/C3. */
qr_status qr_potential_c3c4(double c3, double c4, qr_potential** out);
qr_status qr_potential_c3c4_ell(double ell_a0, double lambda3_a0, double mass_me,
                                qr_potential** out);
/* Cubic-spline table from a CSV file with header "z_a0,V_hartree" plus
 * declared tail coefficients (hartree a0^3 / hartree a0^4). */
qr_status qr_potential_table(const char* csv_path, double c3, double c4, qr_potential** out);

void qr_potential_free(qr_potential* pot);

/* V, V', V'' at z (a0). Null derivative pointers are allowed. */
qr_status qr_potential_eval(const qr_potential* pot, double z, double* v, double* dv,
                            double* d2v);
/* Effective tail coefficients. */
qr_status qr_potential_tails(const qr_potential* pot, double* c3, double* c4);

/* ell = sqrt(2 m C4)/hbar in a0 for the potential's far tail. */
qr_status qr_potential_ell(const qr_potential* pot, double mass_me, double* ell_a0);

/* Porosity presets for atomic hydrogen on silica: "0%", "30%", "50%", "70%",
 * "90%" -> ell in a0. */
qr_status qr_preset_ell(const char* label, double* ell_a0);
size_t qr_preset_count(void);
qr_status qr_preset_label(size_t index, const char** label);

/* ---------------- scattering problems ---------------- */

typedef struct qr_problem qr_problem;

qr_status qr_problem_create(const qr_potential* pot, double mass_me, double energy,
                            const char* unit, qr_problem** out);
qr_status qr_problem_create_kappa(const qr_potential* pot, double mass_me, double kappa,
                                  qr_problem** out);
void qr_problem_free(qr_problem* prob);

qr_status qr_problem_info(const qr_problem* prob, double* kappa, double* ell,
                          double* energy_hartree);
/* F = 2 m (E - V) at z. */
qr_status qr_problem_f(const qr_problem* prob, double z, double* f);
/* Reduced de Broglie wavelength F^{-1/2}. */
qr_status qr_problem_de_broglie(const qr_problem* prob, double z, double* lambda);
/* Dimensionless WKB quality factor Q; the wall potential is -kappa ell Q. */
qr_status qr_problem_badlands(const qr_problem* prob, double z, double* q);
/* WKB phase phi(z), with phi -> kappa z far from the wall. */
qr_status qr_problem_wkb_phase(const qr_problem* prob, double z, double* phi);

/* ---------------- gauge profiles ---------------- */

/* Energy-independent wall shape of the -C4/z^4 well. Arrays of length n. */
qr_status qr_universal_curve(const double* u, size_t n, double* z_bold, double* v_bold);
double qr_universal_zbold0(void);

/* Transformed coordinate and potential on a caller-supplied z grid;
 * *e_bold receives kappa*ell. */
qr_status qr_gauge_profile(const qr_problem* prob, const double* z, size_t n, double* z_bold,
                           double* v_bold, double* e_bold);

/* ---------------- solver ---------------- */

typedef struct qr_solver_config {
    double rel_tol;
    double abs_tol;
    double badlands_threshold;
    double z_inner; /* <= 0: automatic placement */
    double z_outer;
    size_t max_steps;
} qr_solver_config;

/* Fills in the library defaults. */
void qr_solver_config_init(qr_solver_config* cfg);

typedef struct qr_amplitudes {
    double r_re, r_im;
    double t_re, t_im;
    double big_r, big_t; /* reflection / transmission probabilities */
    double unitarity_defect;
    double wronskian_drift;
    double z_inner, z_outer; /* matching points used */
    size_t steps;
} qr_amplitudes;

/* cfg == NULL uses the defaults. */
qr_status qr_solve(const qr_problem* prob, const qr_solver_config* cfg, qr_amplitudes* out);

typedef struct qr_scan_row {
    double kappa, kappa_ell;
    double big_r, big_t;
    double unitarity_defect, wronskian_drift;
} qr_scan_row;

/* rows must hold n entries; threads <= 1 runs serially. Results do not
 * depend on the thread count. */
qr_status qr_reflection_scan(const qr_potential* pot, double mass_me, const double* kappas,
                             size_t n, const qr_solver_config* cfg, int threads,
                             qr_scan_row* rows);

typedef struct qr_bfit {
    double b;        /* intercept of (1-R)/(4 kappa) at kappa -> 0, in a0 */
    double slope;
    double residual; /* rms fit residual relative to b */
    int points_used;
    double kappa_min, kappa_max;
} qr_bfit;

qr_status qr_extract_b(const qr_scan_row* rows, size_t n, qr_bfit* out);

/* ---------------- gauge invariance ---------------- */

typedef enum qr_map_kind {
    QR_MAP_IDENTITY = 0,
    QR_MAP_AFFINE = 1, /* ztilde = a z + b */
    QR_MAP_WKB = 2     /* ztilde = phi(z)/sqrt(kappa ell) */
} qr_map_kind;

typedef struct qr_gauge_check {
    double r_re, r_im, t_re, t_im;     /* original frame */
    double rt_re, rt_im, tt_re, tt_im; /* through the transformed frame */
    double dr, dt;                     /* |r - rt|, |t - tt| */
    double z_inner, z_outer;
} qr_gauge_check;

/* affine_a/affine_b apply to QR_MAP_AFFINE only (pass 1 and 0 otherwise). */
qr_status qr_check_gauge_invariance(const qr_problem* prob, qr_map_kind kind, double affine_a,
                                    double affine_b, const qr_solver_config* cfg,
                                    qr_gauge_check* out);

#ifdef __cplusplus
}
#endif

#endif /* QR_QR_H */
