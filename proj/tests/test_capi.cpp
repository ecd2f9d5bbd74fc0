#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "qr/qr.h"

// Everything here goes through the C header only; no core headers. That
// keeps the shared-library surface honest: opaque handles, status codes,
// out-parameters.

TEST_CASE("version and error-state plumbing")
{
    CHECK(std::strcmp(qr_version(), QR_VERSION_STRING) == 0);

    double out = 0;
    REQUIRE(qr_convert_energy(1.0, "neV", "hartree", &out) == QR_OK);
    CHECK(std::string(qr_last_error()).empty());

    CHECK(qr_convert_energy(1.0, "eV", "hartree", &out) == QR_ERR_INVALID_ARGUMENT);
    CHECK_FALSE(std::string(qr_last_error()).empty());

    REQUIRE(qr_convert_energy(2.0, "neV", "neV", &out) == QR_OK);
    CHECK(std::string(qr_last_error()).empty()); // success clears the slot
}

TEST_CASE("unit conversions and masses")
{
    double h = 0;
    REQUIRE(qr_convert_energy(1.0, "neV", "hartree", &h) == QR_OK);
    CHECK(h == doctest::Approx(3.674932217565499e-11).epsilon(1e-13));
    double back = 0;
    REQUIRE(qr_convert_energy(h, "hartree", "neV", &back) == QR_OK);
    CHECK(back == doctest::Approx(1.0).epsilon(1e-14));

    double nm = 0;
    REQUIRE(qr_convert_length(1.0, "a0", "nm", &nm) == QR_OK);
    CHECK(nm == doctest::Approx(0.0529177210903).epsilon(1e-10));

    CHECK(qr_hydrogen_mass_me() == doctest::Approx(1837.15264330024).epsilon(1e-12));
    CHECK(qr_amu_to_me(1.0) == doctest::Approx(1822.888486209).epsilon(1e-12));
    CHECK(qr_amu_to_me(2.0) == doctest::Approx(2.0 * 1822.888486209).epsilon(1e-12));

    CHECK(qr_convert_energy(1.0, "neV", "hartree", nullptr) == QR_ERR_INVALID_ARGUMENT);

    double kappa = 0;
    REQUIRE(qr_kappa_of_energy(qr_hydrogen_mass_me(), 0.01, "neV", &kappa) == QR_OK);
    CHECK(kappa == doctest::Approx(3.6746187387128122e-5).epsilon(1e-12));
    CHECK(qr_kappa_of_energy(qr_hydrogen_mass_me(), -0.01, "neV", &kappa) == QR_ERR_DOMAIN);
}

TEST_CASE("potential handles")
{
    const double mass = qr_hydrogen_mass_me();
    qr_potential* pot = nullptr;
    REQUIRE(qr_potential_c4_ell(321.3, mass, &pot) == QR_OK);
    REQUIRE(pot != nullptr);

    double c3 = -1, c4 = 0;
    REQUIRE(qr_potential_tails(pot, &c3, &c4) == QR_OK);
    CHECK(c3 == 0.0);
    CHECK(c4 == doctest::Approx(321.3 * 321.3 / (2.0 * mass)).epsilon(1e-14));

    double ell = 0;
    REQUIRE(qr_potential_ell(pot, mass, &ell) == QR_OK);
    CHECK(ell == doctest::Approx(321.3).epsilon(1e-13));

    double v = 0, dv = 0, d2v = 0;
    REQUIRE(qr_potential_eval(pot, 100.0, &v, &dv, &d2v) == QR_OK);
    CHECK(v == doctest::Approx(-c4 / 1e8).epsilon(1e-14));
    CHECK(dv == doctest::Approx(4.0 * c4 / 1e10).epsilon(1e-14));
    CHECK(d2v == doctest::Approx(-20.0 * c4 / 1e12).epsilon(1e-14));
    REQUIRE(qr_potential_eval(pot, 100.0, &v, nullptr, nullptr) == QR_OK);

    CHECK(qr_potential_eval(pot, -1.0, &v, nullptr, nullptr) == QR_ERR_DOMAIN);
    CHECK(qr_potential_eval(nullptr, 1.0, &v, nullptr, nullptr) == QR_ERR_INVALID_ARGUMENT);
    CHECK(qr_potential_c4(-1.0, &pot) == QR_ERR_INVALID_ARGUMENT);
    qr_potential_free(pot);

    qr_potential* soft = nullptr;
    REQUIRE(qr_potential_c3c4_ell(321.3, 100.0, mass, &soft) == QR_OK);
    REQUIRE(qr_potential_tails(soft, &c3, &c4) == QR_OK);
    CHECK(c3 > 0.0);
    CHECK(c4 / c3 == doctest::Approx(100.0).epsilon(1e-13));
    qr_potential_free(soft);
    qr_potential_free(nullptr); // must be a no-op
}

TEST_CASE("tabulated potential through a temporary CSV")
{
    const double mass = qr_hydrogen_mass_me();
    qr_potential* src = nullptr;
    REQUIRE(qr_potential_c3c4_ell(321.3, 100.0, mass, &src) == QR_OK);
    double c3 = 0, c4 = 0;
    REQUIRE(qr_potential_tails(src, &c3, &c4) == QR_OK);

    const char* path = "capi_tab.csv";
    {
        std::FILE* f = std::fopen(path, "w");
        REQUIRE(f != nullptr);
        std::fprintf(f, "z_a0,V_hartree\n");
        for (int i = 0; i < 400; ++i) {
            const double z = 1.0 * std::pow(1e6, i / 399.0);
            double v = 0;
            REQUIRE(qr_potential_eval(src, z, &v, nullptr, nullptr) == QR_OK);
            std::fprintf(f, "%.17g,%.17g\n", z, v);
        }
        std::fclose(f);
    }

    qr_potential* tab = nullptr;
    REQUIRE(qr_potential_table(path, c3, c4, &tab) == QR_OK);
    for (double z : {5.0, 321.3, 9e4}) {
        double v_tab = 0, v_src = 0;
        REQUIRE(qr_potential_eval(tab, z, &v_tab, nullptr, nullptr) == QR_OK);
        REQUIRE(qr_potential_eval(src, z, &v_src, nullptr, nullptr) == QR_OK);
        CHECK(v_tab == doctest::Approx(v_src).epsilon(1e-6));
    }
    qr_potential_free(tab);
    qr_potential_free(src);
    std::remove(path);

    CHECK(qr_potential_table("no_such_file.csv", 1.0, 1.0, &tab) == QR_ERR_IO);
    CHECK_FALSE(std::string(qr_last_error()).empty());
}

TEST_CASE("porosity presets")
{
    CHECK(qr_preset_count() == 5);
    double ell = 0;
    REQUIRE(qr_preset_ell("50%", &ell) == QR_OK);
    CHECK(ell == 244.7);
    CHECK(qr_preset_ell("25%", &ell) == QR_ERR_INVALID_ARGUMENT);

    bool saw_90 = false;
    for (size_t i = 0; i < qr_preset_count(); ++i) {
        const char* label = nullptr;
        REQUIRE(qr_preset_label(i, &label) == QR_OK);
        REQUIRE(qr_preset_ell(label, &ell) == QR_OK);
        saw_90 = saw_90 || std::strcmp(label, "90%") == 0;
    }
    CHECK(saw_90);
    const char* label = nullptr;
    CHECK(qr_preset_label(99, &label) == QR_ERR_INVALID_ARGUMENT);
}

TEST_CASE("problem handles and local quantities")
{
    const double mass = qr_hydrogen_mass_me();
    qr_potential* pot = nullptr;
    REQUIRE(qr_potential_c4_ell(321.3, mass, &pot) == QR_OK);

    qr_problem* prob = nullptr;
    REQUIRE(qr_problem_create(pot, mass, 0.01, "neV", &prob) == QR_OK);
    double kappa = 0, ell = 0, energy = 0;
    REQUIRE(qr_problem_info(prob, &kappa, &ell, &energy) == QR_OK);
    CHECK(kappa == doctest::Approx(3.6746187387128122e-5).epsilon(1e-12));
    CHECK(ell == doctest::Approx(321.3).epsilon(1e-13));
    CHECK(energy == doctest::Approx(0.01 * 3.674932217565499e-11).epsilon(1e-13));

    // F = kappa^2 - 2 m V and lambda = F^{-1/2}
    const double z = 500.0;
    double f = 0, v = 0, lambda = 0;
    REQUIRE(qr_problem_f(prob, z, &f) == QR_OK);
    REQUIRE(qr_potential_eval(pot, z, &v, nullptr, nullptr) == QR_OK);
    CHECK(f == doctest::Approx(kappa * kappa - 2.0 * mass * v).epsilon(1e-13));
    REQUIRE(qr_problem_de_broglie(prob, z, &lambda) == QR_OK);
    CHECK(lambda == doctest::Approx(1.0 / std::sqrt(f)).epsilon(1e-13));

    // at the badlands peak: Q = -5/(8 kappa ell), phase/sqrt(kappa ell) = zbold0
    const double z_peak = std::sqrt(ell / kappa);
    double q = 0, phi = 0;
    REQUIRE(qr_problem_badlands(prob, z_peak, &q) == QR_OK);
    CHECK(q == doctest::Approx(-5.0 / (8.0 * kappa * ell)).epsilon(1e-11));
    REQUIRE(qr_problem_wkb_phase(prob, z_peak, &phi) == QR_OK);
    CHECK(phi / std::sqrt(kappa * ell) == doctest::Approx(qr_universal_zbold0()).epsilon(1e-10));

    // creation failures: negative energy, null potential
    qr_problem* bad = nullptr;
    CHECK(qr_problem_create(pot, mass, -1.0, "neV", &bad) == QR_ERR_INVALID_ARGUMENT);
    CHECK_FALSE(std::string(qr_last_error()).empty());
    CHECK(qr_problem_create(nullptr, mass, 1.0, "neV", &bad) == QR_ERR_INVALID_ARGUMENT);
    CHECK(qr_problem_create_kappa(pot, mass, 0.0, &bad) == QR_ERR_INVALID_ARGUMENT);

    qr_problem_free(prob);
    qr_potential_free(pot);
}

TEST_CASE("universal curve and gauge profile")
{
    const double u[3] = {-1.0, 0.0, 1.0};
    double zb[3], vb[3];
    REQUIRE(qr_universal_curve(u, 3, zb, vb) == QR_OK);
    CHECK(zb[1] == doctest::Approx(0.847213084793979087).epsilon(1e-14));
    CHECK(vb[1] == 0.625);
    CHECK(vb[0] == vb[2]); // even in u
    CHECK(qr_universal_curve(nullptr, 3, zb, vb) == QR_ERR_INVALID_ARGUMENT);

    const double mass = qr_hydrogen_mass_me();
    qr_potential* pot = nullptr;
    REQUIRE(qr_potential_c4_ell(321.3, mass, &pot) == QR_OK);
    qr_problem* prob = nullptr;
    REQUIRE(qr_problem_create_kappa(pot, mass, 0.1 / 321.3, &prob) == QR_OK);

    const double z_peak = std::sqrt(321.3 / (0.1 / 321.3));
    double zs[3] = {z_peak / M_E, z_peak, z_peak * M_E};
    double pzb[3], pvb[3], e_bold = 0;
    REQUIRE(qr_gauge_profile(prob, zs, 3, pzb, pvb, &e_bold) == QR_OK);
    CHECK(e_bold == doctest::Approx(0.1).epsilon(1e-13));
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(pzb[i] - zb[i]) < 1e-8);
        CHECK(std::abs(pvb[i] - vb[i]) < 1e-10);
    }
    qr_problem_free(prob);
    qr_potential_free(pot);
}

TEST_CASE("solving through the C surface")
{
    const double mass = qr_hydrogen_mass_me();
    qr_potential* pot = nullptr;
    REQUIRE(qr_potential_c4_ell(321.3, mass, &pot) == QR_OK);
    qr_problem* prob = nullptr;
    REQUIRE(qr_problem_create_kappa(pot, mass, 0.1 / 321.3, &prob) == QR_OK);

    qr_solver_config cfg;
    qr_solver_config_init(&cfg);
    CHECK(cfg.rel_tol > 0);
    CHECK(cfg.max_steps > 0);

    qr_amplitudes amp;
    REQUIRE(qr_solve(prob, nullptr, &amp) == QR_OK);
    CHECK(amp.big_r == doctest::Approx(0.676991654192).epsilon(1e-7));
    CHECK(amp.unitarity_defect < 1e-8);
    CHECK(amp.r_re * amp.r_re + amp.r_im * amp.r_im ==
          doctest::Approx(amp.big_r).epsilon(1e-13));
    CHECK(amp.z_inner > 0);
    CHECK(amp.z_outer > amp.z_inner);
    CHECK(amp.steps > 0);

    // explicit config follows the same path as the defaults
    qr_amplitudes amp2;
    REQUIRE(qr_solve(prob, &cfg, &amp2) == QR_OK);
    CHECK(amp2.big_r == amp.big_r);

    cfg.rel_tol = -1.0;
    CHECK(qr_solve(prob, &cfg, &amp2) == QR_ERR_INVALID_ARGUMENT);
    CHECK(qr_solve(prob, nullptr, nullptr) == QR_ERR_INVALID_ARGUMENT);

    qr_problem_free(prob);
    qr_potential_free(pot);
}

TEST_CASE("scan and scattering-length fit through the C surface")
{
    const double mass = qr_hydrogen_mass_me();
    qr_potential* pot = nullptr;
    REQUIRE(qr_potential_c4_ell(321.3, mass, &pot) == QR_OK);

    std::vector<double> kappas;
    for (int i = 0; i < 8; ++i)
        kappas.push_back(std::pow(10.0, -3.0 + 1.0 * i / 7.0) / 321.3);
    std::vector<qr_scan_row> rows(kappas.size());
    REQUIRE(qr_reflection_scan(pot, mass, kappas.data(), kappas.size(), nullptr, 2,
                               rows.data()) == QR_OK);
    for (size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].kappa == kappas[i]);
        CHECK(rows[i].kappa_ell == doctest::Approx(kappas[i] * 321.3).epsilon(1e-14));
        CHECK(rows[i].unitarity_defect < 1e-8);
    }

    qr_bfit fit;
    REQUIRE(qr_extract_b(rows.data(), rows.size(), &fit) == QR_OK);
    CHECK(fit.b / 321.3 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(fit.points_used >= 4);

    CHECK(qr_extract_b(rows.data(), 2, &fit) == QR_ERR_NUMERIC);
    qr_potential_free(pot);
}

TEST_CASE("gauge invariance through the C surface")
{
    const double mass = qr_hydrogen_mass_me();
    qr_potential* pot = nullptr;
    REQUIRE(qr_potential_c4_ell(321.3, mass, &pot) == QR_OK);
    qr_problem* prob = nullptr;
    REQUIRE(qr_problem_create_kappa(pot, mass, 1.0 / 321.3, &prob) == QR_OK);

    qr_gauge_check chk;
    REQUIRE(qr_check_gauge_invariance(prob, QR_MAP_IDENTITY, 1.0, 0.0, nullptr, &chk) == QR_OK);
    CHECK(chk.dr == 0.0);
    CHECK(chk.dt == 0.0);

    REQUIRE(qr_check_gauge_invariance(prob, QR_MAP_AFFINE, 2.0, 1.0, nullptr, &chk) == QR_OK);
    CHECK(chk.dr < 1e-8);
    CHECK(chk.dt < 1e-8);

    REQUIRE(qr_check_gauge_invariance(prob, QR_MAP_WKB, 1.0, 0.0, nullptr, &chk) == QR_OK);
    CHECK(chk.dr < 1e-6);
    CHECK(chk.dt < 1e-6);
    const double rr = chk.r_re * chk.r_re + chk.r_im * chk.r_im;
    const double tt = chk.t_re * chk.t_re + chk.t_im * chk.t_im;
    CHECK(rr + tt == doctest::Approx(1.0).epsilon(1e-8));

    CHECK(qr_check_gauge_invariance(prob, static_cast<qr_map_kind>(99), 1.0, 0.0, nullptr,
                                    &chk) == QR_ERR_INVALID_ARGUMENT);
    CHECK(qr_check_gauge_invariance(prob, QR_MAP_AFFINE, -2.0, 0.0, nullptr, &chk) ==
          QR_ERR_INVALID_ARGUMENT);

    qr_problem_free(prob);
    qr_potential_free(pot);
}
