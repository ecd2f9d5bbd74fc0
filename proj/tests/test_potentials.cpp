#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "core/error.hpp"
#include "core/potential.hpp"
#include "core/problem.hpp"
#include "core/units.hpp"

using namespace qr;

namespace {

// Five-point central difference, h tuned for ~1e-10 relative accuracy on
// smooth power-law shapes.
double fd1(const PotentialModel& p, double z)
{
    const double h = z * 1e-3;
    return (-p.v(z + 2 * h) + 8 * p.v(z + h) - 8 * p.v(z - h) + p.v(z - 2 * h)) / (12 * h);
}

double fd2(const PotentialModel& p, double z)
{
    const double h = z * 1e-3;
    return (-p.v(z + 2 * h) + 16 * p.v(z + h) - 30 * p.v(z) + 16 * p.v(z - h) - p.v(z - 2 * h))
           / (12 * h * h);
}

std::vector<double> log_grid(double lo, double hi, int n)
{
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
    return g;
}

} // namespace

TEST_CASE("pure C4 model values and derivatives")
{
    PureC4Potential p(51616.845);
    CHECK(p.v(50.0) == doctest::Approx(-51616.845 / 6.25e6).epsilon(1e-14));
    CHECK(p.c3() == 0.0);
    CHECK(p.c4() == 51616.845);
    for (double z : {0.3, 2.0, 70.0, 1234.5}) {
        CHECK(p.dv(z) == doctest::Approx(fd1(p, z)).epsilon(1e-9));
        CHECK(p.d2v(z) == doctest::Approx(fd2(p, z)).epsilon(1e-6));
    }
    CHECK_THROWS_AS(p.v(0.0), DomainError);
    CHECK_THROWS_AS(p.v(-1.0), DomainError);
    CHECK_THROWS_AS(PureC4Potential(0.0), ConfigError);
    CHECK_THROWS_AS(PureC4Potential(-2.0), ConfigError);
}

TEST_CASE("C3C4 model values, tails and derivatives")
{
    // ell = 321.3 for unit mass gives C4 = 321.3^2/2
    C3C4Potential p(516.16845, 51616.845);
    CHECK(p.lambda3() == doctest::Approx(100.0).epsilon(1e-15));
    CHECK(p.v(50.0) == doctest::Approx(-0.0027528984).epsilon(1e-14));

    // far tail -C4/z^4, cliff-side tail -C3/z^3
    const double z_far = 1e7;
    CHECK(p.v(z_far) * z_far * z_far * z_far * z_far ==
          doctest::Approx(-p.c4()).epsilon(2 * p.lambda3() / z_far));
    const double z_near = 1e-5;
    CHECK(p.v(z_near) * z_near * z_near * z_near ==
          doctest::Approx(-p.c3()).epsilon(2 * z_near / p.lambda3()));

    for (double z : {0.1, 5.0, 100.0, 3000.0}) {
        CHECK(p.dv(z) == doctest::Approx(fd1(p, z)).epsilon(1e-9));
        CHECK(p.d2v(z) == doctest::Approx(fd2(p, z)).epsilon(1e-6));
    }

    CHECK_THROWS_AS(C3C4Potential(0.0, 1.0), ConfigError);
    CHECK_THROWS_AS(C3C4Potential(1.0, 0.0), ConfigError);
}

TEST_CASE("C3C4 approaches pure C4 as the crossover length shrinks")
{
    PureC4Potential ref(100.0);
    double prev = 1e300;
    for (double lambda3 : {1.0, 0.1, 0.01}) {
        C3C4Potential p(100.0 / lambda3, 100.0);
        const double dev = std::abs(p.v(5.0) / ref.v(5.0) - 1.0);
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev < 3e-3);
}

TEST_CASE("ell and C4 are inverse parametrizations")
{
    const double mass = units::hydrogen_mass_me;
    const double c4 = c4_from_ell(321.3, mass);
    CHECK(ell_from_c4(c4, mass) == doctest::Approx(321.3).epsilon(1e-14));
    CHECK(make_pure_c4_from_ell(321.3, mass)->c4() == doctest::Approx(c4).epsilon(1e-15));
    CHECK_THROWS_AS(c4_from_ell(-1.0, mass), ConfigError);
    CHECK_THROWS_AS(ell_from_c4(1.0, 0.0), ConfigError);
}

TEST_CASE("porosity presets")
{
    CHECK(preset_table().size() == 5);
    CHECK(preset_ell("0%") == 321.3);
    CHECK(preset_ell("50%") == 244.7);
    CHECK(preset_ell("90%") == 111.8);
    CHECK_THROWS_AS(preset_ell("10%"), ConfigError);
}

TEST_CASE("tabulated model reproduces its source and continues by power tails")
{
    C3C4Potential source(516.16845, 51616.845);
    const auto zs = log_grid(0.5, 5000.0, 400);
    std::vector<double> vs;
    for (double z : zs)
        vs.push_back(source.v(z));
    TabulatedPotential tab(zs, vs, source.c3(), source.c4());

    // interior: spline against the smooth source
    for (double z : {0.9, 7.7, 140.0, 2600.0}) {
        CHECK(tab.v(z) == doctest::Approx(source.v(z)).epsilon(1e-6));
        CHECK(tab.dv(z) == doctest::Approx(source.dv(z)).epsilon(1e-3));
    }
    // outside the table: exact power laws anchored at the end samples
    const double z_lo = 0.1, z_hi = 2e4;
    CHECK(tab.v(z_lo) == doctest::Approx(-tab.c3() / (z_lo * z_lo * z_lo)).epsilon(1e-14));
    CHECK(tab.v(z_hi) ==
          doctest::Approx(-tab.c4() / (z_hi * z_hi * z_hi * z_hi)).epsilon(1e-14));
    // effective coefficients stay close to the declared ones
    CHECK(tab.c3() == doctest::Approx(source.c3()).epsilon(0.05));
    CHECK(tab.c4() == doctest::Approx(source.c4()).epsilon(0.05));
}

TEST_CASE("tabulated model rejects malformed input")
{
    const auto zs = log_grid(0.5, 5000.0, 400);
    C3C4Potential source(516.16845, 51616.845);
    std::vector<double> vs;
    for (double z : zs)
        vs.push_back(source.v(z));

    // declared tails far off the samples
    CHECK_THROWS_AS(TabulatedPotential(zs, vs, source.c3() * 1.2, source.c4()), ConfigError);
    CHECK_THROWS_AS(TabulatedPotential(zs, vs, source.c3(), source.c4() * 0.8), ConfigError);

    // too few samples
    std::vector<double> z10(zs.begin(), zs.begin() + 10), v10(vs.begin(), vs.begin() + 10);
    CHECK_THROWS_AS(TabulatedPotential(z10, v10, source.c3(), source.c4()), ConfigError);

    // non-monotone z
    auto z_bad = zs;
    std::swap(z_bad[5], z_bad[6]);
    CHECK_THROWS_AS(TabulatedPotential(z_bad, vs, source.c3(), source.c4()), ConfigError);

    // positive V sample
    auto v_bad = vs;
    v_bad[100] = 1e-6;
    CHECK_THROWS_AS(TabulatedPotential(zs, v_bad, source.c3(), source.c4()), ConfigError);
}

TEST_CASE("tabulated CSV loading")
{
    const std::string path = "tab_ok.csv";
    const std::string bad_header = "tab_badheader.csv";
    C3C4Potential source(516.16845, 51616.845);
    {
        std::ofstream out(path);
        out << "z_a0,V_hartree\n";
        for (double z : log_grid(0.5, 5000.0, 200))
            out << z << "," << source.v(z) << "\n";
    }
    {
        std::ofstream out(bad_header);
        out << "z,V\n1,-1\n";
    }

    auto tab = load_tabulated(path, source.c3(), source.c4());
    CHECK(tab->v(100.0) == doctest::Approx(source.v(100.0)).epsilon(1e-5));
    CHECK(tab->label() == "table");

    CHECK_THROWS_AS(load_tabulated("no_such_file.csv", 1.0, 1.0), IoError);
    CHECK_THROWS_AS(load_tabulated(bad_header, source.c3(), source.c4()), IoError);
    std::remove(path.c_str());
    std::remove(bad_header.c_str());
}

TEST_CASE("scattering problem wires F to the potential")
{
    // unit mass, E = 1e-10 hartree, C3C4 with ell = 321.3 and lambda3 = 100
    auto pot = std::make_shared<C3C4Potential>(516.16845, 51616.845);
    ScatteringProblem prob(pot, {1.0}, 1e-10);
    CHECK(prob.f(50.0) == doctest::Approx(2e-10 + 2 * 0.0027528984).epsilon(1e-13));
    CHECK(prob.df(50.0) == doctest::Approx(-2 * pot->dv(50.0)).epsilon(1e-15));
    CHECK(prob.de_broglie(50.0) == doctest::Approx(1.0 / std::sqrt(prob.f(50.0))).epsilon(1e-15));

    CHECK_THROWS_AS(ScatteringProblem(pot, {1.0}, 0.0), ConfigError);
    CHECK_THROWS_AS(ScatteringProblem(pot, {0.0}, 1e-10), ConfigError);
    CHECK_THROWS_AS(ScatteringProblem(nullptr, {1.0}, 1e-10), ConfigError);
    CHECK_THROWS_AS(ScatteringProblem::from_kappa(pot, {1.0}, -0.1), ConfigError);
}

TEST_CASE("badlands factor of the pure C4 well has the closed cosh form")
{
    const double mass = units::hydrogen_mass_me;
    const double ell = 321.3;
    auto pot = make_pure_c4_from_ell(ell, mass);
    for (double kl : {0.01, 0.3, 2.0}) {
        const double kappa = kl / ell;
        auto prob = ScatteringProblem::from_kappa(pot, {mass}, kappa);
        const double z_peak = std::sqrt(ell / kappa);
        // Q(z) = -5 / (8 kappa ell cosh^3(2 ln(z/z_peak)))
        for (double scale : {0.2, 1.0, std::exp(1.0), 9.0}) {
            const double z = z_peak * scale;
            const double c = std::cosh(2.0 * std::log(scale));
            const double expect = -5.0 / (8.0 * kl * c * c * c);
            CHECK(prob.badlands(z) == doctest::Approx(expect).epsilon(1e-10));
        }
        // peak value -5/(8 kappa ell) at z_peak
        CHECK(prob.badlands(z_peak) * kl == doctest::Approx(-0.625).epsilon(1e-12));
    }
}
